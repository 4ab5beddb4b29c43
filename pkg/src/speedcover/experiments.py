"""Experiment harness: gamma and kappa sweeps with CSV/JSON reports.

Every row reports the transport cost, the approximated revenue read off the
interpolation weights, and the exact revenue recomputed from the incumbent's
short-path vector through the coverage oracle. Keeping both columns makes the
under-approximation of ``dominated`` mode visible instead of hiding it.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import csv
import io
import json
import math

from .coverage import SpeedAssignment, coverage
from .errors import SpeedcoverError
from .instance import Instance
from .model import MilpModel, build_cost_model, build_speed_aware_model
from .sampling import SampleSet, build_samples
from .solver import SolveOptions, SolveResult, solve_milp

REPORT_SCHEMA_VERSION = 1

CSV_COLUMNS = [
    "n_origins",
    "n_destinations",
    "gamma",
    "kappa",
    "transport_cost",
    "approx_revenue",
    "exact_revenue",
    "total_cost",
    "coverage_items",
    "directs_count",
    "n_app",
    "presolve_seconds",
    "solve_seconds",
    "relative_gap",
    "status",
    "seed",
    "error",
]


@dataclass
class SolutionSummary:
    """Decomposition of one incumbent into report quantities."""

    transport_cost: float
    approx_coverage: float  # weighted coverage from the interpolation variables
    coverage_items: int  # exact unique items, summed over destinations
    coverage_by_destination: dict[int, int]
    directs_count: int
    chosen_paths: dict[int, int]  # commodity id -> path id


def summarize_solution(instance: Instance, model: MilpModel, result: SolveResult) -> SolutionSummary:
    """Recompute report quantities from an incumbent.

    Exact coverage comes from the oracle on the chosen paths' short-path
    vector, never from the objective, so approximation error stays visible.
    """
    hints = model.hints
    if hints is None or result.incumbent is None:
        raise SpeedcoverError("summarize_solution needs builder hints and an incumbent")
    values = result.incumbent
    names = model.variables

    transport = sum(
        names[eh.y_var].objective * values[names[eh.y_var].name] for eh in hints.edges
    )

    approx_cov = 0.0
    for dh in hints.destinations:
        for i, av in enumerate(dh.alpha_vars):
            approx_cov += dh.point_values[i] * values[names[av].name]

    path_by_id = {p.id: p for p in instance.paths}
    origin_index = {oid: i for i, oid in enumerate(instance.origin_ids())}
    chosen: dict[int, int] = {}
    directs = 0
    bits: dict[int, list[int]] = {
        d: [0] * instance.n_origins for d in instance.commodities_by_destination()
    }
    for ck in hints.commodities:
        best = max(
            range(len(ck.x_vars)), key=lambda i: (values[names[ck.x_vars[i]].name], -i)
        )
        k_paths = [p for p in instance.paths if p.commodity == ck.commodity_id]
        path = k_paths[best]
        chosen[ck.commodity_id] = path.id
        if len(path.edges) == 1:
            directs += 1
        if path.is_short:
            bits[ck.destination][origin_index[ck.origin]] = 1

    cov_by_dest = {
        d: coverage(instance.inventory, SpeedAssignment(destination=d, bits=tuple(b)))
        for d, b in bits.items()
    }
    return SolutionSummary(
        transport_cost=transport,
        approx_coverage=approx_cov,
        coverage_items=sum(cov_by_dest.values()),
        coverage_by_destination=cov_by_dest,
        directs_count=directs,
        chosen_paths=chosen,
    )


@dataclass
class ReportRow:
    n_origins: int
    n_destinations: int
    gamma: float
    kappa: Optional[int]
    transport_cost: Optional[float] = None
    approx_revenue: Optional[float] = None
    exact_revenue: Optional[float] = None
    total_cost: Optional[float] = None
    coverage_items: Optional[int] = None
    directs_count: Optional[int] = None
    n_app: int = 0
    presolve_seconds: float = 0.0
    solve_seconds: float = 0.0
    relative_gap: Optional[float] = None
    status: str = ""
    seed: Optional[int] = None
    error: Optional[str] = None
    objective: Optional[float] = None
    best_bound: Optional[float] = None
    nodes_explored: Optional[int] = None
    samples: Optional[dict] = None  # per-destination sample audit, JSON only

    def csv_record(self) -> list:
        values = []
        for col in CSV_COLUMNS:
            v = getattr(self, col)
            values.append("" if v is None else v)
        return values


@dataclass
class ExperimentReport:
    rows: list[ReportRow] = field(default_factory=list)
    schema_version: int = REPORT_SCHEMA_VERSION

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow(row.csv_record())
        return buf.getvalue()

    def to_json_dict(self) -> dict:
        rows = []
        for row in self.rows:
            d = {k: v for k, v in vars(row).items() if v is not None}
            rows.append(d)
        return {"schema_version": self.schema_version, "rows": rows}

    def write(self, csv_path: "str | Path") -> None:
        """Write the CSV table plus a JSON telemetry sidecar next to it."""
        out = Path(csv_path)
        out.write_text(self.to_csv_text(), encoding="utf-8")
        sidecar = out.with_suffix(out.suffix + ".json") if out.suffix != ".json" else out
        sidecar.write_text(
            json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )


def sample_set_to_dict(samples: SampleSet) -> dict:
    return {
        "destination": samples.destination,
        "kappa": samples.kappa,
        "points": [
            {"bits": "".join(str(b) for b in p.bits), "value": p.value} for p in samples.points
        ],
    }


def _base_row(instance: Instance, gamma: float, kappa: Optional[int]) -> ReportRow:
    seed = instance.generation.seed if instance.generation is not None else None
    return ReportRow(
        n_origins=instance.n_origins,
        n_destinations=instance.n_destinations,
        gamma=gamma,
        kappa=kappa,
        seed=seed,
    )


def _finish_row(
    row: ReportRow,
    instance: Instance,
    model: MilpModel,
    result: SolveResult,
    revenue_gamma: float,
    with_approx: bool,
) -> ReportRow:
    row.status = result.status
    row.relative_gap = result.relative_gap
    row.solve_seconds = result.wall_time_seconds
    row.nodes_explored = result.nodes_explored
    row.best_bound = result.best_bound
    if result.incumbent is None:
        row.error = f"no incumbent (status {result.status})"
        return row
    row.objective = result.objective
    summary = summarize_solution(instance, model, result)
    row.transport_cost = summary.transport_cost
    row.coverage_items = summary.coverage_items
    row.directs_count = summary.directs_count
    row.exact_revenue = revenue_gamma * summary.coverage_items
    if with_approx:
        row.approx_revenue = revenue_gamma * summary.approx_coverage
    row.total_cost = row.transport_cost - row.exact_revenue
    return row


def _run_baseline(
    instance: Instance, revenue_gamma: float, options: SolveOptions, kappa: Optional[int] = None
) -> ReportRow:
    """Cost-only solve; revenue is evaluated afterwards at ``revenue_gamma``."""
    row = _base_row(instance, revenue_gamma, kappa)
    t0 = time.perf_counter()
    model = build_cost_model(instance)
    row.presolve_seconds = time.perf_counter() - t0
    result = solve_milp(model, options)
    return _finish_row(row, instance, model, result, revenue_gamma, with_approx=False)


def _run_speed_aware(
    instance: Instance,
    gamma: float,
    kappa: int,
    options: SolveOptions,
    closure_mode: str = "dominated",
    include_samples: bool = False,
) -> ReportRow:
    row = _base_row(instance, gamma, kappa)
    t0 = time.perf_counter()
    samples = {
        d: build_samples(instance.inventory, d, kappa)
        for d in sorted(instance.commodities_by_destination())
    }
    model = build_speed_aware_model(instance, samples, gamma, closure_mode)
    row.presolve_seconds = time.perf_counter() - t0
    row.n_app = sum(len(s.points) for s in samples.values())
    if include_samples:
        row.samples = {str(d): sample_set_to_dict(s) for d, s in samples.items()}
    result = solve_milp(model, options)
    return _finish_row(row, instance, model, result, gamma, with_approx=True)


def run_gamma_sweep(
    instance: Instance,
    gammas: Sequence[float],
    kappa: int,
    options: SolveOptions = SolveOptions(),
    closure_mode: str = "dominated",
    include_samples: bool = False,
) -> ExperimentReport:
    """One row per gamma; gamma = 0 runs the cost-only baseline model.

    Solver failures are recorded in the row instead of aborting the sweep.
    """
    report = ExperimentReport()
    for gamma in gammas:
        try:
            if gamma == 0.0:
                row = _run_baseline(instance, 0.0, options)
            else:
                row = _run_speed_aware(
                    instance, gamma, kappa, options, closure_mode, include_samples
                )
        except SpeedcoverError as exc:
            row = _base_row(instance, gamma, None if gamma == 0.0 else kappa)
            row.status = "error"
            row.error = str(exc)
        report.rows.append(row)
    return report


def run_kappa_sweep(
    instance: Instance,
    gamma: float,
    kappas: Sequence[int],
    options: SolveOptions = SolveOptions(),
    closure_mode: str = "dominated",
    include_samples: bool = False,
) -> ExperimentReport:
    """Baseline row first, then one row per distinct kappa.

    The baseline is the cost-optimal network with revenue evaluated at the
    sweep's gamma, so total costs are comparable across rows.
    """
    report = ExperimentReport()
    try:
        report.rows.append(_run_baseline(instance, gamma, options))
    except SpeedcoverError as exc:
        row = _base_row(instance, gamma, None)
        row.status = "error"
        row.error = str(exc)
        report.rows.append(row)

    seen: set[int] = set()
    for kappa in kappas:
        if kappa in seen:
            warnings.warn(f"duplicate kappa {kappa} dropped from sweep", stacklevel=2)
            continue
        seen.add(kappa)
        try:
            row = _run_speed_aware(instance, gamma, kappa, options, closure_mode, include_samples)
        except SpeedcoverError as exc:
            row = _base_row(instance, gamma, kappa)
            row.status = "error"
            row.error = str(exc)
        report.rows.append(row)
    return report
