"""Deterministic LP simplex and branch-and-bound MILP engine.

The LP core is a bounded-variable primal simplex: dense basis inverse,
Dantzig pricing with a switch to Bland's rule after a run of degenerate
pivots, and a full basis refactorization every 100 pivots for numerical
hygiene. Branch and bound uses best-bound node selection and branches on the
most fractional integer variable, so the reported gap is meaningful and runs
are bit-reproducible.

Solves are independent: each call builds its own working arrays, so
concurrent solves on distinct models are safe.
"""

from __future__ import annotations

import csv
import heapq
import math
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import ParameterError, SolverError
from .model import EQ, GE, LE, MilpModel, SolverHints, trucks_needed

OPTIMAL = "optimal"
GAP_LIMIT = "gap_limit"
TIME_LIMIT = "time_limit"
NODE_LIMIT = "node_limit"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_AT_LOWER = 0
_AT_UPPER = 1
_BASIC = 2
_FREE = 3

_BLAND_AFTER_DEGENERATE = 1000
_REFACTOR_EVERY = 100
_PIVOT_TOL = 1e-9
_RATIO_TIE_TOL = 1e-9
_DEGENERATE_STEP = 1e-10


@dataclass(frozen=True)
class SolveOptions:
    """Termination and tolerance settings for :func:`solve_milp`."""

    relative_gap_target: float = 0.001
    time_limit_seconds: float = 7200.0
    integrality_tolerance: float = 1e-6
    feasibility_tolerance: float = 1e-7
    node_limit: Optional[int] = None
    deterministic: bool = True
    trace_path: Optional[str] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.relative_gap_target < 1.0:
            raise ParameterError("relative_gap_target must be in [0, 1)")
        if self.time_limit_seconds <= 0:
            raise ParameterError("time_limit_seconds must be positive")
        if self.integrality_tolerance <= 0 or self.feasibility_tolerance <= 0:
            raise ParameterError("tolerances must be positive")
        if self.node_limit is not None and self.node_limit < 1:
            raise ParameterError("node_limit must be >= 1 when set")


@dataclass
class SolveResult:
    """Outcome of an LP or MILP solve.

    ``certificate`` names the violated row (infeasible) or the ray variable
    (unbounded) when the status calls for one.
    """

    status: str
    incumbent: Optional[dict[str, float]]
    objective: float
    best_bound: float
    relative_gap: float
    nodes_explored: int
    wall_time_seconds: float
    certificate: Optional[str] = None


def check_solution(
    model: MilpModel,
    values: dict[str, float],
    feasibility_tolerance: float = 1e-7,
    integrality_tolerance: float = 1e-6,
) -> list[str]:
    """Independent feasibility/integrality check, straight off the model rows.

    Shares no code with the simplex; used to re-verify every incumbent.
    """
    violations: list[str] = []
    for v in model.variables:
        val = values.get(v.name, 0.0)
        if val < v.lower - feasibility_tolerance or val > v.upper + feasibility_tolerance:
            violations.append(f"variable {v.name}={val!r} outside bounds [{v.lower}, {v.upper}]")
        if v.is_integral and abs(val - round(val)) > integrality_tolerance:
            violations.append(f"variable {v.name}={val!r} not integral")
    for con in model.constraints:
        lhs = sum(coef * values.get(model.variables[vid].name, 0.0) for vid, coef in con.terms)
        tol = feasibility_tolerance * max(1.0, abs(con.rhs))
        if con.sense == LE and lhs > con.rhs + tol:
            violations.append(f"constraint {con.name}: {lhs!r} > {con.rhs!r}")
        elif con.sense == GE and lhs < con.rhs - tol:
            violations.append(f"constraint {con.name}: {lhs!r} < {con.rhs!r}")
        elif con.sense == EQ and abs(lhs - con.rhs) > tol:
            violations.append(f"constraint {con.name}: {lhs!r} != {con.rhs!r}")
    return violations


# -- LP standard form ---------------------------------------------------------


class _LpProblem:
    """Equality standard form shared across branch-and-bound nodes.

    Columns are [structural | slack | artificial]; slack and artificial blocks
    are identity matrices, so the constraint matrix never changes between
    nodes — only bounds and phase costs do.
    """

    def __init__(self, model: MilpModel):
        self.model = model
        n = len(model.variables)
        m = len(model.constraints)
        self.n = n
        self.m = m
        self.c = np.zeros(n + 2 * m)
        self.c[:n] = [v.objective for v in model.variables]
        self.lb0 = np.array([v.lower for v in model.variables], dtype=float)
        self.ub0 = np.array([v.upper for v in model.variables], dtype=float)
        self.b = np.array([con.rhs for con in model.constraints], dtype=float)
        self.row_names = [con.name for con in model.constraints]
        self.col_names = [v.name for v in model.variables]
        self.senses = [con.sense for con in model.constraints]

        rows, cols, data = [], [], []
        for ci, con in enumerate(model.constraints):
            for vid, coef in con.terms:
                rows.append(ci)
                cols.append(vid)
                data.append(float(coef))
        a_struct = sp.csc_matrix((data, (rows, cols)), shape=(m, n))
        eye = sp.identity(m, format="csc")
        self.A = sp.hstack([a_struct, eye, eye], format="csc")
        self.AT = self.A.T.tocsr()

        self.slack_lb = np.zeros(m)
        self.slack_ub = np.zeros(m)
        for i, sense in enumerate(self.senses):
            if sense == LE:
                self.slack_lb[i], self.slack_ub[i] = 0.0, math.inf
            elif sense == GE:
                self.slack_lb[i], self.slack_ub[i] = -math.inf, 0.0
            else:
                self.slack_lb[i], self.slack_ub[i] = 0.0, 0.0

        self.integer_ids = [v.id for v in model.variables if v.is_integral]

    def column(self, j: int) -> np.ndarray:
        out = np.zeros(self.m)
        a = self.A
        start, end = a.indptr[j], a.indptr[j + 1]
        out[a.indices[start:end]] = a.data[start:end]
        return out


@dataclass
class _LpOutcome:
    status: str
    objective: float
    values: Optional[np.ndarray]  # structural variables only
    certificate: Optional[str] = None
    iterations: int = 0


class _Simplex:
    """One LP solve over an :class:`_LpProblem` with per-node variable bounds."""

    def __init__(self, prob: _LpProblem, lb_struct: np.ndarray, ub_struct: np.ndarray,
                 feas_tol: float, opt_tol: float = 1e-9):
        self.prob = prob
        self.feas_tol = feas_tol
        self.opt_tol = opt_tol
        n, m = prob.n, prob.m
        self.n_cols = n + 2 * m
        self.lb = np.concatenate([lb_struct, prob.slack_lb, np.zeros(m)])
        self.ub = np.concatenate([ub_struct, prob.slack_ub, np.zeros(m)])
        self.degenerate_pivots = 0
        self.pivots_since_refactor = 0
        self.iterations = 0

    # -- setup -----------------------------------------------------------

    def _initial_point(self) -> None:
        n, m = self.prob.n, self.prob.m
        lb, ub = self.lb, self.ub
        x = np.zeros(self.n_cols)
        status = np.full(self.n_cols, _AT_LOWER, dtype=np.int8)
        for j in range(n + m):
            if math.isfinite(lb[j]):
                x[j] = lb[j]
            elif math.isfinite(ub[j]):
                x[j] = ub[j]
                status[j] = _AT_UPPER
            else:
                x[j] = 0.0
                status[j] = _FREE

        residual = self.prob.b - self.prob.A[:, : n + m] @ x[: n + m]
        basis = np.empty(m, dtype=int)
        artificial_active = np.zeros(m, dtype=bool)
        for i in range(m):
            slack = n + i
            art = n + m + i
            r = residual[i] + x[slack]  # slack currently nonbasic at 0 or a bound
            if lb[slack] - self.feas_tol <= r <= ub[slack] + self.feas_tol:
                basis[i] = slack
                x[slack] = r
            else:
                basis[i] = art
                lb[art] = min(0.0, r)
                ub[art] = max(0.0, r)
                x[art] = r
                artificial_active[i] = True
            status[basis[i]] = _BASIC

        self.x = x
        self.status = status
        self.basis = basis
        self.in_basis = np.zeros(self.n_cols, dtype=bool)
        self.in_basis[basis] = True
        self.binv = np.eye(m)
        self.artificial_active = artificial_active

    def _refactor(self) -> None:
        m = self.prob.m
        cols = np.zeros((m, m))
        for i, j in enumerate(self.basis):
            cols[:, i] = self.prob.column(j)
        try:
            self.binv = np.linalg.inv(cols)
        except np.linalg.LinAlgError as exc:
            raise SolverError("singular basis during refactorization") from exc
        xn = self.x.copy()
        xn[self.basis] = 0.0
        rhs = self.prob.b - self.prob.A @ xn
        self.x[self.basis] = self.binv @ rhs
        self.pivots_since_refactor = 0

    # -- core loop ---------------------------------------------------------

    def _run(self, c: np.ndarray, max_iterations: int) -> tuple[str, Optional[str]]:
        prob = self.prob
        lb, ub, x, status = self.lb, self.ub, self.x, self.status
        fixed = ub - lb <= 0.0

        while True:
            self.iterations += 1
            if self.iterations > max_iterations:
                raise SolverError("simplex iteration limit exceeded")
            if self.pivots_since_refactor >= _REFACTOR_EVERY:
                self._refactor()

            y = c[self.basis] @ self.binv
            d = c - prob.AT @ y

            use_bland = self.degenerate_pivots >= _BLAND_AFTER_DEGENERATE
            up_ok = (~self.in_basis) & (~fixed) & (d < -self.opt_tol) & (
                (status == _AT_LOWER) | (status == _FREE)
            )
            down_ok = (~self.in_basis) & (~fixed) & (d > self.opt_tol) & (
                (status == _AT_UPPER) | (status == _FREE)
            )
            eligible = up_ok | down_ok
            if not eligible.any():
                return OPTIMAL, None

            candidates = np.nonzero(eligible)[0]
            if use_bland:
                q = int(candidates[0])
            else:
                q = int(candidates[np.argmax(np.abs(d[candidates]))])
            sigma = 1.0 if up_ok[q] else -1.0

            w = self.binv @ prob.column(q)
            delta = sigma * w  # basic values move by -t * delta

            basic = self.basis
            xb = x[basic]
            t_rows = np.full(prob.m, math.inf)
            pos = delta > _PIVOT_TOL
            if pos.any():
                lo = lb[basic[pos]]
                finite = np.isfinite(lo)
                ratios = np.full(pos.sum(), math.inf)
                ratios[finite] = (xb[pos][finite] - lo[finite]) / delta[pos][finite]
                t_rows[pos] = ratios
            neg = delta < -_PIVOT_TOL
            if neg.any():
                hi = ub[basic[neg]]
                finite = np.isfinite(hi)
                ratios = np.full(neg.sum(), math.inf)
                ratios[finite] = (xb[neg][finite] - hi[finite]) / delta[neg][finite]
                t_rows[neg] = ratios

            t_rows = np.maximum(t_rows, 0.0)
            t_pivot = t_rows.min() if prob.m else math.inf
            span = ub[q] - lb[q]
            t_flip = span if math.isfinite(span) else math.inf
            t_star = min(t_pivot, t_flip)
            if not math.isfinite(t_star):
                return UNBOUNDED, prob.col_names[q] if q < prob.n else f"slack[{q - prob.n}]"

            if t_star <= _DEGENERATE_STEP:
                self.degenerate_pivots += 1

            if t_flip <= t_pivot:
                # Bound flip: the entering variable crosses to its other bound.
                x[basic] = xb - t_flip * delta
                if sigma > 0:
                    x[q] = ub[q]
                    status[q] = _AT_UPPER
                else:
                    x[q] = lb[q]
                    status[q] = _AT_LOWER
                continue

            near = np.nonzero(t_rows <= t_pivot + _RATIO_TIE_TOL)[0]
            if use_bland:
                r = int(near[np.argmin(basic[near])])
            else:
                best = np.argmax(np.abs(delta[near]))
                r = int(near[best])
            leaving = int(basic[r])

            x[basic] = xb - t_star * delta
            x[q] = x[q] + sigma * t_star
            if delta[r] > 0:
                x[leaving] = lb[leaving]
                status[leaving] = _AT_LOWER
            else:
                x[leaving] = ub[leaving]
                status[leaving] = _AT_UPPER

            self.basis[r] = q
            self.in_basis[leaving] = False
            self.in_basis[q] = True
            status[q] = _BASIC

            pivot = w[r]
            if abs(pivot) < _PIVOT_TOL:
                raise SolverError("numerically singular pivot")
            self.binv[r, :] /= pivot
            row = self.binv[r, :]
            others = np.arange(prob.m) != r
            self.binv[others, :] -= np.outer(w[others], row)
            self.pivots_since_refactor += 1

    def solve(self) -> _LpOutcome:
        prob = self.prob
        n, m = prob.n, prob.m
        max_iterations = 20000 + 50 * (n + 2 * m)
        self._initial_point()

        if self.artificial_active.any():
            c1 = np.zeros(self.n_cols)
            art = np.arange(n + m, n + 2 * m)[self.artificial_active]
            c1[art] = np.sign(self.x[art])
            state, _ = self._run(c1, max_iterations)
            if state != OPTIMAL:
                raise SolverError("phase-1 LP reported unbounded")
            infeas = float(np.abs(self.x[art]).sum())
            if infeas > self.feas_tol * max(1.0, float(np.abs(prob.b).max(initial=0.0))):
                worst = int(art[np.argmax(np.abs(self.x[art]))]) - (n + m)
                return _LpOutcome(
                    status=INFEASIBLE,
                    objective=math.inf,
                    values=None,
                    certificate=prob.row_names[worst],
                    iterations=self.iterations,
                )
            # Pin all artificials at zero for phase 2.
            self.lb[n + m:] = 0.0
            self.ub[n + m:] = 0.0

        state, certificate = self._run(self.prob.c, max_iterations)
        if state == UNBOUNDED:
            return _LpOutcome(
                status=UNBOUNDED,
                objective=-math.inf,
                values=None,
                certificate=certificate,
                iterations=self.iterations,
            )
        self._refactor()  # clean residual drift before reading off the solution
        values = self.x[:n].copy()
        objective = float(self.prob.c[:n] @ values)
        return _LpOutcome(status=OPTIMAL, objective=objective, values=values,
                          iterations=self.iterations)


def _solve_lp_node(prob: _LpProblem, lb: np.ndarray, ub: np.ndarray,
                   feas_tol: float) -> _LpOutcome:
    return _Simplex(prob, lb, ub, feas_tol).solve()


def solve_lp(model: MilpModel, options: SolveOptions = SolveOptions()) -> SolveResult:
    """Solve the LP relaxation of ``model`` (integrality dropped)."""
    start = time.perf_counter()
    prob = _LpProblem(model)
    out = _solve_lp_node(prob, prob.lb0.copy(), prob.ub0.copy(), options.feasibility_tolerance)
    wall = time.perf_counter() - start
    if out.status == OPTIMAL:
        values = {v.name: float(out.values[v.id]) for v in model.variables}
        return SolveResult(
            status=OPTIMAL,
            incumbent=values,
            objective=out.objective,
            best_bound=out.objective,
            relative_gap=0.0,
            nodes_explored=0,
            wall_time_seconds=wall,
        )
    return SolveResult(
        status=out.status,
        incumbent=None,
        objective=math.inf if out.status == INFEASIBLE else -math.inf,
        best_bound=math.inf if out.status == INFEASIBLE else -math.inf,
        relative_gap=1.0,
        nodes_explored=0,
        wall_time_seconds=wall,
        certificate=out.certificate,
    )


# -- rounding heuristic --------------------------------------------------------


def _heuristic_values(model: MilpModel, lp_values: np.ndarray) -> Optional[dict[str, float]]:
    """Round fractional path choices and repair trucks/weights upward.

    Returns a full variable assignment or None when the hints cannot complete
    one (e.g. equality-mode interpolation at an unsampled activation vector).
    """
    hints = model.hints
    if hints is None:
        return None
    values = {v.name: 0.0 for v in model.variables}
    names = model.variables

    flows: dict[int, float] = {}
    short_by_dest: dict[int, dict[int, int]] = {}
    for ck in hints.commodities:
        best = max(range(len(ck.x_vars)), key=lambda i: (lp_values[ck.x_vars[i]], -i))
        for i, xv in enumerate(ck.x_vars):
            values[names[xv].name] = 1.0 if i == best else 0.0
        for eid in ck.path_edges[best]:
            flows[eid] = flows.get(eid, 0.0) + ck.volume
        short_by_dest.setdefault(ck.destination, {})[ck.origin_index] = (
            1 if ck.short[best] else 0
        )

    for eh in hints.edges:
        flow = flows.get(eh.edge_id, 0.0)
        values[names[eh.y_var].name] = float(trucks_needed(flow, eh.capacity))

    for dh in hints.destinations:
        z_bits = short_by_dest.get(dh.destination, {})
        for oi, zv in dh.z_var_by_origin_index.items():
            values[names[zv].name] = float(z_bits.get(oi, 0))

        best_idx = None
        best_value = -1
        for i, bits in enumerate(dh.point_bits):
            if hints.closure_mode == "equality":
                match = all(b == z_bits.get(oi, 0) for oi, b in enumerate(bits))
            else:
                match = all(b <= z_bits.get(oi, 0) for oi, b in enumerate(bits))
            if match and dh.point_values[i] > best_value:
                best_idx = i
                best_value = dh.point_values[i]
        if best_idx is None:
            return None
        for i, av in enumerate(dh.alpha_vars):
            values[names[av].name] = 1.0 if i == best_idx else 0.0
    return values


# -- branch and bound -----------------------------------------------------------


def solve_milp(model: MilpModel, options: SolveOptions = SolveOptions()) -> SolveResult:
    """Branch-and-bound solve of a minimization MILP.

    Termination: relative gap below target, time limit, optional node limit,
    or tree exhaustion. Every incumbent is re-verified by
    :func:`check_solution` before acceptance; a failed verification of an
    integral LP solution falls back to fixing the integers and re-solving the
    continuous completion.
    """
    start = time.perf_counter()
    prob = _LpProblem(model)
    feas_tol = options.feasibility_tolerance
    int_tol = options.integrality_tolerance
    integer_ids = prob.integer_ids

    trace_rows: list[list] = []

    incumbent: Optional[dict[str, float]] = None
    incumbent_obj = math.inf

    def timed_out() -> bool:
        return time.perf_counter() - start > options.time_limit_seconds

    def accept(values: dict[str, float], repair_from: Optional[dict[int, tuple[float, float]]] = None) -> bool:
        nonlocal incumbent, incumbent_obj
        violations = check_solution(model, values, feas_tol, int_tol)
        if violations and repair_from is not None:
            fixed = _complete_with_fixed_integers(prob, model, values, feas_tol, repair_from)
            if fixed is None:
                return False
            values = fixed
            violations = check_solution(model, values, feas_tol, int_tol)
        if violations:
            return False
        obj = model.objective_value(values)
        if obj < incumbent_obj - 1e-12:
            incumbent = values
            incumbent_obj = obj
            return True
        return False

    # node entries: (parent bound, node id, bound changes {vid: (lo, hi)}, depth)
    heap: list[tuple[float, int, dict, int]] = [(-math.inf, 0, {}, 0)]
    next_id = 1
    explored = 0
    best_bound = -math.inf
    status = OPTIMAL
    certificate = None

    while True:
        if not heap:
            if incumbent is None:
                status = INFEASIBLE
                best_bound = math.inf
            else:
                status = OPTIMAL
                best_bound = incumbent_obj
            break
        best_bound = heap[0][0]
        if incumbent is not None:
            gap = _relative_gap(incumbent_obj, best_bound)
            if incumbent_obj - best_bound <= 1e-9 * max(1.0, abs(incumbent_obj)):
                status = OPTIMAL
                break
            if gap <= options.relative_gap_target:
                status = GAP_LIMIT
                break
        if timed_out():
            status = TIME_LIMIT
            break
        if options.node_limit is not None and explored >= options.node_limit:
            status = NODE_LIMIT
            break

        _, node_id, changes, depth = heapq.heappop(heap)
        lb = prob.lb0.copy()
        ub = prob.ub0.copy()
        for vid, (lo, hi) in changes.items():
            lb[vid] = max(lb[vid], lo)
            ub[vid] = min(ub[vid], hi)
        out = _solve_lp_node(prob, lb, ub, feas_tol)
        explored += 1

        if out.status == UNBOUNDED:
            if explored == 1:
                status = UNBOUNDED
                certificate = out.certificate
                best_bound = -math.inf
                break
            raise SolverError("child node unbounded although root was bounded")
        if out.status == INFEASIBLE:
            if explored == 1 and incumbent is None and not heap:
                status = INFEASIBLE
                certificate = out.certificate
                best_bound = math.inf
                break
            trace_rows.append([node_id, depth, "", incumbent_obj, "pruned-infeasible"])
            continue

        node_bound = out.objective
        if incumbent is not None and node_bound >= incumbent_obj - 1e-9 * max(1.0, abs(incumbent_obj)):
            trace_rows.append([node_id, depth, node_bound, incumbent_obj, "pruned-bound"])
            continue

        x = out.values
        fracs = [(vid, abs(x[vid] - round(x[vid]))) for vid in integer_ids]
        fractional = [(vid, f) for vid, f in fracs if f > int_tol]

        if not fractional:
            values = {v.name: float(x[v.id]) for v in model.variables}
            for vid in integer_ids:
                values[model.variables[vid].name] = float(round(x[vid]))
            accept(values, repair_from=changes)
            trace_rows.append([node_id, depth, node_bound, incumbent_obj, "integral"])
            continue

        rounded = _heuristic_values(model, x)
        if rounded is not None:
            accept(rounded)

        branch_vid = max(fractional, key=lambda t: (min(t[1], 1.0 - t[1]), -t[0]))[0]
        val = x[branch_vid]
        down = dict(changes)
        down[branch_vid] = _merge_bounds(down.get(branch_vid), (-math.inf, math.floor(val)))
        up = dict(changes)
        up[branch_vid] = _merge_bounds(up.get(branch_vid), (math.ceil(val), math.inf))
        heapq.heappush(heap, (node_bound, next_id, down, depth + 1))
        heapq.heappush(heap, (node_bound, next_id + 1, up, depth + 1))
        next_id += 2
        trace_rows.append(
            [node_id, depth, node_bound, incumbent_obj, model.variables[branch_vid].name]
        )

    wall = time.perf_counter() - start
    if options.trace_path:
        with open(options.trace_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["node_id", "depth", "bound", "incumbent", "branch_variable"])
            writer.writerows(trace_rows)

    if status in (INFEASIBLE, UNBOUNDED) and incumbent is None:
        return SolveResult(
            status=status,
            incumbent=None,
            objective=math.inf if status == INFEASIBLE else -math.inf,
            best_bound=best_bound,
            relative_gap=1.0,
            nodes_explored=explored,
            wall_time_seconds=wall,
            certificate=certificate,
        )

    best_bound = min(best_bound, incumbent_obj)
    gap = _relative_gap(incumbent_obj, best_bound) if incumbent is not None else 1.0
    return SolveResult(
        status=status,
        incumbent=incumbent,
        objective=incumbent_obj if incumbent is not None else math.inf,
        best_bound=best_bound,
        relative_gap=max(0.0, gap),
        nodes_explored=explored,
        wall_time_seconds=wall,
    )


def _relative_gap(objective: float, best_bound: float) -> float:
    if not math.isfinite(objective) or not math.isfinite(best_bound):
        return 1.0
    return (objective - best_bound) / max(1e-10, abs(objective))


def _merge_bounds(existing: Optional[tuple[float, float]], new: tuple[float, float]) -> tuple[float, float]:
    if existing is None:
        return new
    return (max(existing[0], new[0]), min(existing[1], new[1]))


def _complete_with_fixed_integers(
    prob: _LpProblem,
    model: MilpModel,
    values: dict[str, float],
    feas_tol: float,
    changes: dict[int, tuple[float, float]],
) -> Optional[dict[str, float]]:
    """Re-solve the LP with all integer variables pinned to their rounded
    values; returns the exact continuous completion if one exists."""
    lb = prob.lb0.copy()
    ub = prob.ub0.copy()
    for vid, (lo, hi) in changes.items():
        lb[vid] = max(lb[vid], lo)
        ub[vid] = min(ub[vid], hi)
    for vid in prob.integer_ids:
        pinned = round(values[model.variables[vid].name])
        lb[vid] = pinned
        ub[vid] = pinned
    out = _solve_lp_node(prob, lb, ub, feas_tol)
    if out.status != OPTIMAL:
        return None
    completed = {v.name: float(out.values[v.id]) for v in model.variables}
    for vid in prob.integer_ids:
        completed[model.variables[vid].name] = float(round(out.values[vid]))
    return completed
