"""Exhaustive oracles for tiny instances.

No pruning, no cleverness: enumerate every path assignment (or every 0/1
activation vector) and evaluate directly. These exist to validate the MILP
pipeline, so obvious correctness beats speed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .coverage import InventoryMatrix, SpeedAssignment, coverage
from .errors import ParameterError
from .instance import Instance
from .model import trucks_needed
from .sampling import SamplePoint, SampleSet

ENUMERATION_CAP = 10**7
FULL_VERTEX_CAP = 20


@dataclass(frozen=True)
class EnumerationResult:
    objective: float
    assignment: tuple[int, ...]  # chosen path id per commodity, in commodity order
    coverage_by_destination: dict[int, int]
    assignments_enumerated: int


def enumerate_p2(instance: Instance, gamma: float) -> EnumerationResult:
    """Exact joint optimum by enumerating all path assignments.

    For each assignment, trucks per edge are the minimal integers covering the
    flow, short-path indicators follow from the chosen paths, and coverage is
    evaluated exactly. Ties break on the lexicographically smallest path-id
    vector (the enumeration order), so results are stable.
    """
    path_choices = [sorted(p.id for p in instance.paths_of(k.id)) for k in instance.commodities]
    total = math.prod(len(c) for c in path_choices)
    if total > ENUMERATION_CAP:
        raise ParameterError(f"{total} assignments exceed the enumeration cap {ENUMERATION_CAP}")

    path_by_id = {p.id: p for p in instance.paths}
    edge_by_id = {e.id: e for e in instance.edges}
    origin_index = {oid: i for i, oid in enumerate(instance.origin_ids())}
    n_origins = instance.n_origins
    destinations = sorted(instance.commodities_by_destination())

    best_obj = math.inf
    best_assignment: tuple[int, ...] = ()
    best_cov: dict[int, int] = {}

    for assignment in itertools.product(*path_choices):
        flows: dict[int, float] = {}
        bits = {d: [0] * n_origins for d in destinations}
        for k, pid in zip(instance.commodities, assignment):
            path = path_by_id[pid]
            for eid in path.edges:
                flows[eid] = flows.get(eid, 0.0) + k.volume
            if path.is_short:
                bits[k.destination][origin_index[k.origin]] = 1

        cost = sum(
            edge_by_id[eid].cost_per_truck * trucks_needed(flow, edge_by_id[eid].truck_capacity)
            for eid, flow in flows.items()
        )
        cov = {
            d: coverage(instance.inventory, SpeedAssignment(destination=d, bits=tuple(b)))
            for d, b in bits.items()
        }
        objective = cost - gamma * sum(cov.values())
        if objective < best_obj - 1e-12:
            best_obj = objective
            best_assignment = assignment
            best_cov = cov

    return EnumerationResult(
        objective=best_obj,
        assignment=best_assignment,
        coverage_by_destination=best_cov,
        assignments_enumerated=total,
    )


def full_vertex_closure(inv: InventoryMatrix, destination: int) -> SampleSet:
    """Sample set holding every 0/1 activation vector with exact coverage."""
    n = inv.n_origins
    if n > FULL_VERTEX_CAP:
        raise ParameterError(f"{n} origins exceed the full-vertex cap {FULL_VERTEX_CAP}")
    points = []
    for mask in range(2**n):
        bits = tuple((mask >> o) & 1 for o in range(n))
        value = coverage(inv, SpeedAssignment(destination=destination, bits=bits))
        points.append(SamplePoint(bits=bits, value=value))
    return SampleSet(destination=destination, kappa=n, points=tuple(points))
