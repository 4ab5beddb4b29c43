"""Concave piecewise-linear interpolation of coverage over sampled vertices.

Given a sample set of 0/1 activation vectors with exact coverage values, the
interpolation at a fractional target is the best value of a convex combination
of sample points whose combined bits match the target. Because every 0/1
vector is an extreme point of the unit hypercube, the interpolation is exact
at every sampled vertex.

Two constraint senses are supported. ``equality`` requires the combination to
hit the target exactly and is infeasible when the target leaves the sampled
hull. ``dominated`` only requires the combination to stay componentwise below
the target, which is always feasible (the zero vector is in every sample set)
and, by monotonicity of coverage, yields a valid lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ClosureInfeasibleError, ParameterError
from .model import CONTINUOUS, EQ, LE, MilpModel
from .sampling import SampleSet
from .solver import INFEASIBLE, OPTIMAL, SolveOptions, solve_lp

EQUALITY = "equality"
DOMINATED = "dominated"


@dataclass(frozen=True)
class ClosureQuery:
    samples: SampleSet
    target: tuple[float, ...]
    mode: str = EQUALITY

    def __post_init__(self) -> None:
        if self.mode not in (EQUALITY, DOMINATED):
            raise ParameterError(f"unknown closure mode {self.mode!r}")
        if not self.samples.points:
            raise ParameterError("sample set is empty")
        n = len(self.samples.points[0].bits)
        if len(self.target) != n:
            raise ParameterError(f"target has {len(self.target)} entries, samples have {n}")
        if any(not 0.0 <= t <= 1.0 for t in self.target):
            raise ParameterError("target entries must lie in [0, 1]")


@dataclass(frozen=True)
class ClosureValue:
    """Interpolated coverage plus the optimal weights over the sample points."""

    value: float
    weights: tuple[float, ...]


def evaluate_closure(query: ClosureQuery) -> ClosureValue:
    """Solve the interpolation LP for one target vector.

    Maximizes the weighted coverage of sample points subject to the weights
    being a convex combination whose bit mixture matches (equality) or is
    dominated by (dominated) the target.
    """
    points = query.samples.points
    n_origins = len(points[0].bits)

    lp = MilpModel(name="closure")
    alpha = [
        lp.add_variable(f"w{i}", CONTINUOUS, 0.0, 1.0, objective=-float(p.value))
        for i, p in enumerate(points)
    ]
    lp.add_constraint("convexity", [(a, 1.0) for a in alpha], EQ, 1.0)
    sense = EQ if query.mode == EQUALITY else LE
    for o in range(n_origins):
        terms = [(alpha[i], 1.0) for i, p in enumerate(points) if p.bits[o]]
        if terms or query.mode == EQUALITY:
            lp.add_constraint(f"mix{o}", terms, sense, query.target[o])

    result = solve_lp(lp, SolveOptions(feasibility_tolerance=1e-7))
    if result.status == INFEASIBLE:
        raise ClosureInfeasibleError(
            f"target {query.target} is outside the hull of the sample set "
            f"(violated row: {result.certificate})"
        )
    if result.status != OPTIMAL:
        raise ParameterError(f"closure LP ended with status {result.status}")
    weights = tuple(result.incumbent[f"w{i}"] for i in range(len(points)))
    return ClosureValue(value=-result.objective, weights=weights)


@dataclass(frozen=True)
class ExactnessReport:
    """Deviations of the interpolation from stored values at sampled vertices."""

    checked: int
    deviations: tuple[tuple[int, float, float], ...]  # (point index, expected, got)

    @property
    def passed(self) -> bool:
        return not self.deviations


def closure_exactness_check(samples: SampleSet, tolerance: float = 1e-6) -> ExactnessReport:
    """Evaluate the interpolation at every sampled vertex and report any
    deviation beyond ``tolerance`` from the stored coverage value."""
    deviations = []
    for i, point in enumerate(samples.points):
        got = evaluate_closure(
            ClosureQuery(samples=samples, target=tuple(float(b) for b in point.bits), mode=EQUALITY)
        ).value
        if abs(got - point.value) > tolerance:
            deviations.append((i, float(point.value), got))
    return ExactnessReport(checked=len(samples.points), deviations=tuple(deviations))


def interpolate(samples: SampleSet, target: Sequence[float], mode: str = EQUALITY) -> float:
    """Convenience wrapper returning just the interpolated value."""
    return evaluate_closure(
        ClosureQuery(samples=samples, target=tuple(float(t) for t in target), mode=mode)
    ).value
