"""MILP formulations: cost-only network design and the speed-aware joint model.

Models are generic variable/constraint containers (no solver coupling) with a
stable naming scheme so exports are diffable:

* ``x_p<path>``   binary path selection
* ``y_e<edge>``   integer trucks opened on an edge
* ``z_o<o>_d<d>`` continuous short-path indicator (integrality is implied by
  the defining equality and the path-assignment constraint)
* ``a_d<d>_i<i>`` interpolation weight on sample point ``i`` of destination ``d``

Builders also attach :class:`SolverHints`, a structural side channel the
branch-and-bound rounding heuristic uses to repair fractional solutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import ParameterError
from .instance import Instance, validate
from .sampling import SampleSet

BINARY = "binary"
INTEGER = "integer"
CONTINUOUS = "continuous"

LE = "<="
EQ = "="
GE = ">="

MINIMIZE = "minimize"


def trucks_needed(flow: float, capacity: float) -> int:
    """Minimum integer trucks covering ``flow`` volume, with a small slack so
    float sums that are an exact multiple of the capacity do not round up."""
    if flow <= 0.0:
        return 0
    return max(0, math.ceil(flow / capacity - 1e-9))


@dataclass(frozen=True)
class Variable:
    id: int
    name: str
    kind: str
    lower: float
    upper: float
    objective: float = 0.0

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ParameterError(f"variable {self.name}: lower {self.lower} > upper {self.upper}")
        if self.kind == BINARY and (self.lower < 0.0 or self.upper > 1.0):
            raise ParameterError(f"binary variable {self.name} must have bounds within [0, 1]")
        if self.kind not in (BINARY, INTEGER, CONTINUOUS):
            raise ParameterError(f"variable {self.name}: unknown kind {self.kind!r}")

    @property
    def is_integral(self) -> bool:
        return self.kind in (BINARY, INTEGER)


@dataclass(frozen=True)
class LinearConstraint:
    name: str
    terms: tuple[tuple[int, float], ...]
    sense: str
    rhs: float

    def __post_init__(self) -> None:
        if self.sense not in (LE, EQ, GE):
            raise ParameterError(f"constraint {self.name}: unknown sense {self.sense!r}")
        ids = [vid for vid, _ in self.terms]
        if len(ids) != len(set(ids)):
            raise ParameterError(f"constraint {self.name} repeats a variable")


# -- heuristic hints --------------------------------------------------------


@dataclass(frozen=True)
class CommodityHint:
    commodity_id: int
    origin: int
    origin_index: int
    destination: int
    volume: float
    x_vars: tuple[int, ...]
    path_edges: tuple[tuple[int, ...], ...]
    short: tuple[bool, ...]


@dataclass(frozen=True)
class EdgeHint:
    edge_id: int
    y_var: int
    capacity: float


@dataclass(frozen=True)
class DestinationHint:
    destination: int
    z_var_by_origin_index: dict[int, int]
    alpha_vars: tuple[int, ...]
    point_bits: tuple[tuple[int, ...], ...]
    point_values: tuple[int, ...]


@dataclass(frozen=True)
class SolverHints:
    commodities: tuple[CommodityHint, ...]
    edges: tuple[EdgeHint, ...]
    destinations: tuple[DestinationHint, ...]
    gamma: float
    closure_mode: Optional[str]


@dataclass
class MilpModel:
    """Minimization MILP held as plain variable and constraint lists."""

    name: str
    variables: list[Variable] = field(default_factory=list)
    constraints: list[LinearConstraint] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    hints: Optional[SolverHints] = None
    sense: str = MINIMIZE

    def add_variable(
        self,
        name: str,
        kind: str,
        lower: float,
        upper: float,
        objective: float = 0.0,
    ) -> int:
        vid = len(self.variables)
        self.variables.append(
            Variable(id=vid, name=name, kind=kind, lower=lower, upper=upper, objective=objective)
        )
        return vid

    def add_constraint(self, name: str, terms: list[tuple[int, float]], sense: str, rhs: float) -> int:
        for vid, _ in terms:
            if not 0 <= vid < len(self.variables):
                raise ParameterError(f"constraint {name} references unknown variable id {vid}")
        self.constraints.append(
            LinearConstraint(name=name, terms=tuple(terms), sense=sense, rhs=float(rhs))
        )
        return len(self.constraints) - 1

    def variable_by_name(self, name: str) -> Variable:
        for v in self.variables:
            if v.name == name:
                return v
        raise KeyError(name)

    def objective_value(self, values: dict[str, float]) -> float:
        return sum(v.objective * values.get(v.name, 0.0) for v in self.variables)

    def summary(self) -> dict:
        n_int = sum(1 for v in self.variables if v.is_integral)
        return {
            "name": self.name,
            "variables": len(self.variables),
            "integer_variables": n_int,
            "constraints": len(self.constraints),
            **self.metadata,
        }


# -- builders ----------------------------------------------------------------


def _require_valid(instance: Instance) -> None:
    violations = validate(instance)
    if violations:
        raise ParameterError("instance is invalid: " + "; ".join(violations[:5]))


def _base_network(model: MilpModel, instance: Instance):
    """Add path-selection and trucking variables plus capacity/assignment rows.

    Returns (x_var ids per path id, y_var ids per used edge id).
    """
    x_var: dict[int, int] = {}
    for p in instance.paths:
        x_var[p.id] = model.add_variable(f"x_p{p.id}", BINARY, 0.0, 1.0)

    edge_by_id = {e.id: e for e in instance.edges}
    commodity_by_id = {k.id: k for k in instance.commodities}

    # Only edges actually referenced by a candidate path get a truck variable.
    paths_on_edge: dict[int, list] = {}
    volume_on_edge: dict[int, float] = {}
    for p in instance.paths:
        vol = commodity_by_id[p.commodity].volume
        for eid in p.edges:
            paths_on_edge.setdefault(eid, []).append(p)
            volume_on_edge[eid] = volume_on_edge.get(eid, 0.0) + vol

    y_var: dict[int, int] = {}
    for eid in sorted(paths_on_edge):
        e = edge_by_id[eid]
        # Finite upper bound: trucks needed if every candidate path used the edge.
        ub = math.ceil(volume_on_edge[eid] / e.truck_capacity)
        y_var[eid] = model.add_variable(f"y_e{eid}", INTEGER, 0.0, float(ub), objective=e.cost_per_truck)

    for eid in sorted(paths_on_edge):
        e = edge_by_id[eid]
        terms = [(x_var[p.id], commodity_by_id[p.commodity].volume) for p in paths_on_edge[eid]]
        terms.append((y_var[eid], -e.truck_capacity))
        model.add_constraint(f"cap_e{eid}", terms, LE, 0.0)

    for k in instance.commodities:
        terms = [(x_var[p.id], 1.0) for p in instance.paths if p.commodity == k.id]
        model.add_constraint(f"assign_k{k.id}", terms, EQ, 1.0)

    return x_var, y_var


def _edge_hints(instance: Instance, y_var: dict[int, int]) -> tuple[EdgeHint, ...]:
    edge_by_id = {e.id: e for e in instance.edges}
    return tuple(
        EdgeHint(edge_id=eid, y_var=y_var[eid], capacity=edge_by_id[eid].truck_capacity)
        for eid in sorted(y_var)
    )


def _commodity_hints(instance: Instance, x_var: dict[int, int]) -> tuple[CommodityHint, ...]:
    origin_index = {oid: i for i, oid in enumerate(instance.origin_ids())}
    hints = []
    for k in instance.commodities:
        paths = instance.paths_of(k.id)
        hints.append(
            CommodityHint(
                commodity_id=k.id,
                origin=k.origin,
                origin_index=origin_index[k.origin],
                destination=k.destination,
                volume=k.volume,
                x_vars=tuple(x_var[p.id] for p in paths),
                path_edges=tuple(p.edges for p in paths),
                short=tuple(p.is_short for p in paths),
            )
        )
    return tuple(hints)


def build_cost_model(instance: Instance) -> MilpModel:
    """Cost-only unsplittable network design: assign one path per commodity and
    open integer trucks on edges at minimum total trucking cost."""
    _require_valid(instance)
    model = MilpModel(name=f"cost-{instance.label()}")
    x_var, y_var = _base_network(model, instance)
    model.metadata = {"instance": instance.label(), "model_kind": "cost", "gamma": 0.0}
    model.hints = SolverHints(
        commodities=_commodity_hints(instance, x_var),
        edges=_edge_hints(instance, y_var),
        destinations=(),
        gamma=0.0,
        closure_mode=None,
    )
    return model


DOMINATED = "dominated"
EQUALITY = "equality"


def build_speed_aware_model(
    instance: Instance,
    samples: dict[int, SampleSet],
    gamma: float,
    closure_mode: str = DOMINATED,
) -> MilpModel:
    """Joint model: trucking cost minus ``gamma`` times interpolated coverage.

    ``samples`` maps destination node id to its sample set; one is required
    for every destination that has at least one commodity. In ``dominated``
    mode the interpolation weights only have to stay componentwise below the
    short-path vector (always feasible, lower-bounds coverage); ``equality``
    mode pins them exactly and can make off-sample assignments infeasible.
    """
    _require_valid(instance)
    if gamma < 0:
        raise ParameterError(f"gamma must be nonnegative, got {gamma}")
    if closure_mode not in (DOMINATED, EQUALITY):
        raise ParameterError(f"unknown closure_mode {closure_mode!r}")

    model = MilpModel(name=f"speed-{instance.label()}")
    x_var, y_var = _base_network(model, instance)

    origin_ids = instance.origin_ids()
    origin_index = {oid: i for i, oid in enumerate(origin_ids)}
    n_origins = len(origin_ids)

    z_var: dict[tuple[int, int], int] = {}
    for k in instance.commodities:
        z_var[(k.origin, k.destination)] = model.add_variable(
            f"z_o{k.origin}_d{k.destination}", CONTINUOUS, 0.0, 1.0
        )
    for k in instance.commodities:
        terms = [(z_var[(k.origin, k.destination)], 1.0)]
        for p in instance.paths_of(k.id):
            if p.is_short:
                terms.append((x_var[p.id], -1.0))
        model.add_constraint(f"zdef_o{k.origin}_d{k.destination}", terms, EQ, 0.0)

    sense = EQ if closure_mode == EQUALITY else LE
    dest_hints = []
    for dest, dest_commodities in sorted(instance.commodities_by_destination().items()):
        if dest not in samples:
            raise ParameterError(f"no sample set supplied for destination {dest}")
        sample_set = samples[dest]
        points = sample_set.points
        if any(len(p.bits) != n_origins for p in points):
            raise ParameterError(
                f"sample set for destination {dest} has wrong bit-vector length"
            )

        alpha_vars = tuple(
            model.add_variable(
                f"a_d{dest}_i{i}", CONTINUOUS, 0.0, 1.0, objective=-gamma * p.value
            )
            for i, p in enumerate(points)
        )
        model.add_constraint(f"conv_d{dest}", [(a, 1.0) for a in alpha_vars], EQ, 1.0)

        connected = {k.origin for k in dest_commodities}
        for oid in origin_ids:
            oi = origin_index[oid]
            terms = [(alpha_vars[i], float(p.bits[oi])) for i, p in enumerate(points) if p.bits[oi]]
            if oid in connected:
                terms.append((z_var[(oid, dest)], -1.0))
            elif not terms:
                continue  # no commodity and never sampled short: row is 0 ? 0
            model.add_constraint(f"clo_d{dest}_o{oid}", terms, sense, 0.0)

        dest_hints.append(
            DestinationHint(
                destination=dest,
                z_var_by_origin_index={
                    origin_index[k.origin]: z_var[(k.origin, dest)] for k in dest_commodities
                },
                alpha_vars=alpha_vars,
                point_bits=tuple(p.bits for p in points),
                point_values=tuple(p.value for p in points),
            )
        )

    kappas = {samples[d].kappa for d in instance.commodities_by_destination()}
    model.metadata = {
        "instance": instance.label(),
        "model_kind": "speed_aware",
        "gamma": gamma,
        "closure_mode": closure_mode,
        "kappa": kappas.pop() if len(kappas) == 1 else sorted(kappas),
    }
    model.hints = SolverHints(
        commodities=_commodity_hints(instance, x_var),
        edges=_edge_hints(instance, y_var),
        destinations=tuple(dest_hints),
        gamma=gamma,
        closure_mode=closure_mode,
    )
    return model
