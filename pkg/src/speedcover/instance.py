"""Network/commodity/path/inventory data model, random generation, JSON persistence.

An :class:`Instance` is immutable after construction and safe to share across
threads. Generated instances follow a fixed layout: node ids are dense, origins
first, then destinations, then hubs; every origin-destination pair has one
commodity with a direct path plus one path through each hub.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path as FilePath
from typing import Optional

import numpy as np

from .coverage import InventoryMatrix
from .errors import ParameterError, SchemaError

SCHEMA_VERSION = 1

ORIGIN = "origin"
DESTINATION = "destination"
HUB = "hub"
_KINDS = (ORIGIN, DESTINATION, HUB)


@dataclass(frozen=True)
class Node:
    id: int
    kind: str
    position: tuple[float, float]


@dataclass(frozen=True)
class Edge:
    id: int
    tail: int
    head: int
    cost_per_truck: float
    truck_capacity: float
    transit_time: float


@dataclass(frozen=True)
class Commodity:
    id: int
    origin: int
    destination: int
    volume: float


@dataclass(frozen=True)
class Path:
    id: int
    commodity: int
    edges: tuple[int, ...]
    is_short: bool


@dataclass(frozen=True)
class GenerationParams:
    """Knobs for the random generator.

    Node positions are uniform in the unit square; edge transit time and cost
    scale linearly with Euclidean distance, so with the default 8 h threshold
    most direct paths are short while most hub detours are long.
    """

    p_store: float = 0.2
    items_per_origin: int = 50
    volume_low: float = 0.1
    volume_high: float = 1.0
    truck_capacity: float = 1.0
    time_per_distance: float = 12.0
    cost_per_distance: float = 100.0
    speed_threshold_hours: float = 8.0
    conversion_factor: float = 0.1

    def check(self) -> None:
        if not 0.0 < self.p_store <= 1.0:
            raise ParameterError(f"p_store must be in (0, 1], got {self.p_store}")
        if self.items_per_origin < 1:
            raise ParameterError("items_per_origin must be >= 1")
        if not 0.0 < self.volume_low <= self.volume_high:
            raise ParameterError("need 0 < volume_low <= volume_high")
        if self.truck_capacity <= 0.0:
            raise ParameterError("truck_capacity must be positive")
        if self.time_per_distance < 0.0 or self.cost_per_distance < 0.0:
            raise ParameterError("distance scale factors must be nonnegative")
        if self.speed_threshold_hours <= 0.0:
            raise ParameterError("speed_threshold_hours must be positive")
        if self.conversion_factor < 0.0:
            raise ParameterError("conversion_factor must be nonnegative")


@dataclass(frozen=True)
class GenerationInfo:
    """Provenance of a generated instance (seed plus generator knobs)."""

    n_origins: int
    n_destinations: int
    n_hubs: int
    seed: int
    params: GenerationParams


@dataclass(frozen=True)
class Instance:
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]
    commodities: tuple[Commodity, ...]
    paths: tuple[Path, ...]
    inventory: InventoryMatrix
    speed_threshold_hours: float = 8.0
    conversion_factor: float = 0.1
    generation: Optional[GenerationInfo] = None

    # -- derived lookups -------------------------------------------------

    @property
    def n_origins(self) -> int:
        return sum(1 for n in self.nodes if n.kind == ORIGIN)

    @property
    def n_destinations(self) -> int:
        return sum(1 for n in self.nodes if n.kind == DESTINATION)

    @property
    def n_hubs(self) -> int:
        return sum(1 for n in self.nodes if n.kind == HUB)

    def origin_ids(self) -> list[int]:
        return [n.id for n in self.nodes if n.kind == ORIGIN]

    def destination_ids(self) -> list[int]:
        return [n.id for n in self.nodes if n.kind == DESTINATION]

    def paths_of(self, commodity_id: int) -> list[Path]:
        return [p for p in self.paths if p.commodity == commodity_id]

    def commodities_by_destination(self) -> dict[int, list[Commodity]]:
        by_dest: dict[int, list[Commodity]] = {}
        for k in self.commodities:
            by_dest.setdefault(k.destination, []).append(k)
        return by_dest

    def label(self) -> str:
        """Short human-readable tag, used in model metadata and reports."""
        if self.generation is not None:
            g = self.generation
            return f"gen-o{g.n_origins}-d{g.n_destinations}-h{g.n_hubs}-s{g.seed}"
        return f"custom-o{self.n_origins}-d{self.n_destinations}-h{self.n_hubs}"


# -- validation ----------------------------------------------------------


def validate(instance: Instance) -> list[str]:
    """Check every structural invariant; returns one message per violation.

    An empty list means the instance is well formed. Nothing raises: callers
    that need a hard failure can assert on the result.
    """
    errs: list[str] = []
    nodes = instance.nodes
    node_by_id = {n.id: n for n in nodes}

    if sorted(node_by_id) != list(range(len(nodes))):
        errs.append("node ids are not dense 0..n_V-1")
    for n in nodes:
        if n.kind not in _KINDS:
            errs.append(f"node {n.id} has unknown kind {n.kind!r}")

    edge_by_id = {e.id: e for e in instance.edges}
    for e in instance.edges:
        if e.tail == e.head:
            errs.append(f"edge {e.id} is a self-loop")
        if e.tail not in node_by_id or e.head not in node_by_id:
            errs.append(f"edge {e.id} references a missing node")
        if e.cost_per_truck < 0:
            errs.append(f"edge {e.id} has negative cost_per_truck")
        if e.truck_capacity <= 0:
            errs.append(f"edge {e.id} has nonpositive truck_capacity")
        if e.transit_time < 0:
            errs.append(f"edge {e.id} has negative transit_time")

    seen_pairs: set[tuple[int, int]] = set()
    for k in instance.commodities:
        o = node_by_id.get(k.origin)
        d = node_by_id.get(k.destination)
        if o is None or o.kind != ORIGIN:
            errs.append(f"commodity {k.id} origin {k.origin} is not an origin node")
        if d is None or d.kind != DESTINATION:
            errs.append(
                f"commodity {k.id} destination {k.destination} is not a destination node"
            )
        if k.volume <= 0:
            errs.append(f"commodity {k.id} has nonpositive volume")
        pair = (k.origin, k.destination)
        if pair in seen_pairs:
            errs.append(f"commodity {k.id} duplicates origin-destination pair {pair}")
        seen_pairs.add(pair)

    commodity_by_id = {k.id: k for k in instance.commodities}
    paths_per_commodity = {k.id: 0 for k in instance.commodities}
    for p in instance.paths:
        k = commodity_by_id.get(p.commodity)
        if k is None:
            errs.append(f"path {p.id} references missing commodity {p.commodity}")
            continue
        paths_per_commodity[k.id] += 1
        missing = [e for e in p.edges if e not in edge_by_id]
        if missing:
            errs.append(f"path {p.id} references missing edges {missing}")
            continue
        if not p.edges:
            errs.append(f"path {p.id} has no edges")
            continue
        walk = [edge_by_id[p.edges[0]].tail]
        broken = False
        for eid in p.edges:
            e = edge_by_id[eid]
            if e.tail != walk[-1]:
                errs.append(f"path {p.id} edges do not form a connected walk")
                broken = True
                break
            walk.append(e.head)
        if broken:
            continue
        if walk[0] != k.origin or walk[-1] != k.destination:
            errs.append(
                f"path {p.id} does not run from commodity {k.id} origin to destination"
            )
        if len(set(walk)) != len(walk):
            errs.append(f"path {p.id} repeats a node")
        total_time = sum(edge_by_id[eid].transit_time for eid in p.edges)
        short = total_time <= instance.speed_threshold_hours
        if p.is_short != short:
            errs.append(
                f"path {p.id} is_short={p.is_short} but total transit time is "
                f"{total_time:g}h against threshold {instance.speed_threshold_hours:g}h"
            )

    for kid, count in paths_per_commodity.items():
        if count == 0:
            errs.append(f"commodity {kid} has no candidate paths")

    n_origins = instance.n_origins
    if instance.inventory.n_origins != n_origins:
        errs.append(
            f"inventory has {instance.inventory.n_origins} rows, expected {n_origins}"
        )
    if instance.speed_threshold_hours <= 0:
        errs.append("speed_threshold_hours must be positive")
    if instance.conversion_factor < 0:
        errs.append("conversion_factor must be nonnegative")
    return errs


# -- random generation ----------------------------------------------------


def generate_random(
    n_origins: int,
    n_destinations: int,
    n_hubs: int,
    seed: int,
    params: GenerationParams = GenerationParams(),
) -> Instance:
    """Generate a random instance: one commodity per origin-destination pair,
    a direct path plus one path through each hub, and Bernoulli inventories
    over ``items_per_origin * n_origins`` unique items.

    Deterministic given ``(seed, params)``.
    """
    if n_origins < 1 or n_destinations < 1:
        raise ParameterError("need at least one origin and one destination")
    if n_hubs < 0:
        raise ParameterError("n_hubs must be nonnegative")
    params.check()

    rng = np.random.default_rng(seed)
    n_nodes = n_origins + n_destinations + n_hubs
    positions = rng.random((n_nodes, 2))

    nodes = []
    for i in range(n_nodes):
        if i < n_origins:
            kind = ORIGIN
        elif i < n_origins + n_destinations:
            kind = DESTINATION
        else:
            kind = HUB
        nodes.append(Node(id=i, kind=kind, position=(float(positions[i, 0]), float(positions[i, 1]))))

    origin_ids = list(range(n_origins))
    dest_ids = list(range(n_origins, n_origins + n_destinations))
    hub_ids = list(range(n_origins + n_destinations, n_nodes))

    volumes = rng.uniform(params.volume_low, params.volume_high, size=n_origins * n_destinations)

    def dist(a: int, b: int) -> float:
        pa, pb = nodes[a].position, nodes[b].position
        return math.hypot(pa[0] - pb[0], pa[1] - pb[1])

    edges: list[Edge] = []
    edge_ids: dict[tuple[int, int], int] = {}

    def edge_for(tail: int, head: int) -> int:
        key = (tail, head)
        if key not in edge_ids:
            d = dist(tail, head)
            edge_ids[key] = len(edges)
            edges.append(
                Edge(
                    id=len(edges),
                    tail=tail,
                    head=head,
                    cost_per_truck=params.cost_per_distance * d,
                    truck_capacity=params.truck_capacity,
                    transit_time=params.time_per_distance * d,
                )
            )
        return edge_ids[key]

    commodities: list[Commodity] = []
    paths: list[Path] = []
    for o in origin_ids:
        for d in dest_ids:
            kid = len(commodities)
            commodities.append(Commodity(id=kid, origin=o, destination=d, volume=float(volumes[kid])))
            candidate_edges: list[tuple[int, ...]] = [(edge_for(o, d),)]
            for h in hub_ids:
                candidate_edges.append((edge_for(o, h), edge_for(h, d)))
            for edge_tuple in candidate_edges:
                total_time = sum(edges[eid].transit_time for eid in edge_tuple)
                paths.append(
                    Path(
                        id=len(paths),
                        commodity=kid,
                        edges=edge_tuple,
                        is_short=total_time <= params.speed_threshold_hours,
                    )
                )

    n_items = params.items_per_origin * n_origins
    stored = rng.random((n_origins, n_items)) < params.p_store
    rows = []
    for o in range(n_origins):
        row = 0
        for j in np.nonzero(stored[o])[0]:
            row |= 1 << int(j)
        rows.append(row)
    inventory = InventoryMatrix(n_origins=n_origins, n_items=n_items, rows=tuple(rows))

    return Instance(
        nodes=tuple(nodes),
        edges=tuple(edges),
        commodities=tuple(commodities),
        paths=tuple(paths),
        inventory=inventory,
        speed_threshold_hours=params.speed_threshold_hours,
        conversion_factor=params.conversion_factor,
        generation=GenerationInfo(
            n_origins=n_origins,
            n_destinations=n_destinations,
            n_hubs=n_hubs,
            seed=seed,
            params=params,
        ),
    )


# -- JSON persistence ------------------------------------------------------


def to_dict(instance: Instance) -> dict:
    """JSON-ready dict; inventory rows become sorted item-id arrays."""
    out: dict = {
        "version": SCHEMA_VERSION,
        "nodes": [
            {"id": n.id, "kind": n.kind, "position": [n.position[0], n.position[1]]}
            for n in instance.nodes
        ],
        "edges": [asdict(e) for e in instance.edges],
        "commodities": [asdict(k) for k in instance.commodities],
        "paths": [
            {"id": p.id, "commodity": p.commodity, "edges": list(p.edges), "is_short": p.is_short}
            for p in instance.paths
        ],
        "inventory": {
            "n_items": instance.inventory.n_items,
            "rows": [instance.inventory.item_ids(o) for o in range(instance.inventory.n_origins)],
        },
        "speed_threshold_hours": instance.speed_threshold_hours,
        "conversion_factor": instance.conversion_factor,
    }
    if instance.generation is not None:
        g = instance.generation
        out["generation_params"] = {
            "n_origins": g.n_origins,
            "n_destinations": g.n_destinations,
            "n_hubs": g.n_hubs,
            "seed": g.seed,
            **asdict(g.params),
        }
    return out


def _require(data: dict, key: str, context: str = "instance") -> object:
    if key not in data:
        raise SchemaError(f"{context} is missing required field '{key}'")
    return data[key]


def from_dict(data: dict) -> Instance:
    """Inverse of :func:`to_dict`; raises :class:`SchemaError` naming the
    first missing or malformed field."""
    if not isinstance(data, dict):
        raise SchemaError("instance JSON root must be an object")
    version = _require(data, "version")
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema version {version!r} (expected {SCHEMA_VERSION})")

    try:
        nodes = tuple(
            Node(id=int(n["id"]), kind=str(n["kind"]), position=(float(n["position"][0]), float(n["position"][1])))
            for n in _require(data, "nodes")
        )
        edges = tuple(
            Edge(
                id=int(e["id"]),
                tail=int(e["tail"]),
                head=int(e["head"]),
                cost_per_truck=float(e["cost_per_truck"]),
                truck_capacity=float(e["truck_capacity"]),
                transit_time=float(e["transit_time"]),
            )
            for e in _require(data, "edges")
        )
        commodities = tuple(
            Commodity(
                id=int(k["id"]),
                origin=int(k["origin"]),
                destination=int(k["destination"]),
                volume=float(k["volume"]),
            )
            for k in _require(data, "commodities")
        )
        paths = tuple(
            Path(
                id=int(p["id"]),
                commodity=int(p["commodity"]),
                edges=tuple(int(e) for e in p["edges"]),
                is_short=bool(p["is_short"]),
            )
            for p in _require(data, "paths")
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed instance entity: {exc}") from exc

    inv_raw = _require(data, "inventory")
    inventory = InventoryMatrix.from_item_lists(
        _require(inv_raw, "rows", context="inventory"),
        n_items=int(_require(inv_raw, "n_items", context="inventory")),
    )

    generation = None
    if "generation_params" in data and data["generation_params"] is not None:
        g = data["generation_params"]
        try:
            param_fields = {f: g[f] for f in GenerationParams.__dataclass_fields__}
            generation = GenerationInfo(
                n_origins=int(g["n_origins"]),
                n_destinations=int(g["n_destinations"]),
                n_hubs=int(g["n_hubs"]),
                seed=int(g["seed"]),
                params=GenerationParams(**param_fields),
            )
        except KeyError as exc:
            raise SchemaError(f"generation_params is missing field {exc}") from exc

    return Instance(
        nodes=nodes,
        edges=edges,
        commodities=commodities,
        paths=paths,
        inventory=inventory,
        speed_threshold_hours=float(_require(data, "speed_threshold_hours")),
        conversion_factor=float(_require(data, "conversion_factor")),
        generation=generation,
    )


def save(instance: Instance, path: "str | FilePath") -> None:
    """Write the instance as a versioned JSON file."""
    text = json.dumps(to_dict(instance), indent=2, sort_keys=True)
    FilePath(path).write_text(text + "\n", encoding="utf-8")


def load(path: "str | FilePath") -> Instance:
    """Read an instance written by :func:`save`."""
    try:
        data = json.loads(FilePath(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON in {path}: {exc}") from exc
    return from_dict(data)
