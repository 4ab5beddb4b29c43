"""Reduced sample sets of speed assignments for the coverage interpolation.

Instead of all 2^n_O activation vectors, a destination gets at most
``2^kappa + 3*(n_O - kappa)`` of them, built around the ``kappa`` origins with
the largest individual coverage:

* every short/long combination of the top-``kappa`` origins,
* the top group short plus one other origin short,
* a single non-top origin short on its own,
* the top ``i`` origins short for each ``i`` above ``kappa``.

Duplicates across the four families are dropped (the families overlap by
construction), keeping the first occurrence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coverage import InventoryMatrix, SpeedAssignment, coverage, rank_origins
from .errors import ParameterError


@dataclass(frozen=True)
class SamplePoint:
    """One 0/1 activation vector together with its exact coverage count."""

    bits: tuple[int, ...]
    value: int


@dataclass(frozen=True)
class SampleSet:
    destination: int
    kappa: int
    points: tuple[SamplePoint, ...]

    def bit_vectors(self) -> list[tuple[int, ...]]:
        return [p.bits for p in self.points]


def sample_count_bound(kappa: int, n_origins: int) -> int:
    """Upper bound on the number of distinct sample points: 2^k + 3(n - k)."""
    if not 1 <= kappa <= n_origins:
        raise ParameterError(f"kappa must be in 1..{n_origins}, got {kappa}")
    return 2**kappa + 3 * (n_origins - kappa)


def build_samples(inv: InventoryMatrix, destination: int, kappa: int) -> SampleSet:
    """Build the deduplicated sample set for one destination.

    The origin ranking (descending individual coverage, ties by index) fixes
    both the top-``kappa`` group and the enumeration order, so the result is
    deterministic for a given inventory.
    """
    n = inv.n_origins
    if not 1 <= kappa <= n:
        raise ParameterError(f"kappa must be in 1..{n}, got {kappa}")

    ranking = rank_origins(inv)
    top = ranking[:kappa]
    rest = ranking[kappa:]

    vectors: list[tuple[int, ...]] = []

    # All short/long combinations of the top group.
    for mask in range(2**kappa):
        bits = [0] * n
        for j in range(kappa):
            if mask >> j & 1:
                bits[top[j]] = 1
        vectors.append(tuple(bits))

    # Top group short plus one other origin short.
    for extra in rest:
        bits = [0] * n
        for o in top:
            bits[o] = 1
        bits[extra] = 1
        vectors.append(tuple(bits))

    # Exactly one non-top origin short.
    for extra in rest:
        bits = [0] * n
        bits[extra] = 1
        vectors.append(tuple(bits))

    # Top-i origins short for i = kappa+1 .. n.
    for i in range(kappa + 1, n + 1):
        bits = [0] * n
        for o in ranking[:i]:
            bits[o] = 1
        vectors.append(tuple(bits))

    seen: set[tuple[int, ...]] = set()
    points = []
    for bits in vectors:
        if bits in seen:
            continue
        seen.add(bits)
        value = coverage(inv, SpeedAssignment(destination=destination, bits=bits))
        points.append(SamplePoint(bits=bits, value=value))

    return SampleSet(destination=destination, kappa=kappa, points=tuple(points))
