"""Exact speed-coverage oracle over origin inventories.

Inventories are stored as one bitset per origin (a Python int, one bit per
item id), so evaluating coverage for a 0/1 origin-activation vector is a
union (bitwise OR) followed by a popcount.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, ParameterError


@dataclass(frozen=True)
class InventoryMatrix:
    """Per-origin item bitsets.

    ``rows[o]`` has bit ``j`` set iff item ``j`` is stored at origin ``o``.
    """

    n_origins: int
    n_items: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n_origins < 0 or self.n_items < 0:
            raise ParameterError("n_origins and n_items must be nonnegative")
        if len(self.rows) != self.n_origins:
            raise DimensionError(
                f"expected {self.n_origins} inventory rows, got {len(self.rows)}"
            )
        for o, row in enumerate(self.rows):
            if row < 0 or row.bit_length() > self.n_items:
                raise DimensionError(
                    f"inventory row {o} has item ids outside 0..{self.n_items - 1}"
                )

    @classmethod
    def from_item_lists(
        cls, item_lists: Iterable[Iterable[int]], n_items: int
    ) -> "InventoryMatrix":
        """Build from per-origin collections of item ids."""
        rows = []
        for items in item_lists:
            row = 0
            for item in items:
                row |= 1 << item
            rows.append(row)
        return cls(n_origins=len(rows), n_items=n_items, rows=tuple(rows))

    def item_ids(self, origin: int) -> list[int]:
        """Sorted item ids stored at ``origin`` (used for serialization)."""
        row = self.rows[origin]
        return [j for j in range(self.n_items) if row >> j & 1]


@dataclass(frozen=True)
class SpeedAssignment:
    """0/1 vector saying which origins reach ``destination`` via a short path."""

    destination: int
    bits: tuple[int, ...]


def _bits_of(z: "SpeedAssignment | Sequence[int]") -> Sequence[int]:
    return z.bits if isinstance(z, SpeedAssignment) else z


def coverage(inv: InventoryMatrix, z: "SpeedAssignment | Sequence[int]") -> int:
    """Number of unique items stored at the origins activated by ``z``.

    Computes ``|union of inv rows with z_o = 1|``; the all-zeros vector
    yields 0.
    """
    bits = _bits_of(z)
    if len(bits) != inv.n_origins:
        raise DimensionError(
            f"assignment has {len(bits)} entries, inventory has {inv.n_origins} origins"
        )
    acc = 0
    for o, on in enumerate(bits):
        if on:
            acc |= inv.rows[o]
    return acc.bit_count()


def individual_coverage(inv: InventoryMatrix, origin: int) -> int:
    """Coverage achieved by activating ``origin`` alone (row popcount)."""
    if not 0 <= origin < inv.n_origins:
        raise IndexError(f"origin {origin} out of range 0..{inv.n_origins - 1}")
    return inv.rows[origin].bit_count()


def rank_origins(inv: InventoryMatrix) -> list[int]:
    """Origin indices sorted by individual coverage, descending.

    Ties break by ascending origin index so the ranking is deterministic.
    """
    return sorted(range(inv.n_origins), key=lambda o: (-inv.rows[o].bit_count(), o))
