"""Exhaustive nim-values over every raw game position.

The oracle walks all 2^n subsets in decreasing cardinality order and applies
the mex recursion directly, with no quotienting, so it is an independent
check on the structure-digraph computation.  A position is terminal exactly
when it generates the group, equivalently when no maximal subgroup contains
it.  For the trivial group the empty starting position already generates, so
the game is over before the first move and its nim-value is 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .groups import ElementSet, Group, SizeLimitError
from .lattice import SubgroupLattice, build_lattice

ORACLE_CAP_DEFAULT = 16
ORACLE_CAP_HARD = 20


@dataclass(frozen=True)
class NimTable:
    """Nim-value of every position, indexed by the position's bitmask."""

    group: Group
    values: tuple[int, ...]

    def value(self, position: ElementSet | int) -> int:
        mask = position.mask if isinstance(position, ElementSet) else position
        return self.values[mask]

    @property
    def start_value(self) -> int:
        return self.values[0]


def _check_cap(G: Group, cap: int) -> None:
    if cap > ORACLE_CAP_HARD:
        raise ValueError(f"oracle cap above {ORACLE_CAP_HARD} is not supported")
    if G.order > cap:
        raise SizeLimitError(f"order {G.order} exceeds the oracle cap {cap}")


def nim_table(G: Group, *, lattice: SubgroupLattice | None = None,
              cap: int = ORACLE_CAP_DEFAULT) -> NimTable:
    """Game-tree mex recursion over all subsets, largest first."""
    _check_cap(G, cap)
    lattice = lattice if lattice is not None else build_lattice(G)
    n = G.order
    full = (1 << n) - 1
    complements = [full ^ m for m in lattice.maximal_masks]
    size = 1 << n
    values = [0] * size
    buckets: list[list[int]] = [[] for _ in range(n + 1)]
    for mask in range(size):
        buckets[mask.bit_count()].append(mask)
    for pop in range(n, -1, -1):
        for mask in buckets[pop]:
            for c in complements:
                if mask & c == 0:
                    break  # inside a maximal subgroup, so not generating
            else:
                continue  # generating positions are terminal with value 0
            seen = 0
            rem = full ^ mask
            while rem:
                low = rem & -rem
                rem ^= low
                seen |= 1 << values[mask | low]
            v = 0
            while seen >> v & 1:
                v += 1
            values[mask] = v
    return NimTable(G, tuple(values))


def oracle_nim(G: Group, *, lattice: SubgroupLattice | None = None,
               cap: int = ORACLE_CAP_DEFAULT) -> int:
    """Nim-value of the empty starting position."""
    return nim_table(G, lattice=lattice, cap=cap).start_value


class InvarianceViolation(NamedTuple):
    first: ElementSet
    second: ElementSet
    first_value: int
    second_value: int


def check_structure_invariance(G: Group, *, nim: NimTable | None = None,
                               lattice: SubgroupLattice | None = None,
                               cap: int = ORACLE_CAP_DEFAULT) -> list[InvarianceViolation]:
    """Positions with equal interval closure and equal size parity must share
    a nim-value; any pair that does not is returned."""
    lattice = lattice if lattice is not None else build_lattice(G)
    nim = nim if nim is not None else nim_table(G, lattice=lattice, cap=cap)
    n = G.order
    representatives: dict[tuple[int, int], int] = {}
    violations: list[InvarianceViolation] = []
    for mask in range(1 << n):
        key = (lattice.interval_closure_mask(mask), mask.bit_count() & 1)
        first = representatives.setdefault(key, mask)
        if nim.values[first] != nim.values[mask]:
            violations.append(InvarianceViolation(
                ElementSet(n, first), ElementSet(n, mask),
                nim.values[first], nim.values[mask]))
    return violations


def position_class_values(G: Group, *, nim: NimTable | None = None,
                          lattice: SubgroupLattice | None = None,
                          cap: int = ORACLE_CAP_DEFAULT) -> dict[tuple[int, int], set[int]]:
    """Oracle nim-values bucketed by (interval-closure mask, size parity)."""
    lattice = lattice if lattice is not None else build_lattice(G)
    nim = nim if nim is not None else nim_table(G, lattice=lattice, cap=cap)
    buckets: dict[tuple[int, int], set[int]] = {}
    for mask in range(1 << G.order):
        key = (lattice.interval_closure_mask(mask), mask.bit_count() & 1)
        buckets.setdefault(key, set()).add(nim.values[mask])
    return buckets


def nim_table_json(nim: NimTable) -> dict:
    """JSON-ready dump of a nim table (position bitmask, as text, to value)."""
    return {
        "schema": 1,
        "group": nim.group.name,
        "order": nim.group.order,
        "values": {str(mask): v for mask, v in enumerate(nim.values)},
    }
