"""Subgroup lattices: full enumeration, maximal subgroups, interval closure.

The interval closure of a position P is the intersection of the maximal
subgroups containing P, or the whole group when no maximal subgroup contains
P (in particular when P generates).  The closure of the empty set is the
Frattini subgroup.
"""

from __future__ import annotations

import json
from functools import cached_property
from pathlib import Path

from dataclasses import dataclass

from .groups import ElementSet, Group, closure_mask

CACHE_SCHEMA = 1


@dataclass(frozen=True)
class SubgroupLattice:
    """All subgroups of a group, with the maximal ones singled out."""

    group: Group
    subgroups: tuple[ElementSet, ...]
    maximals: tuple[ElementSet, ...]
    frattini: ElementSet

    @cached_property
    def maximal_masks(self) -> tuple[int, ...]:
        return tuple(m.mask for m in self.maximals)

    def interval_closure_mask(self, pmask: int) -> int:
        acc = (1 << self.group.order) - 1
        for m in self.maximal_masks:
            if pmask & ~m == 0:
                acc &= m
        return acc

    def interval_closure(self, P: ElementSet) -> ElementSet:
        """Intersection of the maximal subgroups containing P (G if none does)."""
        if P.n != self.group.order:
            raise ValueError("element set does not match the group order")
        return ElementSet(P.n, self.interval_closure_mask(P.mask))


def _enumerate_subgroup_masks(G: Group) -> list[int]:
    """All subgroups, as the join-closure of the cyclic subgroups."""
    table = G.table
    found: set[int] = set()
    queue: list[int] = []
    for g in range(G.order):
        m = closure_mask(table, 1 << g)
        if m not in found:
            found.add(m)
            queue.append(m)
    while queue:
        h = queue.pop()
        for k in list(found):
            u = h | k
            if u == h or u == k:
                continue
            j = closure_mask(table, u)
            if j not in found:
                found.add(j)
                queue.append(j)
    return sorted(found, key=lambda m: (m.bit_count(), m))


def _maximal_indices(masks: list[int], full: int) -> list[int]:
    out = []
    for i, m in enumerate(masks):
        if m == full:
            continue
        if not any(k != full and k != m and m | k == k for k in masks):
            out.append(i)
    return out


def _cache_file(cache_dir, G: Group) -> Path:
    return Path(cache_dir) / f"lattice-{G.content_hash[:24]}.json"


def _load_cached(cache_dir, G: Group) -> tuple[list[int], list[int]] | None:
    path = _cache_file(cache_dir, G)
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if (
        data.get("schema") != CACHE_SCHEMA
        or data.get("order") != G.order
        or data.get("table_sha256") != G.content_hash
    ):
        return None
    try:
        masks = [int(s, 16) for s in data["subgroups"]]
        maximal = [int(i) for i in data["maximal_indices"]]
    except (KeyError, TypeError, ValueError):
        return None
    return masks, maximal


def _save_cached(cache_dir, G: Group, masks: list[int], maximal: list[int]) -> None:
    path = _cache_file(cache_dir, G)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "schema": CACHE_SCHEMA,
        "order": G.order,
        "table_sha256": G.content_hash,
        "subgroups": [hex(m) for m in masks],
        "maximal_indices": maximal,
    }
    path.write_text(json.dumps(payload))


def build_lattice(G: Group, cache_dir=None) -> SubgroupLattice:
    """Enumerate the subgroup lattice, optionally through an on-disk cache.

    Cache entries are keyed by a content hash of the Cayley table, so a stale
    or foreign file is recomputed rather than trusted.
    """
    masks = maximal = None
    if cache_dir is not None:
        cached = _load_cached(cache_dir, G)
        if cached is not None:
            masks, maximal = cached
    if masks is None:
        masks = _enumerate_subgroup_masks(G)
        maximal = _maximal_indices(masks, (1 << G.order) - 1)
        if cache_dir is not None:
            _save_cached(cache_dir, G, masks, maximal)
    n = G.order
    subgroups = tuple(ElementSet(n, m) for m in masks)
    maximals = tuple(subgroups[i] for i in maximal)
    fmask = (1 << n) - 1
    for i in maximal:
        fmask &= masks[i]
    return SubgroupLattice(G, subgroups, maximals, ElementSet(n, fmask))


def all_subgroups(G: Group) -> list[ElementSet]:
    """Every subgroup of G, sorted by (size, bit pattern)."""
    return list(build_lattice(G).subgroups)


def maximal_subgroups(G: Group) -> list[ElementSet]:
    """Maximal proper subgroups of G; empty exactly for the trivial group."""
    return list(build_lattice(G).maximals)


def frattini_subgroup(G: Group) -> ElementSet:
    """Intersection of all maximal subgroups (the interval closure of the empty set)."""
    return build_lattice(G).frattini
