"""Structure digraph of the generating game.

Positions with the same interval closure behave identically up to size
parity, so the game quotients onto a DAG whose vertices are the closed
subgroups reachable from the Frattini subgroup.  Arcs go from a class to the
closures obtained by adjoining one outside element; they strictly enlarge the
subgroup, so types can be computed bottom-up from the terminal class (the
whole group).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import ElementSet, Group, parity
from .lattice import SubgroupLattice, build_lattice
from .typecalc import ExtendedType, TypeTriple, mex_p


@dataclass
class StructureClass:
    """One vertex of the structure digraph."""

    subgroup: ElementSet
    parity: int
    deficiency: int
    options: tuple[int, ...]
    type: TypeTriple | None = None
    smoothness: int | None = None

    @property
    def size(self) -> int:
        return len(self.subgroup)

    @property
    def etype(self) -> ExtendedType:
        if self.type is None or self.smoothness is None:
            raise ValueError("types have not been computed for this digraph")
        return ExtendedType(*self.type, self.smoothness)


@dataclass
class StructureDigraph:
    group: Group
    lattice: SubgroupLattice
    classes: list[StructureClass]
    root: int
    terminal: int
    _ids: dict[int, int] = field(repr=False, default_factory=dict)

    def class_of(self, I: ElementSet) -> StructureClass:
        try:
            return self.classes[self._ids[I.mask]]
        except KeyError:
            raise ValueError(f"{I.label()} is not a structure class of this digraph") from None

    def deficiency(self, I: ElementSet) -> int:
        """Minimum number of extra elements needed to extend I to a generating set."""
        return self.class_of(I).deficiency

    @property
    def typed(self) -> bool:
        return all(c.type is not None and c.smoothness is not None for c in self.classes)

    @property
    def nim_value(self) -> int:
        root = self.classes[self.root]
        if root.type is None:
            raise ValueError("types have not been computed for this digraph")
        return root.type[1]


def build_digraph(G: Group, lattice: SubgroupLattice | None = None) -> StructureDigraph:
    """Explore all interval closures reachable from the Frattini subgroup.

    Deficiencies are assigned by one reverse breadth-first pass from the
    terminal class; every arc adjoins one element, so the distance to the
    terminal equals the deficiency of the class.
    """
    lattice = lattice if lattice is not None else build_lattice(G)
    n = G.order
    full = (1 << n) - 1
    mmasks = lattice.maximal_masks

    def close(pmask: int) -> int:
        acc = full
        for m in mmasks:
            if pmask & ~m == 0:
                acc &= m
        return acc

    phi = close(0)
    discovered = [phi]
    seen = {phi}
    adjacency: dict[int, frozenset[int]] = {}
    head = 0
    while head < len(discovered):
        imask = discovered[head]
        head += 1
        options = set()
        rem = full ^ imask
        while rem:
            low = rem & -rem
            rem ^= low
            options.add(close(imask | low))
        adjacency[imask] = frozenset(options)
        for o in sorted(options):
            if o not in seen:
                seen.add(o)
                discovered.append(o)

    reverse: dict[int, list[int]] = {m: [] for m in adjacency}
    for src, options in adjacency.items():
        for o in options:
            reverse[o].append(src)
    dist = {full: 0}
    frontier = [full]
    while frontier:
        nxt = []
        for m in frontier:
            for p in reverse[m]:
                if p not in dist:
                    dist[p] = dist[m] + 1
                    nxt.append(p)
        frontier = nxt
    if len(dist) != len(adjacency):
        raise AssertionError("some structure class cannot reach the terminal class")

    ordered = sorted(adjacency, key=lambda m: (dist[m], m.bit_count(), m))
    ids = {m: i for i, m in enumerate(ordered)}
    classes = [
        StructureClass(
            subgroup=ElementSet(n, m),
            parity=parity(m.bit_count()),
            deficiency=dist[m],
            options=tuple(sorted(ids[o] for o in adjacency[m])),
        )
        for m in ordered
    ]
    return StructureDigraph(G, lattice, classes, ids[phi], ids[full], ids)


def compute_types(digraph: StructureDigraph) -> StructureDigraph:
    """Fill in type and smoothness for every class, largest subgroups first."""
    classes = digraph.classes
    for cid in sorted(range(len(classes)), key=lambda c: -classes[c].size):
        cls = classes[cid]
        if cid == digraph.terminal:
            cls.type = (parity(digraph.group.order), 0, 0)
        else:
            cls.type = mex_p(cls.parity, (classes[j].type for j in cls.options))
    for cls in classes:
        if cls.parity == 0:
            cls.smoothness = 2
        else:
            has_even_here = any(
                classes[j].parity == 0 and classes[j].deficiency == cls.deficiency
                for j in cls.options
            )
            cls.smoothness = 1 if has_even_here else 0
    return digraph


def analyze(G: Group, *, lattice: SubgroupLattice | None = None,
            cache_dir=None) -> StructureDigraph:
    """Lattice, digraph and types in one call."""
    lattice = lattice if lattice is not None else build_lattice(G, cache_dir=cache_dir)
    return compute_types(build_digraph(G, lattice))


def nim_value_of_game(G: Group, *, lattice: SubgroupLattice | None = None,
                      cache_dir=None) -> int:
    """Nim-value of the whole game: the even-position value of the start class."""
    return analyze(G, lattice=lattice, cache_dir=cache_dir).nim_value


@dataclass(frozen=True)
class Violation:
    rule: str
    source: int
    target: int | None
    message: str


def verify_option_restrictions(digraph: StructureDigraph) -> list[Violation]:
    """Check the structural rules relating classes to their options.

    R0: options stay within deficiencies {k-1, k} and one at k-1 exists.
    R1: even classes have only even options.
    R2: in an even-order group, every non-terminal class has an even option.
    R3: a smooth odd option at the same deficiency forces smoothness.
    R4: in an even-order group, a rough odd option one deficiency lower
        forces roughness.

    Violations are data, not errors; a genuinely built digraph yields none.
    """
    if not digraph.typed:
        raise ValueError("types have not been computed for this digraph")
    out: list[Violation] = []
    classes = digraph.classes
    even_group = parity(digraph.group.order) == 0
    for cid, cls in enumerate(classes):
        k = cls.deficiency
        if cid != digraph.terminal:
            if not any(classes[j].deficiency == k - 1 for j in cls.options):
                out.append(Violation("R0", cid, None, "no option with deficiency one lower"))
            for j in cls.options:
                dj = classes[j].deficiency
                if dj not in (k - 1, k):
                    out.append(Violation(
                        "R0", cid, j,
                        f"option deficiency {dj} outside {{{k - 1},{k}}}"))
        if cls.parity == 0:
            for j in cls.options:
                if classes[j].parity == 1:
                    out.append(Violation("R1", cid, j, "even class with an odd option"))
        if even_group and cls.options and all(classes[j].parity == 1 for j in cls.options):
            out.append(Violation("R2", cid, None, "no even option in an even-order group"))
        if cls.parity == 1:
            for j in cls.options:
                opt = classes[j]
                if opt.parity != 1:
                    continue
                if opt.deficiency == k and opt.smoothness == 1 and cls.smoothness == 0:
                    out.append(Violation(
                        "R3", cid, j,
                        "smooth odd option at the same deficiency, but the class is rough"))
                if (even_group and opt.deficiency == k - 1 and opt.smoothness == 0
                        and cls.smoothness == 1):
                    out.append(Violation(
                        "R4", cid, j,
                        "rough odd option one deficiency lower, but the class is smooth"))
    return out


_ODD_TYPES = {0: (1, 0, 0), 1: (1, 2, 1), 2: (1, 2, 0)}


def verify_odd_order_types(G: Group, digraph: StructureDigraph | None = None) -> bool:
    """For odd-order groups the type depends on the deficiency alone:
    (1,0,0), (1,2,1), (1,2,0) at deficiencies 0, 1, 2 and (1,1,0) beyond."""
    if parity(G.order) == 0:
        raise ValueError("group order must be odd")
    digraph = digraph if digraph is not None else analyze(G)
    for cls in digraph.classes:
        expected = _ODD_TYPES.get(cls.deficiency, (1, 1, 0))
        if cls.type != expected:
            return False
    return True


@dataclass(frozen=True)
class ConjectureReport:
    group: str
    holds: bool
    checked: int
    counterexamples: tuple[str, ...]


def check_even_option_conjecture(G: Group,
                                 digraph: StructureDigraph | None = None) -> ConjectureReport:
    """Does every odd class at deficiency k+1 have an even option at deficiency k?

    Open conjecture for even-order groups; the checker reports any class
    without such an option.
    """
    if parity(G.order) == 1:
        raise ValueError("group order must be even")
    digraph = digraph if digraph is not None else analyze(G)
    classes = digraph.classes
    bad = []
    checked = 0
    for cls in classes:
        if cls.parity == 1 and cls.deficiency >= 1:
            checked += 1
            ok = any(
                classes[j].parity == 0 and classes[j].deficiency == cls.deficiency - 1
                for j in cls.options
            )
            if not ok:
                bad.append(cls.subgroup.label())
    return ConjectureReport(G.name, not bad, checked, tuple(bad))


def digraph_report(digraph: StructureDigraph) -> dict:
    """JSON-ready per-group report with a stable class ordering."""
    if not digraph.typed:
        raise ValueError("types have not been computed for this digraph")
    G = digraph.group
    return {
        "schema": 1,
        "group": G.name,
        "order": G.order,
        "parity": parity(G.order),
        "nim": digraph.nim_value,
        "classes": [
            {
                "subgroup_label": cls.subgroup.label(),
                "size": cls.size,
                "parity": cls.parity,
                "deficiency": cls.deficiency,
                "type": list(cls.type),
                "smoothness": cls.smoothness,
                "options": list(cls.options),
            }
            for cls in digraph.classes
        ],
    }
