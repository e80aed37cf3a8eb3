"""Fixed-point computation of the feasible spectrum of extended types.

Layer 0 is the terminal etype {(0,0,0,2)}.  Layer k is grown by an inner
iteration: level-0 entries come from pairs (empty, B) with B drawn from layer
k-1, later levels allow A drawn from the previous inner level, and only
feasible pairs contribute.  The inner sets are monotone and stabilize, as
does the sequence of layers itself.

The default enumeration collapses subset pairs to signatures: a result
depends on A and B only through the set of type triples in their union, the
parities present on each side, and whether A contains a smoothness-1 etype
or B a smoothness-0 one.  A naive full powerset enumeration is available
behind a flag for cross-validation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import StructureDigraph, analyze, verify_odd_order_types
from .groups import build_group, parity
from .typecalc import ExtendedType, TypeTriple, emex_p, is_feasible, mex_p

LAYER_ZERO = frozenset({ExtendedType(0, 0, 0, 2)})

Layer = frozenset  # of ExtendedType


@dataclass
class SpectrumLayers:
    """Per-deficiency layers, the inner traces, and the stabilization index."""

    layers: list[Layer]
    inner: list[list[Layer]]
    stabilized_at: int

    @property
    def union(self) -> Layer:
        return frozenset().union(*self.layers)

    def layer(self, k: int) -> Layer:
        """Layer k for any k >= 0; layers repeat from the stabilization index on."""
        return self.layers[min(k, self.stabilized_at)]

    def membership(self) -> dict[ExtendedType, tuple[int, ...]]:
        """etype -> all k up to the stabilization index with etype in layer k."""
        return {
            t: tuple(k for k in range(self.stabilized_at + 1) if t in self.layers[k])
            for t in sorted(self.union)
        }

    def continues_forever(self, t: ExtendedType) -> bool:
        return t in self.layers[self.stabilized_at]


# ----------------------------------------------------------------------------
# one inner step, signature-deduplicated


def _side_signatures(source: frozenset, smoothness_value: int,
                     triple_bit: dict[TypeTriple, int]) -> list[tuple[int, bool]]:
    """Achievable (triple-bitmask, flag) pairs over the subsets of ``source``.

    The flag records whether the subset contains an etype with the given
    smoothness.  Subsets realizing the same pair are interchangeable for
    feasibility and for emex, so each pair is listed once.
    """
    available: dict[TypeTriple, set[int]] = {}
    for t in source:
        available.setdefault(t.triple, set()).add(t.s)
    triples = sorted(available)
    d = len(triples)
    sigs: list[tuple[int, bool]] = []
    for sub in range(1 << d):
        chosen = [triples[i] for i in range(d) if sub >> i & 1]
        bits = 0
        for t in chosen:
            bits |= triple_bit[t]
        if all(available[t] - {smoothness_value} for t in chosen):
            sigs.append((bits, False))
        if any(smoothness_value in available[t] for t in chosen):
            sigs.append((bits, True))
    return sigs


def _triples_of_bits(bits: int, universe: list[TypeTriple]) -> list[TypeTriple]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(universe[i])
        bits >>= 1
        i += 1
    return out


def _layer_step(inner_prev: Layer | None, prev: Layer) -> Layer:
    """All feasible emex values with A from inner_prev and B from prev."""
    a_source = inner_prev if inner_prev is not None else frozenset()
    universe = sorted({t.triple for t in a_source} | {t.triple for t in prev})
    triple_bit = {t: 1 << i for i, t in enumerate(universe)}
    even_mask = sum(bit for t, bit in triple_bit.items() if t[0] == 0)
    odd_mask = sum(bit for t, bit in triple_bit.items() if t[0] == 1)

    a_sigs = _side_signatures(a_source, 1, triple_bit)
    b_sigs = [s for s in _side_signatures(prev, 0, triple_bit) if s[0] != 0]

    result: set[ExtendedType] = set()
    memo: dict[tuple[int, int, int], ExtendedType] = {}

    def emex_from_bits(p: int, ubits: int, smooth: int) -> ExtendedType:
        key = (p, ubits, smooth)
        got = memo.get(key)
        if got is None:
            got = ExtendedType(*mex_p(p, _triples_of_bits(ubits, universe)), smooth)
            memo[key] = got
        return got

    for a_bits, a_has_smooth in a_sigs:
        a_even = a_bits & even_mask != 0
        a_odd = a_bits & odd_mask != 0
        smooth = 1 if a_even else 0
        p1_rule3 = not a_has_smooth or a_even
        for b_bits, b_has_rough in b_sigs:
            u = a_bits | b_bits
            if not a_odd and b_bits & odd_mask == 0:
                result.add(emex_from_bits(0, u, 2))
            if ((a_even or b_bits & even_mask != 0) and p1_rule3
                    and (not b_has_rough or not a_even)):
                result.add(emex_from_bits(1, u, smooth))
    return frozenset(result)


def _layer_step_naive(inner_prev: Layer | None, prev: Layer) -> Layer:
    """Literal powerset enumeration; slow, kept for cross-validation."""
    a_elems = sorted(inner_prev) if inner_prev is not None else []
    b_elems = sorted(prev)
    b_subsets = [
        frozenset(b_elems[i] for i in range(len(b_elems)) if bm >> i & 1)
        for bm in range(1 << len(b_elems))
    ]
    result: set[ExtendedType] = set()
    for am in range(1 << len(a_elems)):
        A = frozenset(a_elems[i] for i in range(len(a_elems)) if am >> i & 1)
        for B in b_subsets:
            for p in (0, 1):
                if is_feasible(p, A, B):
                    result.add(emex_p(p, A, B))
    return frozenset(result)


def next_layer(prev: Layer, *, naive: bool = False,
               max_inner: int = 64) -> tuple[Layer, list[Layer]]:
    """Grow the next layer from ``prev``, iterating the inner sets until they
    stop changing.  Returns the layer and the inner trace, whose last two
    entries are equal."""
    step = _layer_step_naive if naive else _layer_step
    trace = [step(None, prev)]
    for _ in range(max_inner):
        grown = step(trace[-1], prev)
        if not trace[-1] <= grown:
            raise AssertionError("inner sets must grow monotonically")
        trace.append(grown)
        if grown == trace[-2]:
            return grown, trace
    raise RuntimeError("inner iteration did not stabilize within the budget")


def feasible_spectrum(*, naive: bool = False, max_layers: int = 32) -> SpectrumLayers:
    """Iterate the layer map from layer 0 until two consecutive layers agree.

    Termination is a theorem; exhausting the layer budget signals a bug, not
    a mathematical event.
    """
    layers = [LAYER_ZERO]
    inner: list[list[Layer]] = [[LAYER_ZERO]]
    for _ in range(max_layers):
        layer, trace = next_layer(layers[-1], naive=naive)
        layers.append(layer)
        inner.append(trace)
        if layer == layers[-2]:
            return SpectrumLayers(layers, inner, stabilized_at=len(layers) - 2)
    raise RuntimeError("feasible spectrum did not stabilize within the layer budget")


# ----------------------------------------------------------------------------
# empirical spectrum over a group corpus

Contribution = tuple[int, ExtendedType]  # (deficiency, etype)


def digraph_contributions(digraph: StructureDigraph) -> list[Contribution]:
    return [(cls.deficiency, cls.etype) for cls in digraph.classes]


@dataclass
class EmpiricalSpectrum:
    """Observed per-deficiency etypes with the containment report."""

    layers: dict[int, Layer]
    witnesses: dict[Contribution, tuple[str, ...]]
    feasible: SpectrumLayers
    containment_violations: tuple[tuple[str, int, ExtendedType], ...]
    witnessed: frozenset[Contribution]
    unwitnessed: frozenset[Contribution]
    odd_checked: tuple[str, ...]
    odd_failures: tuple[str, ...]

    @property
    def contained(self) -> bool:
        return not self.containment_violations


def assemble_empirical(contributions: dict[str, list[Contribution]],
                       odd_checked: list[str], odd_failures: list[str],
                       feasible: SpectrumLayers) -> EmpiricalSpectrum:
    layers: dict[int, set[ExtendedType]] = {}
    witnesses: dict[Contribution, list[str]] = {}
    violations: list[tuple[str, int, ExtendedType]] = []
    for spec, pairs in contributions.items():
        for k, t in pairs:
            layers.setdefault(k, set()).add(t)
            witnesses.setdefault((k, t), []).append(spec)
            if t not in feasible.layer(k):
                violations.append((spec, k, t))
    feasible_pairs = {
        (k, t)
        for k in range(feasible.stabilized_at + 1)
        for t in feasible.layers[k]
    }
    witnessed = frozenset(witnesses)
    return EmpiricalSpectrum(
        layers={k: frozenset(v) for k, v in sorted(layers.items())},
        witnesses={key: tuple(specs) for key, specs in sorted(witnesses.items())},
        feasible=feasible,
        containment_violations=tuple(sorted(violations)),
        witnessed=witnessed,
        unwitnessed=frozenset(feasible_pairs - witnessed),
        odd_checked=tuple(odd_checked),
        odd_failures=tuple(odd_failures),
    )


def empirical_spectrum(specs, *, cache_dir=None,
                       feasible: SpectrumLayers | None = None) -> EmpiricalSpectrum:
    """Collect (deficiency, etype) pairs over the even-order groups of a corpus.

    Odd-order groups do not contribute to the layers; they are instead
    checked against the odd-order type table.
    """
    feasible = feasible if feasible is not None else feasible_spectrum()
    contributions: dict[str, list[Contribution]] = {}
    odd_checked: list[str] = []
    odd_failures: list[str] = []
    for spec in specs:
        G = build_group(spec)
        dg = analyze(G, cache_dir=cache_dir)
        if parity(G.order) == 1:
            odd_checked.append(spec)
            if not verify_odd_order_types(G, dg):
                odd_failures.append(spec)
            continue
        contributions[spec] = digraph_contributions(dg)
    return assemble_empirical(contributions, odd_checked, odd_failures, feasible)
