"""Finite groups as validated Cayley tables, plus a small group-spec language.

A group of order n lives on the element indices 0..n-1 with 0 as the identity,
and ``table[a][b]`` is the index of the product a*b.  Groups are built either
directly from a table or from a spec string with the grammar

    Z<n> | D<n> | S<n> | A<n> | Q8 | Dic<n>
    <spec>x<spec>          direct product
    <atom>^<k>             repeated direct product
    perm:(a,b,...)(c,d)...;...   permutation generators in cycle notation
                                 (1-based points, generators separated by ';')

D<n> is the dihedral group of order 2n (rotations indexed first, then
reflections), Dic<n> the dicyclic group of order 4n.  Direct products index
elements lexicographically by component.  Permutation groups index elements in
breadth-first discovery order from the identity, right-multiplying by the
generators in listed order.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass

import numpy as np

DEFAULT_MAX_ORDER = 512


class GroupSpecError(ValueError):
    """Malformed group-spec string."""


class SizeLimitError(ValueError):
    """A requested object exceeds the configured size cap."""


def parity(m: int) -> int:
    """Parity of a nonnegative integer, m mod 2."""
    return m & 1


@dataclass(frozen=True, slots=True)
class ElementSet:
    """Subset of the elements 0..n-1 of a group, stored as a bitmask."""

    n: int
    mask: int = 0

    @classmethod
    def from_indices(cls, n: int, indices) -> "ElementSet":
        mask = 0
        for i in indices:
            if not 0 <= i < n:
                raise IndexError(f"element index {i} out of range for order {n}")
            mask |= 1 << i
        return cls(n, mask)

    @classmethod
    def empty(cls, n: int) -> "ElementSet":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "ElementSet":
        return cls(n, (1 << n) - 1)

    def __contains__(self, g: int) -> bool:
        return 0 <= g < self.n and bool(self.mask >> g & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self):
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def _same_group(self, other: "ElementSet") -> None:
        if self.n != other.n:
            raise ValueError("element sets belong to groups of different orders")

    def __or__(self, other: "ElementSet") -> "ElementSet":
        self._same_group(other)
        return ElementSet(self.n, self.mask | other.mask)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        self._same_group(other)
        return ElementSet(self.n, self.mask & other.mask)

    def issubset(self, other: "ElementSet") -> bool:
        self._same_group(other)
        return self.mask | other.mask == other.mask

    def indices(self) -> tuple[int, ...]:
        return tuple(self)

    def label(self) -> str:
        return "{" + ",".join(str(i) for i in self) + "}"

    def __str__(self) -> str:
        return self.label()


class Group:
    """Finite group on element indices 0..order-1 with 0 as the identity.

    The Cayley table is validated exhaustively at construction: identity at
    index 0, Latin-square rows and columns, associativity, and two-sided
    inverses.  Instances are immutable after construction and safe to share.
    """

    __slots__ = ("name", "order", "table", "element_labels", "_content_hash")

    def __init__(self, name: str, table, element_labels=None,
                 max_order: int = DEFAULT_MAX_ORDER):
        arr = np.ascontiguousarray(np.asarray(table, dtype=np.int64))
        if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[0] != arr.shape[1]:
            raise ValueError("Cayley table must be a nonempty square matrix")
        n = arr.shape[0]
        if n > max_order:
            raise SizeLimitError(f"group order {n} exceeds the cap {max_order}")
        _validate_table(arr)
        if element_labels is not None and len(element_labels) != n:
            raise ValueError("label count differs from group order")
        arr.setflags(write=False)
        self.name = name
        self.order = n
        self.table = arr
        self.element_labels = list(element_labels) if element_labels is not None else None
        self._content_hash = None

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def elements(self) -> range:
        return range(self.order)

    def label(self, g: int) -> str:
        if self.element_labels is not None:
            return self.element_labels[g]
        return str(g)

    @property
    def content_hash(self) -> str:
        """SHA-256 of the order and Cayley table, used as a cache key."""
        if self._content_hash is None:
            h = hashlib.sha256()
            h.update(str(self.order).encode())
            h.update(b":")
            h.update(self.table.tobytes())
            self._content_hash = h.hexdigest()
        return self._content_hash

    def __repr__(self) -> str:
        return f"Group({self.name!r}, order={self.order})"


def _validate_table(arr: np.ndarray) -> None:
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise ValueError("table entries must be element indices 0..n-1")
    ref = np.arange(n)
    if not np.array_equal(arr[0], ref) or not np.array_equal(arr[:, 0], ref):
        raise ValueError("element 0 is not a two-sided identity")
    if not (np.sort(arr, axis=1) == ref).all():
        raise ValueError("some row is not a permutation of the elements")
    if not (np.sort(arr, axis=0) == ref[:, None]).all():
        raise ValueError("some column is not a permutation of the elements")
    for a in range(n):
        # (a*b)*c == a*(b*c) for this a and all b, c
        if not np.array_equal(arr[arr[a]], arr[a][arr]):
            raise ValueError(f"multiplication is not associative (element {a})")
    right_inv = np.argmax(arr == 0, axis=1)
    if (arr[right_inv, ref] != 0).any():
        raise ValueError("some element lacks a two-sided inverse")


def _largest_proper_divisor(n: int) -> int:
    for d in range(2, n + 1):
        if n % d == 0:
            return n // d
    return 0


def closure_mask(table: np.ndarray, seed_mask: int) -> int:
    """Bitmask of the subgroup generated by the elements of ``seed_mask``.

    Always contains the identity.  Once the partial closure outgrows the
    largest proper divisor of n it must be the whole group (Lagrange), which
    short-circuits the expensive cases.
    """
    n = table.shape[0]
    full = (1 << n) - 1
    member = np.zeros(n, dtype=bool)
    member[0] = True
    m = seed_mask
    while m:
        low = m & -m
        member[low.bit_length() - 1] = True
        m ^= low
    cutoff = _largest_proper_divisor(n)
    count = int(member.sum())
    if count > cutoff:
        return full
    while True:
        idx = np.flatnonzero(member)
        member[table[np.ix_(idx, idx)].ravel()] = True
        new = int(member.sum())
        if new > cutoff:
            return full
        if new == count:
            break
        count = new
    out = 0
    for i in np.flatnonzero(member):
        out |= 1 << int(i)
    return out


def generated_subgroup(G: Group, S: ElementSet) -> ElementSet:
    """Smallest subgroup of G containing S (always includes the identity)."""
    if S.n != G.order:
        raise ValueError("element set does not match the group order")
    return ElementSet(G.order, closure_mask(G.table, S.mask))


def element_order(G: Group, g: int) -> int:
    """Smallest k >= 1 with g^k equal to the identity."""
    if not 0 <= g < G.order:
        raise IndexError(f"element index {g} out of range")
    k, x = 1, g
    while x != 0:
        x = int(G.table[x, g])
        k += 1
    return k


# ----------------------------------------------------------------------------
# constructors for the named families


def cyclic_group(n: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    if n < 1:
        raise GroupSpecError("cyclic group order must be positive")
    i = np.arange(n)
    table = (i[:, None] + i[None, :]) % n
    return Group(f"Z{n}", table, [str(k) for k in range(n)], max_order=max_order)


def dihedral_group(n: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Dihedral group of order 2n, rotations indexed 0..n-1, reflections n..2n-1."""
    if n < 1:
        raise GroupSpecError("dihedral parameter must be positive")
    i = np.arange(n)
    s = (i[:, None] + i[None, :]) % n
    d = (i[:, None] - i[None, :]) % n
    table = np.block([[s, s + n], [d + n, d]])
    labels = [f"r{k}" for k in range(n)] + [f"r{k}s" for k in range(n)]
    return Group(f"D{n}", table, labels, max_order=max_order)


def dicyclic_group(n: int, name: str | None = None,
                   max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Dicyclic group of order 4n: a of order 2n, b^2 = a^n, b a b^-1 = a^-1."""
    if n < 1:
        raise GroupSpecError("dicyclic parameter must be positive")
    m = 2 * n
    i = np.arange(m)
    s = (i[:, None] + i[None, :]) % m
    d = (i[:, None] - i[None, :]) % m
    table = np.block([[s, s + m], [d + m, (d + n) % m]])
    labels = [f"a{k}" for k in range(m)] + [f"a{k}b" for k in range(m)]
    return Group(name or f"Dic{n}", table, labels, max_order=max_order)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # product p*q acts by "apply q, then p"
    return tuple(p[x] for x in q)


def _cycle_label(p: tuple[int, ...]) -> str:
    n = len(p)
    seen = [False] * n
    parts = []
    for i in range(n):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        parts.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(parts) or "e"


def _perm_closure(degree: int, generators: list[tuple[int, ...]],
                  max_order: int) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """Close the generators under composition, breadth-first from the identity."""
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    head = 0
    while head < len(elements):
        x = elements[head]
        head += 1
        for g in generators:
            y = _compose(x, g)
            if y not in index:
                if len(elements) >= max_order:
                    raise SizeLimitError(
                        f"permutation group exceeds the cap {max_order}")
                index[y] = len(elements)
                elements.append(y)
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for a, ea in enumerate(elements):
        for b, eb in enumerate(elements):
            table[a, b] = index[_compose(ea, eb)]
    return elements, table


def permutation_group(generators: list[tuple[int, ...]], name: str,
                      degree: int | None = None,
                      max_order: int = DEFAULT_MAX_ORDER) -> Group:
    deg = degree if degree is not None else max((len(g) for g in generators), default=1)
    gens = [tuple(g) + tuple(range(len(g), deg)) for g in generators]
    elements, table = _perm_closure(deg, gens, max_order)
    return Group(name, table, [_cycle_label(p) for p in elements], max_order=max_order)


def _cycles_to_perm(cycles: list[list[int]], degree: int) -> tuple[int, ...]:
    # cycles are 1-based and applied left to right
    perm = list(range(degree))
    for pts in cycles:
        mapping = {pts[i] - 1: pts[(i + 1) % len(pts)] - 1 for i in range(len(pts))}
        perm = [mapping.get(v, v) for v in perm]
    return tuple(perm)


def symmetric_group(n: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    if n < 1:
        raise GroupSpecError("symmetric group degree must be positive")
    if n == 1:
        return Group("S1", [[0]], ["e"], max_order=max_order)
    cycles = [[[1, 2]]]
    if n >= 3:
        cycles.append([list(range(1, n + 1))])
    gens = [_cycles_to_perm(c, n) for c in cycles]
    return permutation_group(gens, f"S{n}", degree=n, max_order=max_order)


def alternating_group(n: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    if n < 1:
        raise GroupSpecError("alternating group degree must be positive")
    if n <= 2:
        return Group(f"A{n}", [[0]], ["e"], max_order=max_order)
    cycles = [[[1, 2, 3]]]
    if n >= 4:
        if n % 2 == 1:
            cycles.append([list(range(1, n + 1))])
        else:
            cycles.append([list(range(2, n + 1))])
    gens = [_cycles_to_perm(c, n) for c in cycles]
    return permutation_group(gens, f"A{n}", degree=n, max_order=max_order)


def direct_product(factors: list[Group], name: str,
                   max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Direct product with lexicographic component indexing."""
    if not factors:
        raise GroupSpecError("empty product")
    orders = [f.order for f in factors]
    n = 1
    for o in orders:
        n *= o
    if n > max_order:
        raise SizeLimitError(f"product order {n} exceeds the cap {max_order}")
    coords = np.array(np.unravel_index(np.arange(n), orders))
    comps = [f.table[np.ix_(coords[i], coords[i])] for i, f in enumerate(factors)]
    table = np.ravel_multi_index(comps, orders)
    labels = [
        "(" + ",".join(factors[i].label(int(coords[i, x])) for i in range(len(factors))) + ")"
        for x in range(n)
    ]
    return Group(name, table, labels, max_order=max_order)


# ----------------------------------------------------------------------------
# spec-string parsing

_ATOM_RE = re.compile(r"(Dic|Z|D|S|A)(\d+)")
_POWER_RE = re.compile(r"(.+)\^(\d+)")


def _atom(text: str, max_order: int) -> Group:
    if text == "Q8":
        return dicyclic_group(2, name="Q8", max_order=max_order)
    m = _ATOM_RE.fullmatch(text)
    if not m:
        raise GroupSpecError(f"unrecognized group spec atom {text!r}")
    family, num = m.group(1), int(m.group(2))
    if num < 1:
        raise GroupSpecError(f"parameter in {text!r} must be positive")
    if family == "Z":
        return cyclic_group(num, max_order)
    if family == "D":
        return dihedral_group(num, max_order)
    if family == "S":
        return symmetric_group(num, max_order)
    if family == "A":
        return alternating_group(num, max_order)
    return dicyclic_group(num, max_order=max_order)


def _parse_perm_spec(body: str, name: str, max_order: int) -> Group:
    gen_texts = body.split(";")
    all_cycles: list[list[list[int]]] = []
    degree = 0
    for text in gen_texts:
        text = text.strip()
        if not text or not re.fullmatch(r"(\([^()]*\))+", text):
            raise GroupSpecError(f"malformed permutation generator {text!r}")
        cycles = []
        for inner in re.findall(r"\(([^()]*)\)", text):
            try:
                pts = [int(tok) for tok in inner.split(",")]
            except ValueError:
                raise GroupSpecError(f"malformed cycle ({inner})") from None
            if not pts or min(pts) < 1:
                raise GroupSpecError(f"cycle points must be positive integers: ({inner})")
            if len(set(pts)) != len(pts):
                raise GroupSpecError(f"repeated point in cycle ({inner})")
            degree = max(degree, max(pts))
            cycles.append(pts)
        all_cycles.append(cycles)
    gens = [_cycles_to_perm(c, degree) for c in all_cycles]
    return permutation_group(gens, name, degree=degree, max_order=max_order)


def build_group(spec: str, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Construct a group from a spec string (grammar in the module docstring)."""
    s = spec.strip()
    if not s:
        raise GroupSpecError("empty group spec")
    if s.startswith("perm:"):
        return _parse_perm_spec(s[len("perm:"):], s, max_order)
    factors: list[Group] = []
    for part in s.split("x"):
        if not part:
            raise GroupSpecError(f"empty factor in {spec!r}")
        m = _POWER_RE.fullmatch(part)
        if m:
            base_text, k = m.group(1), int(m.group(2))
            if k < 1:
                raise GroupSpecError(f"power in {part!r} must be at least 1")
        else:
            base_text, k = part, 1
        base = _atom(base_text, max_order)
        factors.extend([base] * k)
    if len(factors) == 1:
        g = factors[0]
        g.name = s
        return g
    return direct_product(factors, s, max_order=max_order)
