"""Type calculus for structure classes.

The type of a structure class is a triple (p, e, o): the parity of the class
representative's order, the nim-value of its even-size positions, and the
nim-value of its odd-size positions.  Types propagate bottom-up through mex
recursions that account for the moves staying inside a class (adding an
element of the representative subgroup flips the position's size parity but
not its class).

The extended type appends a smoothness component s in {0, 1, 2}: 2 for even
classes, 1 for odd classes with an even option at the same deficiency, else 0.
``emex_p`` computes an extended type from option etypes split by deficiency,
and ``is_feasible`` says whether such a split can occur in an even-order
group at all.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

TypeTriple = tuple[int, int, int]


class ExtendedType(NamedTuple):
    p: int
    e: int
    o: int
    s: int

    @property
    def triple(self) -> TypeTriple:
        return (self.p, self.e, self.o)


def mex(values: Iterable[int]) -> int:
    """Minimum excludant: smallest nonnegative integer missing from values."""
    present = set(values)
    m = 0
    while m in present:
        m += 1
    return m


def mex_p(p: int, option_types: Iterable[TypeTriple]) -> TypeTriple:
    """Type of a class of parity p given the types of its option classes.

    For an even class, the even positions only move out of the class, so
    their value is the mex of the options' odd-position values; the odd
    positions additionally see the class's own even positions.  For an odd
    class the roles are swapped.
    """
    types = set(option_types)
    evens = {t[1] for t in types}
    odds = {t[2] for t in types}
    if p == 0:
        e = mex(odds)
        return (0, e, mex(evens | {e}))
    o = mex(evens)
    return (1, mex(odds | {o}), o)


def emex_p(p: int, same_deficiency: Iterable[ExtendedType],
           lower_deficiency: Iterable[ExtendedType]) -> ExtendedType:
    """Extended type of a class of parity p from its options' extended types.

    ``same_deficiency`` holds the etypes of options at the class's own
    deficiency, ``lower_deficiency`` those one lower.  The smoothness of an
    odd class is 1 exactly when an even etype appears at the same deficiency;
    with no same-deficiency options at all it is 0.
    """
    a = frozenset(same_deficiency)
    b = frozenset(lower_deficiency)
    triples = {t[:3] for t in a | b}
    if p == 0:
        return ExtendedType(*mex_p(0, triples), 2)
    smooth = 1 - min((t[0] for t in a), default=1)
    return ExtendedType(*mex_p(1, triples), smooth)


def is_feasible(p: int, same_deficiency: Iterable[ExtendedType],
                lower_deficiency: Iterable[ExtendedType]) -> bool:
    """Whether an option split (A, B) by deficiency can occur for a parity-p
    class of an even-order group.

    Encodes the structural option restrictions: a lower-deficiency option
    always exists; even classes have only even options; every class has an
    even option; a smooth odd option at the same deficiency forces an even
    option there; a rough odd option one deficiency lower forbids one.
    """
    a = frozenset(same_deficiency)
    b = frozenset(lower_deficiency)
    if not b:
        return False
    parities = {t[0] for t in a} | {t[0] for t in b}
    if p == 0:
        return 1 not in parities
    if 0 not in parities:
        return False
    a_parities = {t[0] for t in a}
    if any(t[3] == 1 for t in a) and 0 not in a_parities:
        return False
    if any(t[3] == 0 for t in b) and 0 in a_parities:
        return False
    return True
