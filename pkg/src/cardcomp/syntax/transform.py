"""Abbreviation elimination and disjunctive normal form."""

from __future__ import annotations

from ..errors import CardCompError
from .ast import (
    And,
    Comp,
    Empty,
    Formula,
    Full,
    Geq,
    Iff,
    Implies,
    Join,
    Label,
    Literal,
    Meet,
    Not,
    Or,
    SetTerm,
    Xor,
    formula_labels,
)


def expand_term(t: SetTerm, anchor: Label | None) -> SetTerm:
    if isinstance(t, Label):
        return t
    if isinstance(t, Comp):
        return Comp(expand_term(t.arg, anchor))
    if isinstance(t, Meet):
        return Meet(expand_term(t.left, anchor), expand_term(t.right, anchor))
    if isinstance(t, Join):
        left = expand_term(t.left, anchor)
        right = expand_term(t.right, anchor)
        return Comp(Meet(Comp(left), Comp(right)))
    if anchor is None:
        return t
    empty = Meet(anchor, Comp(anchor))
    return empty if isinstance(t, Empty) else Comp(empty)


def expand_abbreviations(f: Formula, anchor: str | None = None) -> Formula:
    """Rewrite ``f`` using only ``Geq``/``Not``/``And`` over core terms.

    The constants ``0`` and ``1`` become ``x & x'`` and ``(x & x')'`` for the
    anchor label ``x`` (default: the smallest label occurring in ``f``).  A
    formula mentioning no label at all keeps its constants.
    """
    if anchor is None:
        names = formula_labels(f)
        anchor = min(names) if names else None
    label = Label(anchor) if anchor is not None else None
    return _expand(f, label)


def _expand(f: Formula, anchor: Label | None) -> Formula:
    if isinstance(f, Geq):
        return Geq(expand_term(f.lhs, anchor), expand_term(f.rhs, anchor))
    if isinstance(f, Not):
        return Not(_expand(f.arg, anchor))
    a = _expand(f.left, anchor)
    b = _expand(f.right, anchor)
    if isinstance(f, And):
        return And(a, b)
    if isinstance(f, Or):
        return Not(And(Not(a), Not(b)))
    if isinstance(f, Implies):
        return Not(And(a, Not(b)))
    if isinstance(f, Iff):
        return And(Not(And(a, Not(b))), Not(And(b, Not(a))))
    if isinstance(f, Xor):
        return And(Not(And(Not(a), Not(b))), Not(And(a, b)))
    raise CardCompError(f"not a formula: {f!r}")


def is_core(f: Formula) -> bool:
    if isinstance(f, Geq):
        return _core_term(f.lhs) and _core_term(f.rhs)
    if isinstance(f, Not):
        return is_core(f.arg)
    if isinstance(f, And):
        return is_core(f.left) and is_core(f.right)
    return False


def _core_term(t: SetTerm) -> bool:
    if isinstance(t, Label):
        return True
    if isinstance(t, Comp):
        return _core_term(t.arg)
    if isinstance(t, Meet):
        return _core_term(t.left) and _core_term(t.right)
    return False


# ------------------------------------------------------------------ DNF

Branch = tuple[Literal, ...]


def _merge(a: Branch, b: Branch) -> Branch:
    out = list(a)
    seen = set(a)
    for lit in b:
        if lit not in seen:
            seen.add(lit)
            out.append(lit)
    return tuple(out)


def _product(xs: list[Branch], ys: list[Branch]) -> list[Branch]:
    out = []
    for x in xs:
        for y in ys:
            out.append(_merge(x, y))
    return out


def _dnf(f: Formula, positive: bool) -> list[Branch]:
    if isinstance(f, Geq):
        return [(Literal(positive, f.lhs, f.rhs),)]
    if isinstance(f, Not):
        return _dnf(f.arg, not positive)
    a, b = f.left, f.right
    if isinstance(f, And):
        if positive:
            return _product(_dnf(a, True), _dnf(b, True))
        return _dnf(a, False) + _dnf(b, False)
    if isinstance(f, Or):
        if positive:
            return _dnf(a, True) + _dnf(b, True)
        return _product(_dnf(a, False), _dnf(b, False))
    if isinstance(f, Implies):
        if positive:
            return _dnf(a, False) + _dnf(b, True)
        return _product(_dnf(a, True), _dnf(b, False))
    if isinstance(f, (Iff, Xor)):
        same = isinstance(f, Iff) == positive
        if same:
            return (_product(_dnf(a, True), _dnf(b, True))
                    + _product(_dnf(a, False), _dnf(b, False)))
        return (_product(_dnf(a, True), _dnf(b, False))
                + _product(_dnf(a, False), _dnf(b, True)))
    raise CardCompError(f"not a formula: {f!r}")


def to_dnf(f: Formula) -> list[Branch]:
    """Disjunctive normal form as a list of literal conjunctions.

    Duplicate literals and duplicate branches are removed; the order is the
    left-to-right syntactic order of ``f``.  Branches holding a literal and
    its negation are kept so that the decider certifies them like any other.
    """
    out = []
    seen = set()
    for branch in _dnf(f, True):
        key = frozenset(branch)
        if key not in seen:
            seen.add(key)
            out.append(branch)
    return out
