"""Set terms and formulas of the cardinality-comparison language.

Core constructors are ``Label``, ``Comp`` and ``Meet`` for terms and
``Geq``, ``Not`` and ``And`` for formulas.  Everything else (``Join``, the
constants, ``Or``/``Implies``/``Iff``/``Xor``) is sugar that
:func:`cardcomp.syntax.expand_abbreviations` eliminates.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

LABEL_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")
RESERVED = frozenset({"sub", "xor"})


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Label:
    name: str

    def __post_init__(self):
        if not LABEL_RE.match(self.name) or self.name in RESERVED:
            raise ValueError(f"invalid set label {self.name!r}")


@dataclass(frozen=True)
class Comp:
    arg: "SetTerm"


@dataclass(frozen=True)
class Meet:
    left: "SetTerm"
    right: "SetTerm"


@dataclass(frozen=True)
class Join:
    left: "SetTerm"
    right: "SetTerm"


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Full:
    pass


SetTerm = Union[Label, Comp, Meet, Join, Empty, Full]

EMPTY = Empty()
FULL = Full()


# ------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Geq:
    """``|lhs| >= |rhs|``."""

    lhs: SetTerm
    rhs: SetTerm


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Xor:
    left: "Formula"
    right: "Formula"


Formula = Union[Geq, Not, And, Or, Implies, Iff, Xor]

TERM_TYPES = (Label, Comp, Meet, Join, Empty, Full)
FORMULA_TYPES = (Geq, Not, And, Or, Implies, Iff, Xor)
BINARY_CONNECTIVES = (And, Or, Implies, Iff, Xor)


@dataclass(frozen=True)
class Literal:
    """``|lhs| >= |rhs|`` when ``positive``, its negation otherwise."""

    positive: bool
    lhs: SetTerm
    rhs: SetTerm

    def negated(self) -> "Literal":
        return Literal(not self.positive, self.lhs, self.rhs)

    def to_formula(self) -> Formula:
        atom = Geq(self.lhs, self.rhs)
        return atom if self.positive else Not(atom)


# ---------------------------------------------------------- helpers


def union(*terms: SetTerm) -> SetTerm:
    """Left-nested join of ``terms``; the empty union is ``EMPTY``."""
    if not terms:
        return EMPTY
    out = terms[0]
    for t in terms[1:]:
        out = Join(out, t)
    return out


def intersection(*terms: SetTerm) -> SetTerm:
    if not terms:
        return FULL
    out = terms[0]
    for t in terms[1:]:
        out = Meet(out, t)
    return out


def conjunction(*formulas: Formula) -> Formula:
    """Left-nested conjunction; the empty conjunction is ``|0| >= |0|``."""
    if not formulas:
        return Geq(EMPTY, EMPTY)
    out = formulas[0]
    for f in formulas[1:]:
        out = And(out, f)
    return out


def subset(t: SetTerm, s: SetTerm) -> Formula:
    """``t sub s`` as ``|0| >= |t & s'|``."""
    return Geq(EMPTY, Meet(t, Comp(s)))


def set_equal(t: SetTerm, s: SetTerm) -> Formula:
    return And(subset(t, s), subset(s, t))


def card_leq(s: SetTerm, t: SetTerm) -> Formula:
    return Geq(t, s)


def card_eq(s: SetTerm, t: SetTerm) -> Formula:
    return And(Geq(s, t), Geq(t, s))


def card_gt(s: SetTerm, t: SetTerm) -> Formula:
    return Not(Geq(t, s))


def iter_terms(f: Formula) -> Iterator[SetTerm]:
    """Every term argument of a comparison in ``f``, left to right."""
    if isinstance(f, Geq):
        yield f.lhs
        yield f.rhs
    elif isinstance(f, Not):
        yield from iter_terms(f.arg)
    else:
        yield from iter_terms(f.left)
        yield from iter_terms(f.right)


def term_labels(t: SetTerm) -> set[str]:
    if isinstance(t, Label):
        return {t.name}
    if isinstance(t, Comp):
        return term_labels(t.arg)
    if isinstance(t, (Meet, Join)):
        return term_labels(t.left) | term_labels(t.right)
    return set()


def formula_labels(f: Formula) -> set[str]:
    out: set[str] = set()
    for t in iter_terms(f):
        out |= term_labels(t)
    return out
