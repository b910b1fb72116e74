"""Recursive-descent parser and pretty printer for the concrete syntax.

Terms::

    term    := IDENT | '0' | '1' | term "'" | term '&' term | term '+' term | '(' term ')'

with ``'`` binding tightest, then ``&``, then ``+`` (both left-associative).

Formulas::

    atom    := '|' term '|' CMP '|' term '|' | term 'sub' term | term '=' term
    formula := atom | '!' formula | formula OP formula | '(' formula ')'

where CMP is one of ``>= <= = > <`` and OP, loosest first, is ``<->``
(left), ``->`` (right), ``xor``, ``\\/`` and ``/\\`` (left).  Comparison
sugar is expanded while parsing, so the returned ASTs only contain ``Geq``
comparisons; propositional sugar is kept.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from ..errors import ParseError, UnknownLabel
from .ast import (
    EMPTY,
    FULL,
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
    Meet,
    Not,
    Or,
    SetTerm,
    Xor,
    card_eq,
    card_gt,
    card_leq,
    set_equal,
    subset,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op><->|->|/\\|\\/|>=|<=|[|&+'()!=<>01])
  | (?P<ident>[a-zA-Z][a-zA-Z0-9_]*)
    """,
    re.VERBOSE,
)

KEYWORDS = {"sub", "xor"}


@dataclass(frozen=True)
class Token:
    kind: str  # operator text, 'IDENT', a keyword, or 'EOF'
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text=text)
        if m.lastgroup == "op":
            tokens.append(Token(m.group(), m.group(), pos))
        elif m.lastgroup == "ident":
            word = m.group()
            tokens.append(Token(word if word in KEYWORDS else "IDENT", word, pos))
        pos = m.end()
    tokens.append(Token("EOF", "", len(text)))
    return tokens


class _Failure(Exception):
    def __init__(self, pos: int, expected: Iterable[str]):
        self.pos = pos
        self.expected = set(expected)


class _Parser:
    def __init__(self, text: str, labels: Iterable[str] | None):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.labels = None if labels is None else frozenset(labels)
        # furthest failure seen, for diagnostics after backtracking
        self.best: _Failure | None = None

    # -- token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, *expected: str):
        f = _Failure(self.tok.pos, expected)
        if self.best is None or f.pos > self.best.pos:
            self.best = f
        elif f.pos == self.best.pos:
            self.best.expected |= f.expected
        raise f

    def accept(self, kind: str) -> Token | None:
        if self.tok.kind == kind:
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, kind: str) -> Token:
        t = self.accept(kind)
        if t is None:
            self.fail(kind)
        return t

    def finish(self, node):
        if self.tok.kind != "EOF":
            self.fail("end of input")
        return node

    def run(self, rule):
        try:
            return self.finish(rule())
        except _Failure:
            best = self.best
            found = next(t for t in self.tokens if t.pos >= best.pos)
            what = "end of input" if found.kind == "EOF" else repr(found.text)
            raise ParseError(f"unexpected {what}", best.pos, best.expected, self.text) from None

    # -- terms

    def term(self) -> SetTerm:
        node = self.meet()
        while self.accept("+"):
            node = Join(node, self.meet())
        return node

    def meet(self) -> SetTerm:
        node = self.postfix()
        while self.accept("&"):
            node = Meet(node, self.postfix())
        return node

    def postfix(self) -> SetTerm:
        node = self.primary()
        while self.accept("'"):
            node = Comp(node)
        return node

    def primary(self) -> SetTerm:
        t = self.accept("IDENT")
        if t is not None:
            if self.labels is not None and t.text not in self.labels:
                raise UnknownLabel(t.text)
            return Label(t.text)
        if self.accept("0"):
            return EMPTY
        if self.accept("1"):
            return FULL
        if self.accept("("):
            node = self.term()
            self.expect(")")
            return node
        self.fail("label", "0", "1", "(")

    # -- formulas

    def formula(self) -> Formula:
        node = self.implication()
        while self.accept("<->"):
            node = Iff(node, self.implication())
        return node

    def implication(self) -> Formula:
        node = self.exclusive()
        if self.accept("->"):
            return Implies(node, self.implication())
        return node

    def exclusive(self) -> Formula:
        node = self.disjunction()
        while self.accept("xor"):
            node = Xor(node, self.disjunction())
        return node

    def disjunction(self) -> Formula:
        node = self.conjunction()
        while self.accept("\\/"):
            node = Or(node, self.conjunction())
        return node

    def conjunction(self) -> Formula:
        node = self.unary()
        while self.accept("/\\"):
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        if self.accept("!"):
            return Not(self.unary())
        if self.tok.kind == "(":
            save = self.i
            try:
                self.i += 1
                node = self.formula()
                self.expect(")")
                return node
            except _Failure:
                self.i = save
            return self.term_atom()
        if self.tok.kind == "|":
            return self.comparison()
        return self.term_atom()

    def comparison(self) -> Formula:
        self.expect("|")
        lhs = self.term()
        self.expect("|")
        op = self.tok.kind
        if op not in (">=", "<=", "=", ">", "<"):
            self.fail(">=", "<=", "=", ">", "<")
        self.i += 1
        self.expect("|")
        rhs = self.term()
        self.expect("|")
        if op == ">=":
            return Geq(lhs, rhs)
        if op == "<=":
            return card_leq(lhs, rhs)
        if op == "=":
            return card_eq(lhs, rhs)
        if op == ">":
            return card_gt(lhs, rhs)
        return card_gt(rhs, lhs)

    def term_atom(self) -> Formula:
        lhs = self.term()
        if self.accept("sub"):
            return subset(lhs, self.term())
        if self.accept("="):
            return set_equal(lhs, self.term())
        self.fail("sub", "=", "&", "+", "'")


def parse_term(text: str, labels: Iterable[str] | None = None) -> SetTerm:
    """Parse a set term.  With ``labels`` given, other names are rejected."""
    p = _Parser(text, labels)
    return p.run(p.term)


def parse_formula(text: str, labels: Iterable[str] | None = None) -> Formula:
    p = _Parser(text, labels)
    return p.run(p.formula)


# ------------------------------------------------------------- printing

_TERM_LEVEL = {Join: 1, Meet: 2}
_FORMULA_LEVEL = {Iff: 1, Implies: 2, Xor: 3, Or: 4, And: 5}
_FORMULA_OP = {Iff: "<->", Implies: "->", Xor: "xor", Or: "\\/", And: "/\\"}


def format_term(t: SetTerm, level: int = 0) -> str:
    if isinstance(t, Label):
        return t.name
    if isinstance(t, Empty):
        return "0"
    if isinstance(t, Full):
        return "1"
    if isinstance(t, Comp):
        return format_term(t.arg, 3) + "'"
    own = _TERM_LEVEL[type(t)]
    op = "+" if isinstance(t, Join) else "&"
    text = f"{format_term(t.left, own)} {op} {format_term(t.right, own + 1)}"
    return f"({text})" if own < level else text


def format_formula(f: Formula, level: int = 0) -> str:
    if isinstance(f, Geq):
        return f"|{format_term(f.lhs)}| >= |{format_term(f.rhs)}|"
    if isinstance(f, Not):
        return "!" + format_formula(f.arg, 6)
    own = _FORMULA_LEVEL[type(f)]
    if isinstance(f, Implies):
        left, right = own + 1, own
    else:
        left, right = own, own + 1
    text = f"{format_formula(f.left, left)} {_FORMULA_OP[type(f)]} {format_formula(f.right, right)}"
    return f"({text})" if own < level else text
