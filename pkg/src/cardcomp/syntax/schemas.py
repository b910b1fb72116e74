"""Generators for FC, GFC and CGFC axiom instances.

Balance of ``<s_1..s_k, e x l>`` against ``<t_1..t_k, f x l>`` is expressed
inside the language as the set equalities ``S_j = T_j`` for every overlap
count ``j = 0..k+l``, where ``S_j`` collects the points lying in exactly
``j`` members of the left sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from ..errors import MalformedTree
from .ast import (
    FULL,
    Comp,
    Formula,
    Full,
    Geq,
    Implies,
    Meet,
    SetTerm,
    card_leq,
    conjunction,
    set_equal,
    union,
)


def _meet(a: SetTerm, b: SetTerm) -> SetTerm:
    if isinstance(a, Full):
        return b
    if isinstance(b, Full):
        return a
    return Meet(a, b)


def exactly(terms: Sequence[SetTerm], j: int) -> SetTerm | None:
    """Term for the points in exactly ``j`` of ``terms`` (None if impossible)."""
    k = len(terms)
    if j < 0 or j > k:
        return None
    pieces = []
    for inside in combinations(range(k), j):
        piece: SetTerm = FULL
        for i, t in enumerate(terms):
            piece = _meet(piece, t if i in inside else Comp(t))
        pieces.append(piece)
    return union(*pieces)


def overlap_term(terms: Sequence[SetTerm], repeated: SetTerm, copies: int, j: int) -> SetTerm:
    """Points lying in exactly ``j`` members of ``terms + [repeated] * copies``."""
    pieces = []
    outside = exactly(terms, j)
    if outside is not None:
        pieces.append(_meet(outside, Comp(repeated)))
    inside = exactly(terms, j - copies)
    if inside is not None:
        pieces.append(_meet(inside, repeated))
    return union(*pieces)


def balance_conjuncts(s, e, t, f, copies: int) -> list[Formula]:
    k = len(s)
    return [
        set_equal(overlap_term(s, e, copies, j), overlap_term(t, f, copies, j))
        for j in range(k + copies + 1)
    ]


def _check_lengths(s, t, k=None):
    if len(s) != len(t):
        raise ValueError("premise sequences must have equal length")
    if k is not None and len(s) != k:
        raise ValueError(f"expected {k} premise terms per side, got {len(s)}")


def fc_schema(s: Sequence[SetTerm], e: SetTerm, t: Sequence[SetTerm], f: SetTerm) -> Formula:
    """``FC_n``: (balance and every ``|s_i| >= |t_i|``) implies ``|e| <= |f|``."""
    _check_lengths(s, t)
    if not s:
        raise ValueError("FC_n needs n >= 1")
    premises = [Geq(a, b) for a, b in zip(s, t)]
    return Implies(conjunction(*balance_conjuncts(s, e, t, f, 1), *premises), card_leq(e, f))


def gfc_schema(k: int, l: int, s: Sequence[SetTerm], e: SetTerm,
               t: Sequence[SetTerm], f: SetTerm) -> Formula:
    """``GFC_{k,l}``: balance implies (premises imply ``|e| <= |f|``)."""
    if k < 0 or l < 1:
        raise ValueError("GFC_{k,l} needs k >= 0 and l >= 1")
    _check_lengths(s, t, k)
    balance = conjunction(*balance_conjuncts(s, e, t, f, l))
    goal = card_leq(e, f)
    if k:
        goal = Implies(conjunction(*(Geq(a, b) for a, b in zip(s, t))), goal)
    return Implies(balance, goal)


@dataclass(frozen=True)
class FullBinaryTree:
    """Finite full binary tree given by its node addresses ('' is the root)."""

    nodes: tuple[str, ...]

    def __post_init__(self):
        nodes = set(self.nodes)
        if "" not in nodes:
            raise MalformedTree("tree has no root")
        for node in nodes:
            if set(node) - {"0", "1"}:
                raise MalformedTree(f"bad node address {node!r}")
            if node and node[:-1] not in nodes:
                raise MalformedTree(f"node {node!r} has no parent")
            if (node + "0" in nodes) != (node + "1" in nodes):
                raise MalformedTree(f"node {node!r} has exactly one child")
        object.__setattr__(self, "nodes", tuple(sorted(nodes, key=_preorder_key)))

    @classmethod
    def parse(cls, text: str) -> "FullBinaryTree":
        """Read bracket notation: ``*`` is a leaf, ``[XY]`` an inner node."""
        text = "".join(text.split())
        nodes: list[str] = []
        pos = 0

        def walk(addr: str):
            nonlocal pos
            if pos >= len(text):
                raise MalformedTree("unexpected end of tree text")
            ch = text[pos]
            pos += 1
            nodes.append(addr)
            if ch == "*":
                return
            if ch != "[":
                raise MalformedTree(f"unexpected {ch!r} in tree text")
            walk(addr + "0")
            if pos < len(text) and text[pos] == "]":
                raise MalformedTree(f"node {addr!r} has exactly one child")
            walk(addr + "1")
            if pos >= len(text) or text[pos] != "]":
                raise MalformedTree("expected ']' in tree text")
            pos += 1

        walk("")
        if pos != len(text):
            raise MalformedTree("trailing characters in tree text")
        return cls(tuple(nodes))

    @classmethod
    def single(cls) -> "FullBinaryTree":
        return cls(("",))

    def is_leaf(self, node: str) -> bool:
        return node + "0" not in self.nodes

    def render(self, node: str = "") -> str:
        if self.is_leaf(node):
            return "*"
        return "[" + self.render(node + "0") + self.render(node + "1") + "]"


def _preorder_key(addr: str):
    return [int(c) for c in addr]


def cgfc_schema(k: int, l: int, tree: FullBinaryTree | str, s: Sequence[SetTerm], e: SetTerm,
                t: Sequence[SetTerm], f: SetTerm,
                u: Mapping[str, SetTerm] | Iterable[SetTerm]) -> Formula:
    """``CGFC_{k,l,T}`` with one cover term ``u[node]`` per tree node.

    ``u`` is a mapping from node address to term, or a sequence aligned with
    the preorder listing of the nodes.
    """
    if isinstance(tree, str):
        tree = FullBinaryTree.parse(tree)
    if k < 0 or l < 1:
        raise ValueError("CGFC_{k,l,T} needs k >= 0 and l >= 1")
    _check_lengths(s, t, k)
    if not isinstance(u, Mapping):
        u = list(u)
        if len(u) != len(tree.nodes):
            raise MalformedTree(f"tree has {len(tree.nodes)} nodes but {len(u)} cover terms given")
        u = dict(zip(tree.nodes, u))
    missing = [n for n in tree.nodes if n not in u]
    if missing:
        raise MalformedTree(f"no cover term for nodes {missing}")
    parts = balance_conjuncts(s, e, t, f, l)
    parts += [Geq(a, b) for a, b in zip(s, t)]
    parts += [card_leq(a, u[""]) for a in s]
    for node in tree.nodes:
        if tree.is_leaf(node):
            parts.append(card_leq(u[node], f))
        else:
            parts.append(card_leq(u[node], union(u[node + "0"], u[node + "1"])))
    return Implies(conjunction(*parts), card_leq(e, f))
