"""The free finite Boolean algebra over a problem's labels.

With labels ``l_0 < l_1 < ... < l_{n-1}`` (lexicographic) the algebra has
``2**n`` atoms; bit ``i`` of an atom index says whether label ``i`` holds in
that minterm.  An element is an :class:`AtomSet`, stored as an int bitmask.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Callable, Iterable, Sequence

from .errors import DimensionMismatch, LimitExceeded, UnknownLabel
from .lp import Budget, Infeasible, LinearSystem, solve
from .syntax.ast import Comp, Empty, Full, Join, Label, Meet, SetTerm

MAX_LABELS = 16


@dataclass(frozen=True, order=True)
class AtomSet:
    """A set of atoms out of a universe of ``size`` atoms."""

    bits: int
    size: int

    @classmethod
    def empty(cls, size: int) -> "AtomSet":
        return cls(0, size)

    @classmethod
    def full(cls, size: int) -> "AtomSet":
        return cls((1 << size) - 1, size)

    @classmethod
    def of(cls, atoms: Iterable[int], size: int) -> "AtomSet":
        bits = 0
        for a in atoms:
            if not 0 <= a < size:
                raise DimensionMismatch(f"atom {a} outside universe of {size} atoms")
            bits |= 1 << a
        return cls(bits, size)

    def _same(self, other: "AtomSet"):
        if self.size != other.size:
            raise DimensionMismatch(f"atom universes differ: {self.size} vs {other.size}")

    def __and__(self, other: "AtomSet") -> "AtomSet":
        self._same(other)
        return AtomSet(self.bits & other.bits, self.size)

    def __or__(self, other: "AtomSet") -> "AtomSet":
        self._same(other)
        return AtomSet(self.bits | other.bits, self.size)

    def __sub__(self, other: "AtomSet") -> "AtomSet":
        self._same(other)
        return AtomSet(self.bits & ~other.bits, self.size)

    def complement(self) -> "AtomSet":
        return AtomSet(((1 << self.size) - 1) & ~self.bits, self.size)

    __invert__ = complement

    def issubset(self, other: "AtomSet") -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    def isdisjoint(self, other: "AtomSet") -> bool:
        self._same(other)
        return self.bits & other.bits == 0

    def atoms(self) -> tuple[int, ...]:
        out = []
        bits, a = self.bits, 0
        while bits:
            if bits & 1:
                out.append(a)
            bits >>= 1
            a += 1
        return tuple(out)

    def __iter__(self):
        return iter(self.atoms())

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __contains__(self, atom: int) -> bool:
        return bool(self.bits >> atom & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __repr__(self) -> str:
        return f"AtomSet({list(self.atoms())}, size={self.size})"


@lru_cache(maxsize=None)
def _label_masks(n: int) -> tuple[int, ...]:
    size = 1 << n
    return tuple(sum(1 << a for a in range(size) if a >> i & 1) for i in range(n))


@dataclass(frozen=True)
class AtomSpace:
    """Atom universe of a fixed, sorted label list."""

    labels: tuple[str, ...]
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        if list(labels) != sorted(set(labels)):
            raise ValueError("labels must be distinct and sorted")
        if len(labels) > MAX_LABELS:
            raise LimitExceeded(f"{len(labels)} labels exceed the cap of {MAX_LABELS}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "index", {name: i for i, name in enumerate(labels)})

    @classmethod
    def of(cls, labels: Iterable[str], max_labels: int = MAX_LABELS) -> "AtomSpace":
        labels = tuple(sorted(set(labels)))
        if len(labels) > max_labels:
            raise LimitExceeded(f"{len(labels)} labels exceed the cap of {max_labels}")
        return cls(labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        return 1 << len(self.labels)

    @property
    def full(self) -> AtomSet:
        return AtomSet.full(self.size)

    @property
    def empty(self) -> AtomSet:
        return AtomSet.empty(self.size)

    def label_set(self, name: str) -> AtomSet:
        try:
            i = self.index[name]
        except KeyError:
            raise UnknownLabel(name) from None
        return AtomSet(_label_masks(self.n)[i], self.size)

    def atom_name(self, atom: int) -> str:
        """Minterm of ``atom`` as a term in concrete syntax, e.g. ``a & b'``."""
        if not self.labels:
            return "1"
        return " & ".join(name if atom >> i & 1 else name + "'" for i, name in enumerate(self.labels))


def atomize(t: SetTerm, labels: AtomSpace | Sequence[str]) -> AtomSet:
    """Denotation of ``t`` in the free algebra: a Boolean homomorphism."""
    space = labels if isinstance(labels, AtomSpace) else AtomSpace.of(labels)
    return _atomize(t, space)


def _atomize(t: SetTerm, space: AtomSpace) -> AtomSet:
    if isinstance(t, Label):
        return space.label_set(t.name)
    if isinstance(t, Comp):
        return _atomize(t.arg, space).complement()
    if isinstance(t, Meet):
        return _atomize(t.left, space) & _atomize(t.right, space)
    if isinstance(t, Join):
        return _atomize(t.left, space) | _atomize(t.right, space)
    if isinstance(t, Empty):
        return space.empty
    if isinstance(t, Full):
        return space.full
    raise TypeError(f"not a set term: {t!r}")


def term_for(s: AtomSet, space: AtomSpace) -> SetTerm:
    """A term denoting ``s``: the union of its minterms (``0``/``1`` at the ends)."""
    from .syntax.ast import EMPTY, FULL, intersection, union

    if not s:
        return EMPTY
    if s.bits == space.full.bits:
        return FULL
    pieces = []
    for a in s.atoms():
        parts = [Label(name) if a >> i & 1 else Comp(Label(name)) for i, name in enumerate(space.labels)]
        pieces.append(intersection(*parts))
    return union(*pieces)


# ------------------------------------------------------- vectors, balance

AtomVector = tuple  # tuple of ints or Fractions, one entry per atom


def indicator(s: AtomSet) -> AtomVector:
    bits = s.bits
    return tuple((bits >> a) & 1 for a in range(s.size))


def counts(seq: Iterable[AtomSet], size: int) -> list[int]:
    out = [0] * size
    for s in seq:
        if s.size != size:
            raise DimensionMismatch(f"atom universes differ: {s.size} vs {size}")
        for a in s.atoms():
            out[a] += 1
    return out


def is_balanced(left: Sequence[AtomSet], right: Sequence[AtomSet]) -> bool:
    """Every atom lies under as many members of ``left`` as of ``right``.

    The two sequences need not have equal length; balance is about the
    per-atom multiplicities only.
    """
    if not left and not right:
        return True
    size = (left or right)[0].size
    return counts(left, size) == counts(right, size)


def vsub(u: AtomVector, v: AtomVector) -> AtomVector:
    if len(u) != len(v):
        raise DimensionMismatch("vector lengths differ")
    return tuple(a - b for a, b in zip(u, v))


@dataclass(frozen=True)
class Member:
    """``scale * target == sum(multipliers[i] * generators[i])``, integers, gcd 1."""

    multipliers: tuple[int, ...]
    scale: int

    def check(self, target: AtomVector, generators: Sequence[AtomVector]) -> bool:
        if self.scale < 1 or any(m < 0 for m in self.multipliers):
            return False
        total = [0] * len(target)
        for m, g in zip(self.multipliers, generators):
            if m:
                for a, x in enumerate(g):
                    total[a] += m * x
        return all(t == self.scale * x for t, x in zip(total, target))


@dataclass(frozen=True)
class NotMember:
    """Separating functional: ``y.g <= 0`` for every generator, ``y.target > 0``."""

    separator: tuple[Fraction, ...]

    def check(self, target: AtomVector, generators: Sequence[AtomVector]) -> bool:
        def dot(v):
            return sum((Fraction(y) * x for y, x in zip(self.separator, v) if x), Fraction(0))
        return all(dot(g) <= 0 for g in generators) and dot(target) > 0


def cone_member(target: AtomVector, generators: Sequence[AtomVector],
                budget: Budget | None = None) -> Member | NotMember:
    """Decide whether ``target`` is a nonnegative combination of ``generators``."""
    dim = len(target)
    for g in generators:
        if len(g) != dim:
            raise DimensionMismatch(f"generator of length {len(g)} in dimension {dim}")
    if not any(target):
        return Member((0,) * len(generators), 1)
    if not generators:
        return NotMember(tuple(Fraction(x) for x in target))
    system = LinearSystem(len(generators))
    for a in range(dim):
        system.eq([g[a] for g in generators], target[a])
    result = solve(system, budget)
    if isinstance(result, Infeasible):
        # rows are "G lam = t"; the alternative gives y with y.G <= 0, y.t > 0
        return NotMember(tuple(result.multipliers))
    lam = result.values
    scale = lcm(1, *(x.denominator for x in lam))
    ints = [int(x * scale) for x in lam]
    g = scale
    for m in ints:
        g = gcd(g, m)
    return Member(tuple(m // g for m in ints), scale // g)


# ----------------------------------------------------------------- ideals


@dataclass(frozen=True)
class IdealTop:
    """Principal ideal generated by ``top``, with the steps that built it.

    ``steps`` lists, in firing order, the premise indices whose right side was
    joined in because their left side already lay below the current top.
    Oracle-added atoms appear as ``("atom", a)``.
    """

    base: AtomSet
    top: AtomSet
    steps: tuple = ()

    def __contains__(self, b: AtomSet) -> bool:
        return b.issubset(self.top)

    def chain_for(self, target: AtomSet, premises: Sequence[tuple[AtomSet, AtomSet]]) -> tuple:
        """Shortest prefix of ``steps`` after which ``target`` lies below the top."""
        cur = self.base
        if target.issubset(cur):
            return ()
        for k, step in enumerate(self.steps):
            if isinstance(step, tuple):
                cur = cur | AtomSet.of([step[1]], cur.size)
            else:
                cur = cur | premises[step][1]
            if target.issubset(cur):
                return self.steps[:k + 1]
        raise ValueError("target is not inside the ideal")


def ideal_top(f: AtomSet, premises: Sequence[tuple[AtomSet, AtomSet]],
              derivable: Callable[[AtomSet, AtomSet], bool] | None = None) -> IdealTop:
    """Smallest ideal containing ``f`` closed downwards under the premises.

    ``premises[i] = (x, y)`` states ``|x| >= |y|``; whenever ``x`` is below the
    current top, ``y`` is joined in.  With ``derivable(b, c)`` (``b <= c``
    derivable) given, single atoms derivably below the top are joined too and
    both rules are iterated to a joint fixpoint.
    """
    top = f
    steps: list = []
    while True:
        changed = True
        while changed:
            changed = False
            for i, (x, y) in enumerate(premises):
                if x.issubset(top) and not y.issubset(top):
                    top = top | y
                    steps.append(i)
                    changed = True
        if derivable is None:
            break
        added = False
        for a in top.complement().atoms():
            if derivable(AtomSet.of([a], top.size), top):
                top = top | AtomSet.of([a], top.size)
                steps.append(("atom", a))
                added = True
        if not added:
            break
    return IdealTop(f, top, tuple(steps))
