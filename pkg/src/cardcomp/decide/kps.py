"""Single-measure representation of total preorders, and order extension."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from ..algebra import AtomSet, Member, NotMember, cone_member, ideal_top, indicator, is_balanced, vsub
from ..errors import ConditionsViolated, SeedDerivable
from ..lp import Budget, Infeasible, LinearSystem, integerize, solve
from .certificate import Logic


def subsets(universe: AtomSet) -> list[AtomSet]:
    """Every element below ``universe``, ordered by bitmask."""
    atoms = universe.atoms()
    out = []
    for mask in range(1 << len(atoms)):
        bits = 0
        for i, a in enumerate(atoms):
            if mask >> i & 1:
                bits |= 1 << a
        out.append(AtomSet(bits, universe.size))
    return sorted(out)


@dataclass(frozen=True)
class BalancedWitness:
    """Balanced sequences showing a relation cannot be represented.

    Each ``left[i]`` is related ``>=`` to ``right[i]`` (strictly for indices in
    ``strict``), ``padding`` atoms stand for positivity, and the two sides
    are balanced; representability would force ``0 > 0``.
    """

    left: tuple[tuple[AtomSet, int], ...]
    right: tuple[tuple[AtomSet, int], ...]
    padding: tuple[tuple[int, int], ...]
    strict: tuple[int, ...]

    def check(self) -> bool:
        if not self.left:
            return False
        size = self.left[0][0].size
        lhs = [s for s, n in self.left for _ in range(n)]
        lhs += [AtomSet.of([a], size) for a, m in self.padding for _ in range(m)]
        rhs = [s for s, n in self.right for _ in range(n)]
        return bool(self.strict) and is_balanced(lhs, rhs)


def kps_measure(relation: Iterable[tuple[AtomSet, AtomSet]], universe: AtomSet | None = None) -> tuple:
    """Integer measure ``mu`` with ``a >= b`` iff ``mu(a) >= mu(b)``.

    ``relation`` lists every pair ``(a, b)`` with ``a >= b`` among the
    elements below ``universe`` (default: the full algebra).  The measure is
    indexed by atom and vanishes outside ``universe``.
    """
    rel = set((a, b) for a, b in relation)
    if universe is None:
        if not rel:
            raise ConditionsViolated("empty relation: universe unknown")
        universe = AtomSet.full(next(iter(rel))[0].size)
    elems = subsets(universe)
    elem_set = set(elems)
    for a, b in rel:
        if a not in elem_set or b not in elem_set:
            raise ConditionsViolated("relation mentions an element outside the algebra", (a, b))
    empty = AtomSet.empty(universe.size)
    if (empty, universe) in rel:
        raise ConditionsViolated("non-triviality fails: 0 >= 1", (empty, universe))
    for a in elems:
        if (a, empty) not in rel:
            raise ConditionsViolated("positivity fails", (a, empty))
    for i, a in enumerate(elems):
        for b in elems[i:]:
            if (a, b) not in rel and (b, a) not in rel:
                raise ConditionsViolated("totality fails", (a, b))
    above: dict = {a: [] for a in elems}
    for a, b in rel:
        above[b].append(a)
    for a, b in rel:
        for c in above[a]:
            if (c, b) not in rel:
                raise ConditionsViolated("transitivity fails", (c, a, b))

    atoms = universe.atoms()

    def row(s: AtomSet, t: AtomSet):
        return [((s.bits >> a) & 1) - ((t.bits >> a) & 1) for a in atoms]

    system = LinearSystem(len(atoms))
    rows = []
    for a in elems:
        for b in elems:
            if a == b:
                continue
            if (a, b) in rel:
                system.ge(row(a, b))
                rows.append((a, b, False))
            else:
                system.gt(row(b, a))
                rows.append((b, a, True))
    res = solve(system)
    if isinstance(res, Infeasible):
        y = integerize(res.multipliers)
        left, right, strict = [], [], []
        comb = [0] * len(atoms)
        for (s, t, is_strict), n in zip(rows, y):
            if n:
                if is_strict:
                    strict.append(len(left))
                left.append((s, n))
                right.append((t, n))
                for i, v in enumerate(row(s, t)):
                    comb[i] += n * v
        padding = tuple((a, -v) for a, v in zip(atoms, comb) if v)
        witness = BalancedWitness(tuple(left), tuple(right), padding, tuple(strict))
        raise ConditionsViolated("cancellation fails: balanced sequences with a strict step", witness)
    vals = integerize(res.values)
    g = 0
    for v in vals:
        g = gcd(g, v)
    mu = [0] * universe.size
    for a, v in zip(atoms, vals):
        mu[a] = v // g
    return tuple(mu)


@dataclass(frozen=True)
class TotalOrder:
    """A total preorder on the elements below ``universe``."""

    universe: AtomSet
    pairs: frozenset
    facts: tuple[tuple[AtomSet, AtomSet], ...]

    def geq(self, a: AtomSet, b: AtomSet) -> bool:
        return (a, b) in self.pairs


class _Cone:
    """GFC closure of a growing fact list inside one ideal."""

    def __init__(self, universe: AtomSet, facts, budget):
        self.universe = universe
        self.atoms = universe.atoms()
        self.facts = list(facts)
        self.budget = budget
        self.witnesses: list[tuple] = []  # measures satisfying every fact

    def _value(self, mu, s: AtomSet):
        return sum(mu[a] for a in s.atoms())

    def geq(self, c: AtomSet, d: AtomSet) -> bool:
        """Is ``c >= d`` derivable?  Refutations are cached as measures."""
        if d.issubset(c):
            return True
        for mu in self.witnesses:
            if self._value(mu, c) < self._value(mu, d):
                return False
        size = self.universe.size
        gens = [vsub(indicator(x), indicator(y)) for x, y in self.facts]
        gens += [tuple(int(i == a) for i in range(size)) for a in self.atoms]
        res = cone_member(vsub(indicator(c), indicator(d)), gens, self.budget)
        if isinstance(res, Member):
            return True
        assert isinstance(res, NotMember)
        # the negated separator is a measure satisfying every fact with mu(c) < mu(d)
        # (atoms outside the ideal carry no positivity generator; zero them)
        vals = integerize([-v if i in self.universe else 0 for i, v in enumerate(res.separator)])
        self.witnesses.append(tuple(vals))
        return False

    def add(self, c: AtomSet, d: AtomSet):
        self.facts.append((c, d))
        self.witnesses = [mu for mu in self.witnesses if self._value(mu, c) >= self._value(mu, d)]


def extend_to_total_order(premises: Sequence[tuple[AtomSet, AtomSet]], a: AtomSet, b: AtomSet,
                          logic: Logic | str = Logic.CARD, budget: Budget | None = None) -> TotalOrder:
    """Extend the premises ``x >= y`` to a total GFC-closed preorder with ``a`` not ``>= b``.

    Under Card the order lives on the ideal generated by ``a``, using the
    premises whose left side lies in it; under Ded/Fin on the whole algebra.
    Pairs are visited in bitmask order; an incomparable pair ``(c, d)`` gets
    ``c >= d`` unless that would make ``a >= b`` derivable, else ``d >= c``.
    """
    logic = Logic.parse(logic)
    if logic is Logic.CARD:
        universe = ideal_top(a, list(premises)).top
    else:
        universe = AtomSet.full(a.size)
    if not b.issubset(universe):
        raise ValueError("seed element b lies outside the ideal of a")
    facts = [(x, y) for x, y in premises if x.issubset(universe)]
    cone = _Cone(universe, facts, budget)
    if cone.geq(a, b):
        raise SeedDerivable("a >= b is already derivable")
    elems = subsets(universe)
    for i, c in enumerate(elems):
        for d in elems[i + 1:]:
            if cone.geq(c, d) or cone.geq(d, c):
                continue
            trial = _Cone(universe, cone.facts + [(c, d)], budget)
            trial.witnesses = [mu for mu in cone.witnesses
                               if cone._value(mu, c) >= cone._value(mu, d)]
            if trial.geq(a, b):
                cone.add(d, c)
            else:
                cone.add(c, d)
                cone.witnesses = trial.witnesses
    pairs = frozenset((c, d) for c in elems for d in elems if cone.geq(c, d))
    return TotalOrder(universe, pairs, tuple(cone.facts))
