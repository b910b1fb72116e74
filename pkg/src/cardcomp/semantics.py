"""Measures models, formula evaluation and a bounded brute-force oracle.

A measure assigns each atom a value in ``N u {inf}`` (``math.inf``); the
measure of an element is the sum over its atoms.  In a model with measures
``P``, ``E <= F`` holds iff ``mu(E) <= mu(F)`` for every ``mu`` in ``P``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import AtomSet, AtomSpace, atomize
from .errors import BoundsTooLarge, UnknownLabel
from .syntax.ast import And, Formula, Geq, Iff, Implies, Literal, Not, Or, Xor, conjunction, formula_labels
from .syntax.transform import to_dnf

INF = math.inf
FINITARY = "finitary"
INFINITARY = "infinitary"
KINDS = (FINITARY, INFINITARY)

Measure = tuple  # one value per atom: nonnegative int or math.inf


def measure_of(mu: Measure, s: AtomSet):
    total = 0
    for a in s.atoms():
        total += mu[a]
    return total


def _check_value(v):
    if v == INF:
        return INF
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ValueError(f"measure values must be nonnegative integers or inf, got {v!r}")
    return v


@dataclass(frozen=True)
class MeasuresModel:
    """A finitary or infinitary measures model over the free algebra of ``labels``.

    The carrier is the atom universe; a label denotes the atoms where its bit
    is set.  At least one measure must give the universe a positive value.
    """

    kind: str
    labels: tuple[str, ...]
    measures: tuple[Measure, ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        space = AtomSpace.of(self.labels)
        object.__setattr__(self, "labels", space.labels)
        measures = tuple(tuple(_check_value(v) for v in mu) for mu in self.measures)
        if not measures:
            raise ValueError("a measures model needs at least one measure")
        for mu in measures:
            if len(mu) != space.size:
                raise ValueError(f"measure has {len(mu)} values, expected {space.size}")
            if self.kind == FINITARY and INF in mu:
                raise ValueError("finitary models take no infinite values")
        if not any(sum(mu) >= 1 for mu in measures):
            raise ValueError("inadmissible model: every measure vanishes on the universe")
        object.__setattr__(self, "measures", measures)

    @property
    def space(self) -> AtomSpace:
        return AtomSpace(self.labels)

    @property
    def n_atoms(self) -> int:
        return 1 << len(self.labels)

    @property
    def valuation(self) -> dict[str, AtomSet]:
        space = self.space
        return {name: space.label_set(name) for name in self.labels}

    def leq(self, e: AtomSet, f: AtomSet) -> bool:
        return all(measure_of(mu, e) <= measure_of(mu, f) for mu in self.measures)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "labels": list(self.labels),
            "atoms": self.n_atoms,
            "valuation": {k: list(v.atoms()) for k, v in self.valuation.items()},
            "measures": [["inf" if v == INF else str(v) for v in mu] for mu in self.measures],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MeasuresModel":
        model = cls(
            data["kind"],
            tuple(data["labels"]),
            tuple(tuple(INF if v == "inf" else int(v) for v in mu) for mu in data["measures"]),
        )
        if int(data.get("atoms", model.n_atoms)) != model.n_atoms:
            raise ValueError("atom count does not match the labels")
        valuation = data.get("valuation")
        if valuation is not None:
            expect = {k: list(v.atoms()) for k, v in model.valuation.items()}
            if {k: sorted(v) for k, v in valuation.items()} != expect:
                raise ValueError("valuation is not the free valuation of the labels")
        return model


# ------------------------------------------------------------ evaluation


def eval_formula(m: MeasuresModel, f: Formula) -> bool:
    space = m.space
    return _eval(m, f, space)


def _eval(m, f, space) -> bool:
    if isinstance(f, Geq):
        s, t = atomize(f.lhs, space), atomize(f.rhs, space)
        return m.leq(t, s)
    if isinstance(f, Not):
        return not _eval(m, f.arg, space)
    a = _eval(m, f.left, space)
    if isinstance(f, And):
        return a and _eval(m, f.right, space)
    if isinstance(f, Or):
        return a or _eval(m, f.right, space)
    if isinstance(f, Implies):
        return (not a) or _eval(m, f.right, space)
    if isinstance(f, Iff):
        return a == _eval(m, f.right, space)
    if isinstance(f, Xor):
        return a != _eval(m, f.right, space)
    raise TypeError(f"not a formula: {f!r}")


def model_satisfies(m: MeasuresModel, gamma: Iterable[Formula | Literal]) -> bool:
    for phi in gamma:
        if isinstance(phi, Literal):
            phi = phi.to_formula()
        if not eval_formula(m, phi):
            return False
    return True


def eval_batch(values: np.ndarray, f: Formula, space: AtomSpace) -> np.ndarray:
    """Evaluate ``f`` in many models at once.

    ``values`` has shape ``(models, measures, atoms)`` with ``np.inf`` for
    infinite entries; all-zero measures may pad models with fewer measures
    (they satisfy every comparison).  Returns a boolean array over models.
    """
    cache: dict = {}

    def meas(s: AtomSet):
        if s.bits not in cache:
            mask = np.array([(s.bits >> a) & 1 for a in range(space.size)], dtype=bool)
            cache[s.bits] = np.where(mask, values, 0.0).sum(axis=-1)
        return cache[s.bits]

    def ev(g):
        if isinstance(g, Geq):
            return np.all(meas(atomize(g.lhs, space)) >= meas(atomize(g.rhs, space)), axis=-1)
        if isinstance(g, Not):
            return ~ev(g.arg)
        a, b = ev(g.left), ev(g.right)
        if isinstance(g, And):
            return a & b
        if isinstance(g, Or):
            return a | b
        if isinstance(g, Implies):
            return ~a | b
        if isinstance(g, Iff):
            return a == b
        return a != b

    return ev(f)


# ----------------------------------------------------------- random models


def random_model(labels: Sequence[str], kind: str = FINITARY, seed: int = 0, max_measures: int = 3,
                 max_value: int = 4, infinity_probability: float = 0.2) -> MeasuresModel:
    """Deterministic in ``seed``; inadmissible draws are resampled."""
    if max_measures < 1 or max_value < 1:
        raise ValueError("bounds must be positive")
    space = AtomSpace.of(labels)
    rng = random.Random(seed)
    p_inf = infinity_probability if kind == INFINITARY else 0.0
    while True:
        measures = []
        for _ in range(rng.randint(1, max_measures)):
            mu = tuple(INF if rng.random() < p_inf else rng.randint(0, max_value) for _ in range(space.size))
            measures.append(mu)
        if any(sum(mu) >= 1 for mu in measures):
            return MeasuresModel(kind, space.labels, tuple(measures))


# ---------------------------------------------------------- brute force


@dataclass(frozen=True)
class NotFoundWithinBounds:
    """No model within the bounds; this is not a proof of unsatisfiability."""

    max_measures: int
    max_value: int


DEFAULT_ORACLE_BUDGET = 2_000_000


def brute_force_sat(gamma: Formula | Sequence[Formula | Literal], kind: str = FINITARY,
                    max_measures: int = 3, max_value: int = 4, labels: Sequence[str] | None = None,
                    step_budget: int = DEFAULT_ORACLE_BUDGET) -> MeasuresModel | NotFoundWithinBounds:
    """Search all measure lists within the bounds for a model of ``gamma``.

    Single measures are ranked lexicographically (atom 0 most significant,
    values ``0..max_value`` then ``inf``).  Per DNF branch, the first model
    found uses the fewest measures and, among those, the lexicographically
    least tuple of measure ranks.  Branches are tried in DNF order.
    """
    if isinstance(gamma, (list, tuple)):
        gamma = conjunction(*(g.to_formula() if isinstance(g, Literal) else g for g in gamma))
    names = set(formula_labels(gamma))
    if labels is not None:
        extra = names - set(labels)
        if extra:
            raise UnknownLabel(sorted(extra)[0])
        names = set(labels)
    space = AtomSpace.of(names)
    choices = list(range(max_value + 1)) + ([INF] if kind == INFINITARY else [])
    total = len(choices) ** space.size
    if total > step_budget:
        raise BoundsTooLarge(f"{total} candidate measures exceed the oracle budget of {step_budget}")

    grid = np.array(list(itertools.product(choices, repeat=space.size)), dtype=float)
    grid = grid.reshape(total, space.size)
    cache: dict = {}

    def meas(s: AtomSet) -> np.ndarray:
        if s.bits not in cache:
            mask = np.array([(s.bits >> a) & 1 for a in range(space.size)], dtype=bool)
            cache[s.bits] = np.where(mask, grid, 0.0).sum(axis=1)
        return cache[s.bits]

    universe = meas(space.full)
    for branch in to_dnf(gamma):
        ok = np.ones(total, dtype=bool)
        negatives = []
        for lit in branch:
            x, y = atomize(lit.lhs, space), atomize(lit.rhs, space)
            if lit.positive:
                ok &= meas(x) >= meas(y)
            else:
                negatives.append(meas(x) < meas(y))
        idx = np.flatnonzero(ok)
        if idx.size == 0:
            continue
        # signature: which negatives a measure refutes, and admissibility
        sig_cols = [neg[idx] for neg in negatives] + [universe[idx] >= 1]
        sigs = np.stack(sig_cols, axis=1)
        reps: dict = {}
        for pos, row in enumerate(sigs):
            key = tuple(bool(v) for v in row)
            if key not in reps:
                reps[key] = int(idx[pos])
        items = sorted(reps.items(), key=lambda kv: kv[1])
        need = len(negatives) + 1
        found = None
        for k in range(1, max_measures + 1):
            # items are rank-sorted, so combinations come in lexicographic order
            for combo in itertools.combinations(items, k):
                if all(any(sig[j] for sig, _ in combo) for j in range(need)):
                    found = tuple(r for _, r in combo)
                    break
            if found is not None:
                break
        if found is not None:
            measures = tuple(tuple(INF if v == INF else int(v) for v in grid[r]) for r in found)
            return MeasuresModel(kind, space.labels, measures)
    return NotFoundWithinBounds(max_measures, max_value)


# ------------------------------------------------- symbolic ZF witnesses


@dataclass(frozen=True)
class SymbolicZfWitness:
    """Set-theoretic rendering of a measures model.

    Each measure ``mu_k`` gets a family ``A_mu<k>`` of pairwise disjoint
    amorphous (hence Dedekind-finite) sets; an element ``E`` is realised as
    the disjoint union of ``mu_k(E)`` copies of ``A_mu<k>``, with ``omega``
    copies for an infinite value.
    """

    model: MeasuresModel
    families: tuple[str, ...]
    expressions: dict
    dedekind_infinite: dict
    text: str

    def leq(self, e: AtomSet, f: AtomSet) -> bool:
        """``|E*| <= |F*|``, read off the copy counts family by family."""
        return self.model.leq(e, f)


def _copies(v, family: str) -> str:
    if v == INF:
        return f"ω × {family}"
    return f"{v} × {family}"


def symbolic_zf_witness(m: MeasuresModel) -> SymbolicZfWitness:
    families = tuple(f"A_mu{k + 1}" for k in range(len(m.measures)))
    expressions = {}
    infinite = {}
    for name, atoms in m.valuation.items():
        parts = []
        for fam, mu in zip(families, m.measures):
            v = measure_of(mu, atoms)
            if v:
                parts.append(_copies(v, fam))
        expressions[name] = " ⊔ ".join(parts) if parts else "∅"
        infinite[name] = any(measure_of(mu, atoms) == INF for mu in m.measures)
    lines = ["families: " + ", ".join(f"{fam} (amorphous)" for fam in families)]
    for name in m.labels:
        flag = "Dedekind-infinite" if infinite[name] else "Dedekind-finite"
        lines.append(f"{name}* = {expressions[name]}    [{flag}]")
    lines.append("for every pair of elements: |E*| <= |F*| iff mu(E) <= mu(F) for every measure mu")
    return SymbolicZfWitness(m, families, expressions, infinite, "\n".join(lines) + "\n")
