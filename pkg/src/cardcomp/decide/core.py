"""Satisfiability and entailment for FinCardComp, DedCardComp and CardComp.

Per DNF branch, with positive literals as premises:

* Ded: ``|e| <= |f|`` is derivable iff ``chi_f - chi_e`` lies in the cone of
  premise differences and atom indicators.  A negative literal is refuted
  iff its converse is derivable; otherwise a strict LP gives a finitary
  measure refuting it.
* Card: derivations of ``|e| <= |f|`` may only use premises whose left side
  lies in the ideal generated by ``f``.  Witness measures are finite inside
  that ideal and infinite outside it.
* Fin: one LP over a single measure; its dual becomes an FC certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from ..algebra import (
    AtomSet,
    AtomSpace,
    IdealTop,
    Member,
    cone_member,
    ideal_top,
    indicator,
    vsub,
)
from ..errors import LimitExceeded
from ..lp import Budget, Infeasible, LinearSystem, integerize, solve
from ..semantics import INF, MeasuresModel, measure_of, model_satisfies
from ..syntax.ast import Formula, Literal, Not, conjunction, formula_labels
from ..syntax.transform import to_dnf
from .certificate import (
    NONTRIVIALITY,
    AtomLiteral,
    CancellationCertificate,
    Logic,
    atomize_branch,
    verify_certificate,
)


def _unit(a: int, size: int) -> tuple:
    return tuple(int(i == a) for i in range(size))


# ---------------------------------------------------------------- closure


class Closure:
    """Derivability oracle for one branch's premises under ``logic``.

    For Card every ideal top is the premise-propagation fixpoint of
    :func:`cardcomp.algebra.ideal_top`.  With ``refine=True`` the ideal is
    additionally closed under derivable single-atom facts, iterating both
    steps to a joint fixpoint.
    """

    def __init__(self, literals: Sequence[AtomLiteral], logic: Logic | str, space: AtomSpace,
                 budget: Budget | None = None, refine: bool = False):
        self.logic = Logic.parse(logic)
        self.space = space
        self.literals = tuple(literals)
        self.budget = budget
        self.refine = refine
        self.positive = [i for i, lit in enumerate(self.literals) if lit.positive]
        self.premises = [(self.literals[i].x, self.literals[i].y) for i in self.positive]
        self._tops: dict[int, IdealTop] = {}

    def top(self, f: AtomSet) -> IdealTop:
        if self.logic is not Logic.CARD:
            return IdealTop(f, self.space.full, ())
        if f.bits not in self._tops:
            oracle = None
            if self.refine:
                def oracle(b: AtomSet, c: AtomSet) -> bool:
                    return self._cone(b, c, c, None) is not None
            self._tops[f.bits] = ideal_top(f, self.premises, oracle)
        return self._tops[f.bits]

    def _cone(self, e: AtomSet, f: AtomSet, top: AtomSet, ideal: IdealTop | None):
        active = [k for k, (x, _) in enumerate(self.premises) if x.issubset(top)]
        atoms = top.atoms()
        size = self.space.size
        gens = [vsub(indicator(self.premises[k][0]), indicator(self.premises[k][1])) for k in active]
        gens += [_unit(a, size) for a in atoms]
        target = vsub(indicator(f), indicator(e))
        res = cone_member(target, gens, self.budget)
        if not isinstance(res, Member):
            return None
        mult = res.multipliers
        premises = tuple((self.positive[k], m) for k, m in zip(active, mult) if m)
        positivity = tuple((a, m) for a, m in zip(atoms, mult[len(active):]) if m)
        coverage = None
        if self.logic is Logic.CARD and ideal is not None:
            # chains are stored as premise positions; map to literal indices
            def chain(target_set: AtomSet):
                return tuple(self.positive[s] for s in ideal.chain_for(target_set, self.premises))
            coverage = tuple(chain(self.literals[i].x) for i, _ in premises)
            coverage += tuple(chain(AtomSet.of([a], size)) for a, _ in positivity)
        return CancellationCertificate(
            self.logic, self.space.labels, e, f, res.scale, premises, positivity, coverage)

    def derivable(self, e: AtomSet, f: AtomSet) -> CancellationCertificate | None:
        """Certificate for ``|e| <= |f|``, or None if it is not derivable."""
        ideal = self.top(f)
        if not e.issubset(ideal.top):
            return None
        return self._cone(e, f, ideal.top, ideal)


def closure(literals: Sequence[AtomLiteral], logic: Logic | str, space: AtomSpace, **kw) -> Closure:
    return Closure(literals, logic, space, **kw)


def derivable(premises: Sequence[tuple[AtomSet, AtomSet]], e: AtomSet, f: AtomSet,
              logic: Logic | str = Logic.DED, labels: Sequence[str] | None = None,
              budget: Budget | None = None) -> CancellationCertificate | None:
    """Is ``|e| <= |f|`` derivable from premises ``|x| >= |y|``?

    Premise indices in the returned certificate refer to ``premises``.
    """
    size = e.size
    if labels is None:
        n = size.bit_length() - 1
        labels = tuple(f"l{i}" for i in range(n))
    space = AtomSpace(tuple(labels))
    lits = [AtomLiteral(True, x, y) for x, y in premises]
    return Closure(lits, logic, space, budget).derivable(e, f)


# --------------------------------------------------------------- witnesses


@dataclass(frozen=True)
class WitnessNote:
    """Which measure satisfies a branch requirement, and how it was built.

    ``target`` is a negative literal's index or ``"admissibility"``; ``kind``
    is ``"lp"`` (a finitary LP measure), ``"mu"`` (finite on an ideal, infinite
    off it), ``"rho"`` (zero on an ideal, infinite off it) or ``"single"``.
    """

    target: int | str
    measure: int
    kind: str
    ideal: AtomSet | None = None

    def to_json(self) -> dict:
        return {"target": self.target, "measure": self.measure, "kind": self.kind,
                "ideal": None if self.ideal is None else list(self.ideal.atoms())}

    @classmethod
    def from_json(cls, data: dict, size: int) -> "WitnessNote":
        ideal = data.get("ideal")
        return cls(data["target"], data["measure"], data["kind"],
                   None if ideal is None else AtomSet.of(ideal, size))


@dataclass(frozen=True)
class WitnessBundle:
    logic: Logic
    model: MeasuresModel
    branch_index: int
    notes: tuple[WitnessNote, ...]

    def to_json(self) -> dict:
        return {"logic": self.logic.value, "branch": self.branch_index,
                "model": self.model.to_json(), "notes": [n.to_json() for n in self.notes]}

    @classmethod
    def from_json(cls, data: dict) -> "WitnessBundle":
        model = MeasuresModel.from_json(data["model"])
        notes = tuple(WitnessNote.from_json(n, model.n_atoms) for n in data.get("notes", []))
        return cls(Logic.parse(data["logic"]), model, data.get("branch", 0), notes)


@dataclass(frozen=True)
class BranchSat:
    model: MeasuresModel
    notes: tuple[WitnessNote, ...]


@dataclass(frozen=True)
class BranchUnsat:
    certificates: tuple[CancellationCertificate, ...]


def _lp_measure(lits, space: AtomSpace, atoms: tuple[int, ...], strict: list[tuple[AtomSet, AtomSet]],
                budget) -> tuple | None:
    """Finite measure on ``atoms`` (zero elsewhere) satisfying the positive
    literals whose left side lies inside ``atoms`` and ``mu(b) > mu(a)`` for
    each ``(a, b)`` in ``strict``; None when infeasible."""
    inside = AtomSet.of(atoms, space.size)

    def row(s: AtomSet, t: AtomSet):
        return [((s.bits >> a) & 1) - ((t.bits >> a) & 1) for a in atoms]

    system = LinearSystem(len(atoms))
    for lit in lits:
        if lit.positive and lit.x.issubset(inside):
            system.ge(row(lit.x, lit.y))
    for a, b in strict:
        system.gt(row(b, a))
    res = solve(system, budget)
    if isinstance(res, Infeasible):
        return None
    vals = integerize(res.values)
    g = 0
    for v in vals:
        g = gcd(g, v)
    mu = [0] * space.size
    for a, v in zip(atoms, vals):
        mu[a] = v // g if g else v
    return tuple(mu)


def _sat_fin(lits, space: AtomSpace, budget) -> BranchSat | BranchUnsat:
    size = space.size
    system = LinearSystem(size)
    for j, lit in enumerate(lits):
        dx, dy = indicator(lit.x), indicator(lit.y)
        if lit.positive:
            system.ge(vsub(dx, dy))
        else:
            system.gt(vsub(dy, dx))
    system.gt(indicator(space.full))
    res = solve(system, budget)
    if not isinstance(res, Infeasible):
        vals = integerize(res.values)
        g = 0
        for v in vals:
            g = gcd(g, v)
        mu = tuple(v // g for v in vals)
        model = MeasuresModel("finitary", space.labels, (mu,))
        notes = tuple(WitnessNote(j, 0, "single") for j, lit in enumerate(lits) if not lit.positive)
        return BranchSat(model, notes + (WitnessNote("admissibility", 0, "single"),))

    y = list(integerize(res.multipliers))
    g = 0
    for v in y:
        g = gcd(g, v)
    y = [v // g for v in y]
    # slack atoms: nu = -(combination), recomputed over the integer multipliers
    comb = [0] * size
    for k, c in enumerate(system.constraints):
        if y[k]:
            for a, coef in enumerate(c.coeffs):
                comb[a] += y[k] * int(coef)
    nu = [-v for v in comb]
    alpha = y[-1]
    kappa = {j: y[j] for j, lit in enumerate(lits) if not lit.positive and y[j]}
    positivity = tuple((a, nu[a] + alpha) for a in range(size) if nu[a] + alpha)
    if kappa:
        # the first weighted negative becomes the conclusion, the others are
        # used flipped, as totality allows
        j0 = min(kappa)
        premises = tuple((j, y[j]) for j in range(len(lits)) if y[j] and j != j0)
        cert = CancellationCertificate(Logic.FIN, space.labels, lits[j0].y, lits[j0].x, y[j0],
                                       premises, positivity, None, j0)
    else:
        premises = tuple((j, y[j]) for j in range(len(lits)) if y[j])
        positivity = tuple((a, nu[a]) for a in range(size) if nu[a])
        cert = CancellationCertificate(Logic.FIN, space.labels, space.full, space.empty, alpha,
                                       premises, positivity, None, NONTRIVIALITY)
    return BranchUnsat((cert,))


def _add(measures: list, mu: tuple) -> int:
    if mu in measures:
        return measures.index(mu)
    measures.append(mu)
    return len(measures) - 1


def _sat_ded(lits, space: AtomSpace, budget) -> BranchSat | BranchUnsat:
    clo = Closure(lits, Logic.DED, space, budget)
    certs = []
    for j, lit in enumerate(lits):
        if not lit.positive:
            cert = clo.derivable(lit.y, lit.x)
            if cert is not None:
                certs.append(_refuting(cert, j))
    cert = clo.derivable(space.full, space.empty)
    if cert is not None:
        certs.append(_refuting(cert, NONTRIVIALITY))
    if certs:
        return BranchUnsat(tuple(certs))
    atoms = tuple(range(space.size))
    measures: list = []
    notes = []
    for j, lit in enumerate(lits):
        if not lit.positive:
            mu = _lp_measure(lits, space, atoms, [(lit.x, lit.y)], budget)
            if mu is None:
                raise ArithmeticError("cone test and strict LP disagree")
            notes.append(WitnessNote(j, _add(measures, mu), "lp"))
    mu = _lp_measure(lits, space, atoms, [(space.empty, space.full)], budget)
    if mu is None:
        raise ArithmeticError("cone test and admissibility LP disagree")
    notes.append(WitnessNote("admissibility", _add(measures, mu), "lp"))
    return BranchSat(MeasuresModel("finitary", space.labels, tuple(measures)), tuple(notes))


def _rho(top: AtomSet) -> tuple:
    return tuple(0 if a in top else INF for a in range(top.size))


def _sat_card(lits, space: AtomSpace, budget) -> BranchSat | BranchUnsat:
    clo = Closure(lits, Logic.CARD, space, budget)
    certs = []
    measures: list = []
    notes = []
    for j, lit in enumerate(lits):
        if lit.positive:
            continue
        ideal = clo.top(lit.x)
        if not lit.y.issubset(ideal.top):
            notes.append(WitnessNote(j, _add(measures, _rho(ideal.top)), "rho", ideal.top))
            continue
        cert = clo.derivable(lit.y, lit.x)
        if cert is not None:
            certs.append(_refuting(cert, j))
            continue
        mu = _lp_measure(lits, space, ideal.top.atoms(), [(lit.x, lit.y)], budget)
        if mu is None:
            raise ArithmeticError("restricted cone test and strict LP disagree")
        mu = tuple(INF if a not in ideal.top else v for a, v in enumerate(mu))
        notes.append(WitnessNote(j, _add(measures, mu), "mu", ideal.top))
    ideal = clo.top(space.empty)
    if ideal.top != space.full:
        notes.append(WitnessNote("admissibility", _add(measures, _rho(ideal.top)), "rho", ideal.top))
    else:
        cert = clo.derivable(space.full, space.empty)
        if cert is not None:
            certs.append(_refuting(cert, NONTRIVIALITY))
        else:
            mu = _lp_measure(lits, space, tuple(range(space.size)), [(space.empty, space.full)], budget)
            if mu is None:
                raise ArithmeticError("cone test and admissibility LP disagree")
            notes.append(WitnessNote("admissibility", _add(measures, mu), "mu", ideal.top))
    if certs:
        return BranchUnsat(tuple(certs))
    for mu in measures:
        for lit in lits:
            if lit.positive and measure_of(mu, lit.x) < measure_of(mu, lit.y):
                raise ArithmeticError("constructed measure violates a premise")
    return BranchSat(MeasuresModel("infinitary", space.labels, tuple(measures)), tuple(notes))


def _refuting(cert: CancellationCertificate, target) -> CancellationCertificate:
    return CancellationCertificate(cert.logic, cert.labels, cert.e, cert.f, cert.scale,
                                   cert.premises, cert.positivity, cert.coverage, target)


_ROUTES = {Logic.FIN: _sat_fin, Logic.DED: _sat_ded, Logic.CARD: _sat_card}


def sat_branch(branch: Sequence[Literal | AtomLiteral], logic: Logic | str, space: AtomSpace,
               budget: Budget | None = None) -> BranchSat | BranchUnsat:
    logic = Logic.parse(logic)
    lits = atomize_branch(branch, space)
    return _ROUTES[logic](lits, space, budget)


# ------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Sat:
    bundle: WitnessBundle

    @property
    def model(self) -> MeasuresModel:
        return self.bundle.model

    def to_json(self) -> dict:
        return {"verdict": "sat", **self.bundle.to_json()}


@dataclass(frozen=True)
class Unsat:
    """Certificates for every DNF branch, in branch order."""

    logic: Logic
    labels: tuple[str, ...]
    branches: tuple[tuple[CancellationCertificate, ...], ...]

    def to_json(self) -> dict:
        return {"verdict": "unsat", "logic": self.logic.value, "labels": list(self.labels),
                "branches": [[c.to_json() for c in certs] for certs in self.branches]}

    @classmethod
    def from_json(cls, data: dict) -> "Unsat":
        branches = tuple(tuple(CancellationCertificate.from_json(c) for c in certs)
                         for certs in data["branches"])
        return cls(Logic.parse(data["logic"]), tuple(data["labels"]), branches)


def problem_space(f: Formula, labels: Sequence[str] | None = None, max_labels: int = 16) -> AtomSpace:
    names = set(formula_labels(f))
    if labels is not None:
        names |= set(labels)
    if len(names) > max_labels:
        raise LimitExceeded(f"{len(names)} labels exceed the cap of {max_labels}")
    return AtomSpace.of(names, max_labels=max_labels)


def sat(f: Formula, logic: Logic | str = Logic.CARD, labels: Sequence[str] | None = None,
        budget: Budget | None = None, max_labels: int = 16) -> Sat | Unsat:
    """First satisfiable DNF branch wins; otherwise every branch is certified."""
    logic = Logic.parse(logic)
    space = problem_space(f, labels, max_labels)
    refuted = []
    for i, branch in enumerate(to_dnf(f)):
        res = sat_branch(branch, logic, space, budget)
        if isinstance(res, BranchSat):
            return Sat(WitnessBundle(logic, res.model, i, res.notes))
        refuted.append(res.certificates)
    return Unsat(logic, space.labels, tuple(refuted))


@dataclass(frozen=True)
class Entailed:
    refutation: Unsat


@dataclass(frozen=True)
class NotEntailed:
    counter_model: WitnessBundle


def entailment_formula(gamma: Sequence[Formula], phi: Formula) -> Formula:
    return conjunction(*gamma, Not(phi))


def entails(gamma: Sequence[Formula], phi: Formula, logic: Logic | str = Logic.CARD,
            labels: Sequence[str] | None = None, budget: Budget | None = None,
            max_labels: int = 16) -> Entailed | NotEntailed:
    res = sat(entailment_formula(gamma, phi), logic, labels, budget, max_labels)
    if isinstance(res, Unsat):
        return Entailed(res)
    return NotEntailed(res.bundle)


# --------------------------------------------------------------- checking


def verify_unsat(res: Unsat, f: Formula) -> bool:
    """Every branch of ``f`` carries a verified refuting certificate."""
    branches = to_dnf(f)
    if len(branches) != len(res.branches):
        return False
    for branch, certs in zip(branches, res.branches):
        if not any(c.refutes is not None and c.logic is res.logic and verify_certificate(c, branch)
                   for c in certs):
            return False
    return True


def verify_witness(bundle: WitnessBundle, f: Formula) -> bool:
    m = bundle.model
    if m.kind != bundle.logic.model_kind:
        return False
    if bundle.logic is Logic.FIN and len(m.measures) != 1:
        return False
    if not set(formula_labels(f)) <= set(m.labels):
        return False
    return model_satisfies(m, [f])
