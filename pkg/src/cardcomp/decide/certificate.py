"""Cancellation certificates and their LP-free checker."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from ..algebra import AtomSet, AtomSpace, atomize, is_balanced
from ..syntax.ast import Literal


class Logic(str, Enum):
    FIN = "fin"
    DED = "ded"
    CARD = "card"

    @property
    def model_kind(self) -> str:
        return "infinitary" if self is Logic.CARD else "finitary"

    @classmethod
    def parse(cls, text: "str | Logic") -> "Logic":
        if isinstance(text, Logic):
            return text
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown logic {text!r}; choose fin, ded or card") from None


@dataclass(frozen=True)
class AtomLiteral:
    """A branch literal after atomization: ``|x| >= |y|`` or its negation."""

    positive: bool
    x: AtomSet
    y: AtomSet


def atomize_branch(branch: Sequence[Literal | AtomLiteral], space: AtomSpace) -> tuple[AtomLiteral, ...]:
    out = []
    for lit in branch:
        if isinstance(lit, AtomLiteral):
            out.append(lit)
        else:
            out.append(AtomLiteral(lit.positive, atomize(lit.lhs, space), atomize(lit.rhs, space)))
    return tuple(out)


NONTRIVIALITY = "nontriviality"


@dataclass(frozen=True)
class CancellationCertificate:
    """A single balanced cancellation instance deriving ``|e| <= |f|``.

    ``scale * (chi_f - chi_e)`` equals the sum over ``premises`` of
    ``n * (chi_s - chi_t)`` plus the sum over ``positivity`` of ``m * chi_atom``,
    where a positive literal ``|x| >= |y|`` contributes ``s, t = x, y``.
    Under Fin a negative literal may be used flipped (``s, t = y, x``), which
    totality licenses.  ``coverage`` (Card only) gives, for every premise and
    then every positivity atom, a chain of premise indices showing its left
    side lies in the ideal generated by ``f``.
    """

    logic: Logic
    labels: tuple[str, ...]
    e: AtomSet
    f: AtomSet
    scale: int
    premises: tuple[tuple[int, int], ...] = ()
    positivity: tuple[tuple[int, int], ...] = ()
    coverage: tuple[tuple[int, ...], ...] | None = None
    refutes: int | str | None = None

    def to_json(self) -> dict:
        return {
            "logic": self.logic.value,
            "labels": list(self.labels),
            "n_atoms": self.e.size,
            "conclusion": {"e": list(self.e.atoms()), "f": list(self.f.atoms())},
            "scale": self.scale,
            "premises": [{"index": i, "multiplicity": n} for i, n in self.premises],
            "positivity": [{"atom": a, "multiplicity": m} for a, m in self.positivity],
            "coverage": None if self.coverage is None else [list(c) for c in self.coverage],
            "refutes": self.refutes,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CancellationCertificate":
        size = int(data["n_atoms"])
        cov = data.get("coverage")
        return cls(
            logic=Logic.parse(data["logic"]),
            labels=tuple(data["labels"]),
            e=AtomSet.of(data["conclusion"]["e"], size),
            f=AtomSet.of(data["conclusion"]["f"], size),
            scale=data["scale"],
            premises=tuple((p["index"], p["multiplicity"]) for p in data["premises"]),
            positivity=tuple((p["atom"], p["multiplicity"]) for p in data.get("positivity", [])),
            coverage=None if cov is None else tuple(tuple(c) for c in cov),
            refutes=data.get("refutes"),
        )


def _positive_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool) and v >= 1


def _replay(chain, start: AtomSet, lits) -> AtomSet | None:
    top = start
    for p in chain:
        if not (isinstance(p, int) and 0 <= p < len(lits)) or not lits[p].positive:
            return None
        if not lits[p].x.issubset(top):
            return None
        top = top | lits[p].y
    return top


def verify_certificate(cert: CancellationCertificate, branch: Sequence[Literal | AtomLiteral]) -> bool:
    """Check ``cert`` against ``branch`` by counting and subset tests alone."""
    try:
        space = AtomSpace(tuple(cert.labels))
    except Exception:
        return False
    size = space.size
    if cert.e.size != size or cert.f.size != size:
        return False
    try:
        lits = atomize_branch(branch, space)
    except Exception:
        return False
    if any(lit.x.size != size for lit in lits):
        return False
    if not _positive_int(cert.scale):
        return False

    left: list[AtomSet] = []
    right: list[AtomSet] = []
    lefts_used = []
    for idx, n in cert.premises:
        if not (isinstance(idx, int) and 0 <= idx < len(lits)) or not _positive_int(n):
            return False
        lit = lits[idx]
        if lit.positive:
            s, t = lit.x, lit.y
        elif cert.logic is Logic.FIN:
            s, t = lit.y, lit.x
        else:
            return False
        left += [s] * n
        right += [t] * n
        lefts_used.append(s)
    for atom, m in cert.positivity:
        if not (isinstance(atom, int) and 0 <= atom < size) or not _positive_int(m):
            return False
        single = AtomSet.of([atom], size)
        left += [single] * m
        lefts_used.append(single)
    left += [cert.e] * cert.scale
    right += [cert.f] * cert.scale
    if not is_balanced(left, right):
        return False

    if cert.refutes == NONTRIVIALITY:
        if cert.e != space.full or cert.f != space.empty:
            return False
    elif cert.refutes is not None:
        j = cert.refutes
        if not (isinstance(j, int) and 0 <= j < len(lits)) or lits[j].positive:
            return False
        # conclusion |y| <= |x| contradicts !(|x| >= |y|)
        if cert.e != lits[j].y or cert.f != lits[j].x:
            return False

    if cert.logic is Logic.CARD:
        if cert.coverage is None or len(cert.coverage) != len(lefts_used):
            return False
        for chain, target in zip(cert.coverage, lefts_used):
            top = _replay(chain, cert.f, lits)
            if top is None or not target.issubset(top):
                return False
    elif cert.coverage:
        return False
    return True
