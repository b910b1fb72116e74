"""Exact rational feasibility over nonnegative variables.

Every system solved here has nonnegative variables and constraints of the
form ``a.v >= b``, ``a.v = b`` or ``a.v > b``.  Strict rows are handled by
homogenising with an extra variable ``t > 0``; the result is then a plain
``>=``/``=`` system that phase one of a dense tableau simplex (Bland's rule)
decides exactly.  Infeasibility is certified by solving the Farkas
alternative system, so both outcomes carry an exactly checkable witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from ..errors import DimensionMismatch, LimitExceeded

try:  # gmpy2 rationals are several times faster than Fraction in the pivots
    from gmpy2 import mpq as _q
except ImportError:  # pragma: no cover
    _q = Fraction

RELATIONS = (">=", "=", ">")


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    rel: str
    const: Fraction = Fraction(0)
    name: str = ""

    def lhs(self, values: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.coeffs, values) if c), Fraction(0))

    def holds(self, values: Sequence[Fraction]) -> bool:
        lhs = self.lhs(values)
        if self.rel == ">=":
            return lhs >= self.const
        if self.rel == ">":
            return lhs > self.const
        return lhs == self.const


@dataclass
class LinearSystem:
    """Constraints over ``nvars`` nonnegative rational variables."""

    nvars: int
    constraints: list[Constraint] = field(default_factory=list)
    names: tuple[str, ...] | None = None

    def add(self, coeffs, rel: str, const=0, name: str = "") -> int:
        if rel not in RELATIONS:
            raise ValueError(f"relation must be one of {RELATIONS}, got {rel!r}")
        coeffs = tuple(_frac(c) for c in coeffs)
        if len(coeffs) != self.nvars:
            raise DimensionMismatch(f"constraint has {len(coeffs)} coefficients, system has {self.nvars} variables")
        self.constraints.append(Constraint(coeffs, rel, _frac(const), name))
        return len(self.constraints) - 1

    def ge(self, coeffs, const=0, name=""):
        return self.add(coeffs, ">=", const, name)

    def gt(self, coeffs, const=0, name=""):
        return self.add(coeffs, ">", const, name)

    def eq(self, coeffs, const=0, name=""):
        return self.add(coeffs, "=", const, name)

    def is_homogeneous(self) -> bool:
        return all(c.const == 0 for c in self.constraints)


@dataclass(frozen=True)
class Point:
    values: tuple[Fraction, ...]

    def check(self, system: LinearSystem) -> bool:
        return (len(self.values) == system.nvars
                and all(v >= 0 for v in self.values)
                and all(c.holds(self.values) for c in system.constraints))


@dataclass(frozen=True)
class Infeasible:
    """One multiplier per constraint.

    The combination ``sum(y_k * row_k)`` has every coefficient ``<= 0`` while
    its constant is positive, or zero with a strict row used.  Together with
    ``v >= 0`` that is the contradiction ``0 >= c.v >= d > 0`` (or ``> 0``).
    """

    multipliers: tuple[Fraction, ...]

    def combination(self, system: LinearSystem) -> tuple[list[Fraction], Fraction]:
        coeffs = [Fraction(0)] * system.nvars
        const = Fraction(0)
        for y, c in zip(self.multipliers, system.constraints):
            if y:
                for i, a in enumerate(c.coeffs):
                    if a:
                        coeffs[i] += y * a
                const += y * c.const
        return coeffs, const

    def check(self, system: LinearSystem) -> bool:
        if len(self.multipliers) != len(system.constraints):
            return False
        for y, c in zip(self.multipliers, system.constraints):
            if c.rel != "=" and y < 0:
                return False
        coeffs, const = self.combination(system)
        if any(a > 0 for a in coeffs):
            return False
        if const > 0:
            return True
        strict_used = any(y > 0 and c.rel == ">" for y, c in zip(self.multipliers, system.constraints))
        return const == 0 and strict_used


FeasibilityResult = Point | Infeasible


class Budget:
    """Counts simplex pivots; raises LimitExceeded once ``limit`` is spent."""

    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.used = 0

    def charge(self, steps: int = 1):
        self.used += steps
        if self.limit is not None and self.used > self.limit:
            raise LimitExceeded(f"step budget of {self.limit} simplex pivots exhausted")


def phase_one(rows: Sequence[Sequence], rels: Sequence[str], rhs: Sequence, nvars: int,
              budget: Budget | None = None) -> list | None:
    """Find ``z >= 0`` with ``rows[r].z (>=|=) rhs[r]``, or None if none exists.

    Dense tableau, minimising the sum of artificial variables; Bland's rule
    (lowest index enters, lowest basic index leaves on ties) so the search
    terminates and is deterministic.
    """
    m = len(rows)
    if m == 0:
        return [_q(0)] * nvars
    nslack = sum(1 for r in rels if r == ">=")
    ncols = nvars + nslack + m
    tab = []
    b = []
    basis = []
    slack = nvars
    for r in range(m):
        row = [_q(0)] * ncols
        for j, a in enumerate(rows[r]):
            if a:
                row[j] = _q(a)
        if rels[r] == ">=":
            row[slack] = _q(-1)
            slack += 1
        rhs_r = _q(rhs[r])
        if rhs_r < 0:
            row = [-a for a in row]
            rhs_r = -rhs_r
        art = nvars + nslack + r
        row[art] = _q(1)
        tab.append(row)
        b.append(rhs_r)
        basis.append(art)
    first_art = nvars + nslack
    cost = [_q(0)] * ncols
    for j in range(first_art):
        s = _q(0)
        for r in range(m):
            if tab[r][j]:
                s -= tab[r][j]
        cost[j] = s
    value = sum(b, _q(0))

    while True:
        enter = -1
        for j in range(first_art):
            if cost[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for r in range(m):
            a = tab[r][enter]
            if a > 0:
                ratio = b[r] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best = ratio
                    leave = r
        if leave < 0:  # unbounded direction; cannot happen when minimising a sum of nonnegatives
            break
        if budget is not None:
            budget.charge()
        prow = tab[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [a / piv for a in prow]
            tab[leave] = prow
            b[leave] = b[leave] / piv
        nz = [j for j, a in enumerate(prow) if a]
        for r in range(m):
            if r != leave:
                factor = tab[r][enter]
                if factor:
                    row = tab[r]
                    for j in nz:
                        row[j] -= factor * prow[j]
                    b[r] -= factor * b[leave]
        factor = cost[enter]
        for j in nz:
            cost[j] -= factor * prow[j]
        value += factor * b[leave]
        basis[leave] = enter
    if value != 0:
        return None
    z = [_q(0)] * nvars
    for r, j in enumerate(basis):
        if j < nvars:
            z[j] = b[r]
    return z


def solve(system: LinearSystem, budget: Budget | None = None) -> Point | Infeasible:
    """Decide ``system`` exactly; every answer re-checks with ``.check``."""
    n = system.nvars
    if n < 1:
        raise DimensionMismatch("a linear system needs at least one variable")
    cons = system.constraints
    rows, rels, rhs = [], [], []
    for c in cons:
        # homogenised row over (v, t): a.v - b t  rel'  0 or 1
        rows.append(list(c.coeffs) + [-c.const])
        rels.append("=" if c.rel == "=" else ">=")
        rhs.append(1 if c.rel == ">" else 0)
    rows.append([0] * n + [1])
    rels.append(">=")
    rhs.append(1)
    z = phase_one(rows, rels, rhs, n + 1, budget)
    if z is not None:
        t = z[n]
        return Point(tuple(_frac(v / t) for v in z[:n]))
    return Infeasible(_farkas(system, budget))


def _farkas(system: LinearSystem, budget: Budget | None) -> tuple[Fraction, ...]:
    n = system.nvars
    cons = system.constraints
    # variables: one y_k per inequality, (w+_k, w-_k) per equality, then y_t
    cols: list[tuple[int, int]] = []
    for k, c in enumerate(cons):
        if c.rel == "=":
            cols.append((k, 1))
            cols.append((k, -1))
        else:
            cols.append((k, 1))
    nv = len(cols) + 1
    rows, rels, rhs = [], [], []
    for i in range(n):
        rows.append([-cons[k].coeffs[i] * sign for k, sign in cols] + [0])
        rels.append(">=")
        rhs.append(0)
    rows.append([cons[k].const * sign for k, sign in cols] + [-1])
    rels.append(">=")
    rhs.append(0)
    norm = [1 if cons[k].rel == ">" else 0 for k, _ in cols] + [1]
    rows.append(norm)
    rels.append("=")
    rhs.append(1)
    z = phase_one(rows, rels, rhs, nv, budget)
    if z is None:  # pragma: no cover - excluded by Farkas' lemma
        raise ArithmeticError("neither the system nor its alternative is feasible")
    y = [Fraction(0)] * len(cons)
    for (k, sign), val in zip(cols, z):
        y[k] += sign * _frac(val)
    return tuple(y)


def integerize(values: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale by the lcm of the denominators; ``(1/2, 1/3) -> (3, 2)``."""
    values = [_frac(v) for v in values]
    scale = lcm(1, *(v.denominator for v in values))
    return tuple(int(v * scale) for v in values)
