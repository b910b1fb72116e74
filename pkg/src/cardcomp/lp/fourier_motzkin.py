"""Fourier-Motzkin elimination with strictness tracking.

Used as an independent cross-check of the simplex verdict on small systems;
it shares no code with :mod:`cardcomp.lp.simplex` beyond the system type.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .simplex import LinearSystem

MAX_VARIABLES = 8
MAX_ROWS = 20000


def _normalise(coeffs: tuple[Fraction, ...], const: Fraction, strict: bool):
    # scale to primitive integers so duplicate rows collapse
    den = 1
    for x in (*coeffs, const):
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in (*coeffs, const)]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(Fraction(v) for v in ints[:-1]), Fraction(ints[-1]), strict


def fm_feasible(system: LinearSystem) -> bool:
    """True iff ``system`` has a solution with all variables nonnegative."""
    n = system.nvars
    if n > MAX_VARIABLES:
        raise ValueError(f"Fourier-Motzkin cross-check limited to {MAX_VARIABLES} variables")
    rows = set()
    for c in system.constraints:
        if c.rel == "=":
            rows.add(_normalise(c.coeffs, c.const, False))
            rows.add(_normalise(tuple(-a for a in c.coeffs), -c.const, False))
        else:
            rows.add(_normalise(c.coeffs, c.const, c.rel == ">"))
    for i in range(n):
        unit = tuple(Fraction(int(j == i)) for j in range(n))
        rows.add((unit, Fraction(0), False))

    for var in range(n):
        pos, neg, rest = [], [], []
        for row in rows:
            a = row[0][var]
            (pos if a > 0 else neg if a < 0 else rest).append(row)
        new = set(rest)
        for p_coeffs, p_const, p_strict in pos:
            for q_coeffs, q_const, q_strict in neg:
                wp = -q_coeffs[var]
                wq = p_coeffs[var]
                coeffs = tuple(wp * a + wq * b for a, b in zip(p_coeffs, q_coeffs))
                new.add(_normalise(coeffs, wp * p_const + wq * q_const, p_strict or q_strict))
        if len(new) > MAX_ROWS:
            raise ValueError("Fourier-Motzkin row explosion")
        rows = new

    # only constant rows remain: 0 >= b or 0 > b
    for _, const, strict in rows:
        if strict and not const < 0:
            return False
        if not strict and not const <= 0:
            return False
    return True
