"""Structural decomposition of divisible pairs.

Every divisible pair (a, b) with quotient t factors through the shape

    D = gcd(a, b),  x = a/D,  y = b/D,
    T = gcd(D^2 x^2 + 1, D^2 y^2 + 1),
    m = (D^2 y^2 + 1) / (T x^2),        an integer,
    s = (mT)^2 - t D^4,                 1 <= s, s | (t-1)t.

The six shape identities eq0..eq5 plus three gcd/divisibility facts are
re-checked in exact arithmetic by verify_identities; a failure on a
genuine pair would be a counterexample to the theory and is surfaced
loudly rather than swallowed.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .pairs import PairRecord


class CounterexampleError(RuntimeError):
    """An identity that should hold for every divisible pair failed."""


class DecompRecord(NamedTuple):
    pair: PairRecord
    D: int
    x: int
    y: int
    T: int
    m: int
    s: int
    lam: int


class IdentityReport(NamedTuple):
    eq0: bool
    eq1: bool
    eq2: bool
    eq3: bool
    eq4: bool
    eq5: bool
    gcd_mT_D: bool
    gcd_s_mT: bool
    s_divides_lam: bool

    @property
    def all_ok(self) -> bool:
        return all(self)


def decompose(pair: PairRecord) -> DecompRecord:
    """Compute the (D, x, y, T, m, s, lambda) decomposition of a pair."""
    pair = PairRecord(*pair)
    a, b, t = pair
    if a < 1 or b <= a:
        raise ValueError("pair must satisfy 1 <= a < b")
    if t * a * a * (a * a + 1) != b * b * (b * b + 1):
        raise ValueError(f"({a}, {b}, {t}) is not a divisible pair")
    d = math.gcd(a, b)
    x = a // d
    y = b // d
    cx = d * d * x * x + 1
    cy = d * d * y * y + 1
    big_t = math.gcd(cx, cy)
    num, rem = divmod(cy, big_t * x * x)
    if rem:
        raise CounterexampleError(
            f"m is not integral for pair ({a}, {b}, {t})"
        )
    m = num
    s = (m * big_t) ** 2 - t * d**4
    return DecompRecord(pair, d, x, y, big_t, m, s, (t - 1) * t)


def verify_identities(rec: DecompRecord) -> IdentityReport:
    """Re-check all shape identities for a decomposition, exactly.

    eq0: t x^2 (D^2 x^2 + 1) = y^2 (D^2 y^2 + 1)   (common factor T cleared)
    eq1: t (D^2 x^2 + 1) = mT y^2
    eq2: D^2 y^2 + 1 = mT x^2
    eq3: s x^2 = t D^2 + mT
    eq4: s y^2 = t D^2 + t mT
    eq5: s (y^2 - x^2) = (t - 1) mT
    plus gcd(mT, D) = 1, gcd(s, mT) = gcd(t, mT), and s | (t-1)t.
    """
    t = rec.pair.t
    d, x, y = rec.D, rec.x, rec.y
    mt = rec.m * rec.T
    xx, yy = x * x, y * y
    cx = d * d * xx + 1
    cy = d * d * yy + 1
    return IdentityReport(
        eq0=t * xx * cx == yy * cy,
        eq1=t * cx == mt * yy,
        eq2=cy == mt * xx,
        eq3=rec.s * xx == t * d * d + mt,
        eq4=rec.s * yy == t * d * d + t * mt,
        eq5=rec.s * (yy - xx) == (t - 1) * mt,
        gcd_mT_D=math.gcd(mt, d) == 1,
        gcd_s_mT=math.gcd(rec.s, mt) == math.gcd(t, mt),
        s_divides_lam=rec.s != 0 and rec.lam % rec.s == 0,
    )


def gap_bound_thm1(a: float) -> float:
    """Unconditional lower-bound curve for the gap b - a, constant 1.

    Evaluates a (ln a)^(1/8) / (ln max(e, ln a))^12.  Display only: the
    curve is meaningful for large a and dips below 1 for small a.
    """
    if a < 1:
        raise ValueError("a must be >= 1")
    la = math.log(a)
    return a * la**0.125 / math.log(max(math.e, la)) ** 12


def gap_bound_thm2(a: float, epsilon: float) -> float:
    """Conditional lower-bound curve a^(15/14 - epsilon), constant 1.

    Requires 0 < epsilon < 15/14.  Display only.
    """
    if not 0 < epsilon < 15 / 14:
        raise ValueError("epsilon must lie in (0, 15/14)")
    if a < 1:
        raise ValueError("a must be >= 1")
    return math.exp((15 / 14 - epsilon) * math.log(a))
