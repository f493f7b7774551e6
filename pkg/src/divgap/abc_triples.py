"""abc triples attached to divisible pairs.

With mT from the decomposition, d = gcd(t, (mT)^2) splits as d1 * d2^2
with d1 squarefree, S = mT/(d1 d2), and

    A = s/d,   B = (t/d) D^4,   C = d1 S^2,

which satisfy A + B = C with A, B, C pairwise coprime.  The quality of
the triple is ln C / ln rad(ABC).

Radicals here are computed from the pair's own structure instead of
factoring A, B, C blind: every prime of B divides t or D, every prime
of C divides mT = (b^2+1)/x^2, and A splits as a part supported on the
primes of t times a divisor of t - 1, which is the only piece that
needs a general factorization.  Each record's reconstructed
factorizations are multiplied back and compared with the actual values,
so a bookkeeping error cannot pass silently.
"""

from __future__ import annotations

import logging
import math
from enum import Enum
from functools import lru_cache
from typing import NamedTuple

from .arith import factorize
from .decomp import CounterexampleError, DecompRecord

logger = logging.getLogger("divgap.abc")


class BranchTag(Enum):
    SMALL_T = "SmallT"
    LARGE_T = "LargeT"


class AbcRecord(NamedTuple):
    d: int
    d1: int
    d2: int
    S: int
    A: int
    B: int
    C: int
    rad: int
    quality: float


class AbcChecks(NamedTuple):
    sum_ok: bool
    coprime_ab: bool
    coprime_ac: bool
    coprime_bc: bool
    d_divides_s: bool
    d_divides_t: bool

    @property
    def all_ok(self) -> bool:
        return all(self)


class BranchReport(NamedTuple):
    branch: BranchTag
    mt_squared_bound: bool
    x_squared_bound: bool
    d1s_bound: bool
    large_t_gap: bool

    @property
    def all_ok(self) -> bool:
        return (
            self.mt_squared_bound
            and self.x_squared_bound
            and self.d1s_bound
            and self.large_t_gap
        )


@lru_cache(maxsize=1 << 17)
def _pf(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(factorize(n))


def _exponents(rec: DecompRecord) -> tuple[dict[int, int], dict[int, int]]:
    """Prime exponent maps of t and mT, assembled from small pieces.

    t = b^2(b^2+1) / a^2(a^2+1) and mT = (b^2+1)/x^2, so both are read
    off the factorizations of a, b, a^2+1, b^2+1 and x, which are far
    cheaper to obtain than factoring t itself.
    """
    a, b, t = rec.pair
    t_exp: dict[int, int] = {}
    for p, e in _pf(b):
        t_exp[p] = t_exp.get(p, 0) + 2 * e
    for p, e in _pf(b * b + 1):
        t_exp[p] = t_exp.get(p, 0) + e
    for p, e in _pf(a):
        t_exp[p] = t_exp.get(p, 0) - 2 * e
    for p, e in _pf(a * a + 1):
        t_exp[p] = t_exp.get(p, 0) - e
    t_exp = {p: e for p, e in t_exp.items() if e}
    mt_exp: dict[int, int] = dict(_pf(b * b + 1))
    for p, e in _pf(rec.x):
        mt_exp[p] = mt_exp.get(p, 0) - 2 * e
    mt_exp = {p: e for p, e in mt_exp.items() if e}
    check_t = math.prod(p**e for p, e in t_exp.items())
    check_mt = math.prod(p**e for p, e in mt_exp.items())
    if check_t != t or check_mt != rec.m * rec.T:
        raise CounterexampleError(
            f"factorization bookkeeping failed for pair {rec.pair}"
        )
    return t_exp, mt_exp


def abc_decompose(rec: DecompRecord) -> AbcRecord:
    """Build the abc triple (A, B, C) of a decomposed pair.

    A coprimality violation would contradict the construction; it is
    logged as a counterexample and the record is still returned so a
    survey can finish and report it.  Non-integral S or d not dividing
    s cannot happen for genuine records and raise CounterexampleError.
    """
    t = rec.pair.t
    mt = rec.m * rec.T
    t_exp, mt_exp = _exponents(rec)
    d = math.gcd(t, mt * mt)
    d1 = d2 = 1
    for p, e in t_exp.items():
        k = min(e, 2 * mt_exp.get(p, 0))
        if k & 1:
            d1 *= p
        d2 *= p ** (k >> 1)
    if d1 * d2 * d2 != d:
        raise CounterexampleError(
            f"squarefree split of d failed for pair {rec.pair}"
        )
    s_part, rem = divmod(mt, d1 * d2)
    if rem:
        raise CounterexampleError(f"S is not integral for pair {rec.pair}")
    big_a, rem = divmod(rec.s, d)
    if rem:
        raise CounterexampleError(f"d does not divide s for pair {rec.pair}")
    big_b = (t // d) * rec.D**4
    big_c = d1 * s_part * s_part
    if big_a + big_b != big_c:
        raise CounterexampleError(f"A + B != C for pair {rec.pair}")
    primes: set[int] = set()
    rest = big_a
    for p in t_exp:
        if rest % p == 0:
            primes.add(p)
            while rest % p == 0:
                rest //= p
    for p, _ in _pf(rest):
        primes.add(p)
    for p, e in t_exp.items():
        if e > min(e, 2 * mt_exp.get(p, 0)):
            primes.add(p)
    for p, _ in _pf(rec.D):
        primes.add(p)
    for p, e in mt_exp.items():
        if e > (min(t_exp.get(p, 0), 2 * e) + 1) // 2:
            primes.add(p)
    if d1 > 1:
        for p, e in t_exp.items():
            if min(e, 2 * mt_exp.get(p, 0)) & 1:
                primes.add(p)
    rad = math.prod(primes)
    qual = math.log(big_c) / math.log(rad)
    record = AbcRecord(d, d1, d2, s_part, big_a, big_b, big_c, rad, qual)
    checks = verify_abc(rec, record)
    if not (checks.coprime_ab and checks.coprime_ac and checks.coprime_bc):
        logger.warning(
            "counterexample: abc triple of pair %s is not pairwise coprime: "
            "A=%d B=%d C=%d",
            rec.pair,
            big_a,
            big_b,
            big_c,
        )
    return record


def verify_abc(rec: DecompRecord, abc: AbcRecord) -> AbcChecks:
    """Independent re-check of the defining abc relations."""
    t = rec.pair.t
    return AbcChecks(
        sum_ok=abc.A + abc.B == abc.C,
        coprime_ab=math.gcd(abc.A, abc.B) == 1,
        coprime_ac=math.gcd(abc.A, abc.C) == 1,
        coprime_bc=math.gcd(abc.B, abc.C) == 1,
        d_divides_s=abc.d >= 1 and rec.s % abc.d == 0,
        d_divides_t=abc.d >= 1 and t % abc.d == 0,
    )


def quality(a: int, b: int, c: int) -> float:
    """Quality ln c / ln rad(abc) of a triple a + b = c.

    Requires positive, pairwise coprime a, b, c with a + b = c.  Uses
    plain factorization of all three entries; abc_decompose computes
    the same number through the structured route.
    """
    if a < 1 or b < 1 or c < 1:
        raise ValueError("entries must be positive")
    if a + b != c:
        raise ValueError("a + b != c")
    if (
        math.gcd(a, b) != 1
        or math.gcd(a, c) != 1
        or math.gcd(b, c) != 1
    ):
        raise ValueError("entries must be pairwise coprime")
    rad = 1
    for n in (a, b, c):
        for p, _ in factorize(n):
            rad *= p
    return math.log(c) / math.log(rad)


def classify_case(rec: DecompRecord) -> BranchTag:
    """SmallT when t <= 10 D^4, LargeT otherwise."""
    return (
        BranchTag.SMALL_T
        if rec.pair.t <= 10 * rec.D**4
        else BranchTag.LARGE_T
    )


def verify_branch_bounds(rec: DecompRecord, abc: AbcRecord) -> BranchReport:
    """Exact evaluation of the per-branch inequality checks.

    Universal: (mT)^2 <= 8 t D^8 and x^2 <= 4 t D^2.  On the SmallT
    branch additionally (d1 S)^2 <= 11 t D^4; on the LargeT branch the
    gap inequality y^5 > D x^6.  Checks belonging to the other branch
    are reported as vacuously true.
    """
    t = rec.pair.t
    mt = rec.m * rec.T
    branch = classify_case(rec)
    small = branch is BranchTag.SMALL_T
    return BranchReport(
        branch=branch,
        mt_squared_bound=mt * mt <= 8 * t * rec.D**8,
        x_squared_bound=rec.x * rec.x <= 4 * t * rec.D * rec.D,
        d1s_bound=(not small) or (abc.d1 * abc.S) ** 2 <= 11 * t * rec.D**4,
        large_t_gap=small or rec.y**5 > rec.D * rec.x**6,
    )
