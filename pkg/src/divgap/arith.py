"""Exact number-theoretic primitives.

Everything in this module works on plain Python integers and is exact;
no floating point is used anywhere.  Factorization is deterministic:
trial division by a fixed prime table, then perfect-power extraction and
Brent's cycle-finding variant of Pollard rho with a fixed parameter
sweep, so repeated runs always produce the same output.
"""

from __future__ import annotations

import math
from functools import lru_cache

_TRIAL_LIMIT = 10**6

# Deterministic Miller-Rabin witnesses, sufficient for all n < 3.3e24.
# Beyond that range the same fixed set is used, making the test
# probabilistic but still deterministic run to run.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def gcd(u: int, v: int) -> int:
    """Greatest common divisor; gcd(u, 0) == u by convention."""
    if u == 0 and v == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(u, v)


def isqrt(n: int) -> int:
    """Floor of the square root of a nonnegative integer."""
    if n < 0:
        raise ValueError("isqrt requires n >= 0")
    return math.isqrt(n)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    """All primes below the trial-division limit, via a byte sieve."""
    limit = _TRIAL_LIMIT
    sieve = bytearray(b"\x01") * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test with a fixed witness set."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _iroot(n: int, e: int) -> int:
    """Floor of the e-th root of n, by Newton iteration on integers."""
    if e == 1 or n < 2:
        return n
    if e == 2:
        return math.isqrt(n)
    x = 1 << -(-n.bit_length() // e)
    while True:
        y = ((e - 1) * x + n // x ** (e - 1)) // e
        if y >= x:
            break
        x = y
    while x**e > n:
        x -= 1
    return x


def _brent_rho(n: int) -> int:
    """Find a nontrivial divisor of an odd composite n.

    Brent's improvement of Pollard rho, sweeping the polynomial constant
    c = 1, 2, 3, ... deterministically until a split is found.
    """
    c = 1
    while True:
        y, r, q = 2, 1, 1
        g = 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1


def _factor_hard(n: int, out: dict[int, int]) -> None:
    # n > 1 with no prime factor below the trial-division limit
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    bits = n.bit_length()
    for e in _small_primes():
        if e > bits:
            break
        r = _iroot(n, e)
        if r**e == n:
            sub: dict[int, int] = {}
            _factor_hard(r, sub)
            for p, k in sub.items():
                out[p] = out.get(p, 0) + k * e
            return
    d = _brent_rho(n)
    _factor_hard(d, out)
    _factor_hard(n // d, out)


def factorize(n: int) -> list[tuple[int, int]]:
    """Full prime factorization of n >= 1 as (prime, exponent) pairs.

    Pairs are sorted by prime; factorize(1) == [].
    """
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    if n == 1:
        return []
    factors: dict[int, int] = {}
    checkpoint = 10_000
    for p in _small_primes():
        if p * p > n:
            break
        if p > checkpoint:
            # a primality test is far cheaper than the remaining table
            if is_prime(n):
                factors[n] = 1
                n = 1
                break
            checkpoint *= 10
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors[p] = e
    if n > 1:
        if n < _TRIAL_LIMIT * _TRIAL_LIMIT:
            factors[n] = 1
        else:
            _factor_hard(n, factors)
    return sorted(factors.items())


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Split n >= 1 as n = n1 * n2**2 with n1 squarefree."""
    if n < 1:
        raise ValueError("squarefree_decompose requires n >= 1")
    n1 = n2 = 1
    for p, e in factorize(n):
        if e & 1:
            n1 *= p
        n2 *= p ** (e >> 1)
    return n1, n2


def radical(n: int) -> int:
    """Product of the distinct primes dividing n; radical(1) == 1."""
    if n < 1:
        raise ValueError("radical requires n >= 1")
    r = 1
    for p, _ in factorize(n):
        r *= p
    return r


def _tonelli_shanks(a: int, p: int) -> int:
    """One square root of a quadratic residue a modulo an odd prime p."""
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # write p - 1 = q * 2^s with q odd
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m = s
    c = pow(z, q, p)
    t = pow(a, q, p)
    r = pow(a, (q + 1) // 2, p)
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m = i
        c = b * b % p
        t = t * c % p
        r = r * b % p
    return r


def _unit_sqrt_mod(c: int, p: int, k: int) -> list[int]:
    # solve x^2 = c (mod p^k) for c a unit mod p
    if p == 2:
        if k == 1:
            return [1]
        if k == 2:
            return [1, 3] if c % 4 == 1 else []
        if c % 8 != 1:
            return []
        x = 1
        for j in range(3, k):
            if (x * x - c) % (1 << (j + 1)):
                x += 1 << (j - 1)
        q = 1 << k
        half = 1 << (k - 1)
        return sorted({x, q - x, (x + half) % q, (q - x + half) % q})
    if pow(c % p, (p - 1) // 2, p) != 1:
        return []
    r = _tonelli_shanks(c % p, p)
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        mod = p**prec
        r = (r - (r * r - c) * pow(2 * r, -1, mod)) % mod
    q = p**k
    return sorted({r, q - r})


def sqrt_mod_prime_power(c: int, p: int, k: int) -> list[int]:
    """All solutions of x^2 = c (mod p^k), sorted ascending.

    Handles every case: c a unit, c divisible by p but nonzero
    (solvable only when the p-adic valuation of c is even), and
    c = 0 mod p^k.  Returns [] when no solution exists.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = p**k
    c %= q
    if c == 0:
        step = p ** ((k + 1) // 2)
        return list(range(0, q, step))
    e = 0
    cc = c
    while cc % p == 0:
        cc //= p
        e += 1
    if e:
        if e & 1:
            return []
        half = e >> 1
        base = _unit_sqrt_mod(cc, p, k - e)
        if not base:
            return []
        pe = p**half
        period = p ** (k - e)
        sols = []
        for w in base:
            for i in range(pe):
                sols.append(pe * (w + i * period))
        return sorted(sols)
    return _unit_sqrt_mod(c, p, k)


def crt(congruences: list[tuple[int, int]]) -> tuple[int, int]:
    """Combine congruences x = r_i (mod m_i) with pairwise coprime moduli.

    Returns (r, M) with M the product of the moduli and 0 <= r < M.
    """
    r0, m0 = 0, 1
    for r, m in congruences:
        if m < 1:
            raise ValueError("moduli must be >= 1")
        if math.gcd(m0, m) != 1:
            raise ValueError("moduli are not pairwise coprime")
        diff = (r - r0) % m
        r0 += m0 * (diff * pow(m0, -1, m) % m)
        m0 *= m
    return r0 % m0, m0
