"""Enumeration of divisible pairs.

A pair (a, b) with 1 <= a < b is *divisible* when a^2(a^2+1) divides
b^2(b^2+1); the quotient is called t.  Pairs with a = 1 are trivial
(a^2(a^2+1) = 2 divides everything of that shape) and are excluded
unless explicitly requested.

Two scan strategies are provided.  Naive tests every candidate b with
exact integer arithmetic and serves as the reference semantics.
Congruence precomputes the full set of residues r mod a^2(a^2+1) that a
divisible b must lie in, walks only those arithmetic progressions, and
re-verifies each candidate exactly, so its output is identical by
construction.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, NamedTuple, Optional

from .arith import factorize, sqrt_mod_prime_power


class ConfigError(ValueError):
    """Raised for invalid search configuration values."""


class Strategy(Enum):
    NAIVE = "naive"
    CONGRUENCE = "congruence"


class PairRecord(NamedTuple):
    a: int
    b: int
    t: int


class ResidueClassSet(NamedTuple):
    modulus: int
    residues: tuple[int, ...]


@dataclass(frozen=True)
class SearchConfig:
    a_min: int
    a_max: int
    b_max: int
    strategy: Strategy = Strategy.CONGRUENCE
    include_trivial: bool = False
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.a_min < 1:
            raise ConfigError("a_min must be >= 1")
        if self.a_max < self.a_min:
            raise ConfigError("a_max must be >= a_min")
        if self.b_max <= self.a_max:
            raise ConfigError("b_max must exceed a_max")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if not isinstance(self.strategy, Strategy):
            raise ConfigError(f"unknown strategy: {self.strategy!r}")


def divides_with_quotient(a: int, b: int) -> Optional[int]:
    """Return t = b^2(b^2+1) / a^2(a^2+1) if integral, else None."""
    if a < 1:
        raise ValueError("a must be >= 1")
    if b <= a:
        raise ValueError("b must exceed a")
    m = a * a * (a * a + 1)
    n = b * b * (b * b + 1)
    q, r = divmod(n, m)
    return q if r == 0 else None


def residue_classes(a: int) -> ResidueClassSet:
    """Residues r mod M = a^2(a^2+1) with M | r^2(r^2+1).

    b is part of a divisible pair with a exactly when b mod M is in the
    returned set.  For each prime power p^k || M the local solutions of
    x^2(x^2+1) = 0 are the x with x^2 = 0 joined with the square roots
    of -1; the classes are then combined multiplicatively by CRT.
    """
    if a < 1:
        raise ValueError("a must be >= 1")
    prime_powers: dict[int, int] = {}
    for p, e in factorize(a):
        prime_powers[p] = 2 * e
    for p, e in factorize(a * a + 1):
        prime_powers[p] = prime_powers.get(p, 0) + e
    residues = [0]
    modulus = 1
    for p, k in sorted(prime_powers.items()):
        q = p**k
        local = set(range(0, q, p ** ((k + 1) // 2)))
        local.update(sqrt_mod_prime_power(-1, p, k))
        inv = pow(modulus, -1, q)
        residues = [
            r + modulus * ((s - r) * inv % q)
            for r in residues
            for s in sorted(local)
        ]
        modulus *= q
    return ResidueClassSet(modulus, tuple(sorted(residues)))


def _scan_one(a: int, b_max: int, strategy: Strategy) -> list[PairRecord]:
    m = a * a * (a * a + 1)
    out = []
    if strategy is Strategy.NAIVE:
        for b in range(a + 1, b_max + 1):
            bb = b * b
            if (bb % m) * ((bb + 1) % m) % m == 0:
                out.append(PairRecord(a, b, bb * (bb + 1) // m))
        return out
    classes = residue_classes(a)
    candidates = []
    for r in classes.residues:
        b = r if r > a else r + m * ((a - r) // m + 1)
        while b <= b_max:
            candidates.append(b)
            b += m
    for b in sorted(candidates):
        bb = b * b
        if (bb % m) * ((bb + 1) % m) % m == 0:
            out.append(PairRecord(a, b, bb * (bb + 1) // m))
    return out


def _scan_chunk(args: tuple[tuple[int, ...], int, str]) -> list[PairRecord]:
    a_values, b_max, strategy_value = args
    strategy = Strategy(strategy_value)
    out: list[PairRecord] = []
    for a in a_values:
        out.extend(_scan_one(a, b_max, strategy))
    return out


def scan(config: SearchConfig) -> Iterator[PairRecord]:
    """Yield every divisible pair in the configured window.

    Records come out sorted by (a, b) regardless of strategy or worker
    count.  With jobs > 1 the a-range is split into contiguous chunks,
    one per worker process, and results are merged in order.
    """
    a_values = [
        a
        for a in range(config.a_min, config.a_max + 1)
        if a > 1 or config.include_trivial
    ]
    if config.jobs == 1 or len(a_values) <= 1:
        for a in a_values:
            yield from _scan_one(a, config.b_max, config.strategy)
        return
    jobs = min(config.jobs, len(a_values))
    n = len(a_values)
    chunks = [
        (
            tuple(a_values[i * n // jobs : (i + 1) * n // jobs]),
            config.b_max,
            config.strategy.value,
        )
        for i in range(jobs)
    ]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_scan_chunk, chunks):
            yield from part


def quotient_bounds_ok(record: PairRecord) -> bool:
    """Exact check of the quotient sandwich t/2 <= (b/a)^4 <= 2t."""
    a, b, t = record
    return t * a**4 <= 2 * b**4 and b**4 <= 2 * t * a**4
