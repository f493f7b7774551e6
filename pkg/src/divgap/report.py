"""CSV serialization and survey aggregation.

All CSV output is byte-oriented with LF line endings so identical
inputs produce byte-identical files on every platform.  Integer fields
are written exactly; real-valued fields use 12 significant digits.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Iterable, Iterator, Optional

from . import __version__
from .abc_triples import abc_decompose, classify_case
from .decomp import (
    decompose,
    gap_bound_thm1,
    gap_bound_thm2,
    verify_identities,
)
from .pairs import PairRecord

logger = logging.getLogger("divgap.report")


class SerializationError(ValueError):
    """Raised for unknown schemas, mismatched records, or bad CSV input."""


SCHEMAS = {
    "pairs": ("a", "b", "t"),
    "decomp": ("a", "b", "t", "D", "x", "y", "T", "m", "s", "lambda"),
    "abc": (
        "a",
        "b",
        "t",
        "d",
        "d1",
        "d2",
        "S",
        "A",
        "B",
        "C",
        "rad",
        "quality",
        "branch",
    ),
    "points": ("t", "s", "X", "Y"),
}


def _real(v: float) -> str:
    return format(v, ".12g")


def _row_values(schema: str, record) -> tuple[str, ...]:
    try:
        if schema == "pairs":
            a, b, t = record
            return (str(a), str(b), str(t))
        if schema == "decomp":
            (a, b, t), d, x, y, tt, m, s, lam = record
            return tuple(map(str, (a, b, t, d, x, y, tt, m, s, lam)))
        if schema == "abc":
            rec, abc = record
            a, b, t = rec.pair
            return (
                *map(str, (a, b, t)),
                *map(str, (abc.d, abc.d1, abc.d2, abc.S)),
                *map(str, (abc.A, abc.B, abc.C, abc.rad)),
                _real(abc.quality),
                classify_case(rec).value,
            )
        if schema == "points":
            t, s, x, y = record
            return tuple(map(str, (t, s, x, y)))
    except (TypeError, ValueError) as exc:
        raise SerializationError(
            f"record {record!r} does not match schema {schema!r}"
        ) from exc
    raise SerializationError(f"unknown schema {schema!r}")


def emit_csv(records: Iterable, schema: str) -> Iterator[bytes]:
    """Yield a CSV byte stream: header line, then one line per record."""
    if schema not in SCHEMAS:
        raise SerializationError(f"unknown schema {schema!r}")
    yield (",".join(SCHEMAS[schema]) + "\n").encode()
    for record in records:
        yield (",".join(_row_values(schema, record)) + "\n").encode()


def parse_pairs_csv(lines: Iterable[str]) -> list[PairRecord]:
    """Read a pairs CSV back into records, validating the header."""
    it = iter(lines)
    try:
        header = next(it).strip()
    except StopIteration:
        raise SerializationError("empty input: missing pairs header")
    if header != ",".join(SCHEMAS["pairs"]):
        raise SerializationError(
            f"bad pairs header {header!r}, expected 'a,b,t'"
        )
    out = []
    for lineno, line in enumerate(it, start=2):
        line = line.strip()
        if not line:
            continue
        cells = line.split(",")
        if len(cells) != 3:
            raise SerializationError(f"line {lineno}: expected 3 fields")
        try:
            a, b, t = (int(c) for c in cells)
        except ValueError:
            raise SerializationError(f"line {lineno}: non-integer field")
        out.append(PairRecord(a, b, t))
    return out


@dataclass(frozen=True)
class BucketStats:
    a_lo: int
    a_hi: int
    pair_count: int
    min_ratio_pair: tuple[int, int]
    min_t: int
    max_quality: float
    min_t_over_a27: float


@dataclass
class RunManifest:
    config: dict
    tool_version: str
    started_at: str
    finished_at: str
    worker_count: int
    total_pairs: int
    identity_failures: int


@dataclass
class GapReport:
    buckets: list[BucketStats]
    global_min_ratio: Optional[tuple[int, int]]
    bound_curve_samples: list[tuple[float, float, float]]
    manifest: RunManifest


def _ratio_less(p: PairRecord, q: PairRecord) -> bool:
    # exact comparison of b/a, ties broken by smaller (a, b)
    lhs = p.b * q.a
    rhs = q.b * p.a
    if lhs != rhs:
        return lhs < rhs
    return (p.a, p.b) < (q.a, q.b)


def aggregate_report(
    pairs: Iterable[PairRecord],
    bucket_width: int = 10,
    epsilon: float = 0.01,
    config_echo: Optional[dict] = None,
    worker_count: int = 1,
) -> GapReport:
    """Aggregate a pair stream into gap statistics.

    Trivial pairs (a = 1) count toward the manifest total but are
    excluded from buckets and ratio statistics.  Every nontrivial pair
    is decomposed and its identities re-verified on the way through;
    failures are counted (and logged) rather than aborting the run.
    """
    if bucket_width < 1:
        raise ValueError("bucket_width must be >= 1")
    if not 0 < epsilon < 15 / 14:
        raise ValueError("epsilon must lie in (0, 15/14)")
    started = datetime.now(timezone.utc).isoformat()
    total = 0
    failures = 0
    best: dict[int, dict] = {}
    global_min: Optional[PairRecord] = None
    for pair in pairs:
        total += 1
        if pair.a < 2:
            continue
        try:
            rec = decompose(pair)
        except ValueError:
            failures += 1
            logger.error("pair %s fails exact re-verification", tuple(pair))
            continue
        if not verify_identities(rec).all_ok:
            failures += 1
            logger.error("pair %s fails identity verification", tuple(pair))
            continue
        qual = abc_decompose(rec).quality
        lo = (pair.a // bucket_width) * bucket_width
        slot = best.get(lo)
        if slot is None:
            slot = best[lo] = {
                "count": 0,
                "min_ratio": pair,
                "min_t": pair.t,
                "max_q": qual,
                "min_t27": pair.t / pair.a ** (2 / 7),
            }
        slot["count"] += 1
        if _ratio_less(pair, slot["min_ratio"]):
            slot["min_ratio"] = pair
        slot["min_t"] = min(slot["min_t"], pair.t)
        slot["max_q"] = max(slot["max_q"], qual)
        slot["min_t27"] = min(slot["min_t27"], pair.t / pair.a ** (2 / 7))
        if global_min is None or _ratio_less(pair, global_min):
            global_min = pair
    buckets = []
    samples = []
    for lo in sorted(best):
        slot = best[lo]
        hi = lo + bucket_width - 1
        buckets.append(
            BucketStats(
                a_lo=lo,
                a_hi=hi,
                pair_count=slot["count"],
                min_ratio_pair=(slot["min_ratio"].a, slot["min_ratio"].b),
                min_t=slot["min_t"],
                max_quality=slot["max_q"],
                min_t_over_a27=slot["min_t27"],
            )
        )
        mid = (lo + hi) / 2
        samples.append(
            (mid, gap_bound_thm1(mid), gap_bound_thm2(mid, epsilon))
        )
    manifest = RunManifest(
        config=dict(config_echo or {}),
        tool_version=__version__,
        started_at=started,
        finished_at=datetime.now(timezone.utc).isoformat(),
        worker_count=worker_count,
        total_pairs=total,
        identity_failures=failures,
    )
    return GapReport(
        buckets=buckets,
        global_min_ratio=(
            (global_min.a, global_min.b) if global_min else None
        ),
        bound_curve_samples=samples,
        manifest=manifest,
    )


def report_to_json(report: GapReport) -> dict:
    """Plain-dict form of a report, ready for json.dumps."""
    return {
        "buckets": [
            {
                "a_range": [b.a_lo, b.a_hi],
                "pair_count": b.pair_count,
                "min_ratio_pair": [
                    b.min_ratio_pair[0],
                    b.min_ratio_pair[1],
                    b.min_ratio_pair[1] / b.min_ratio_pair[0],
                ],
                "min_t": b.min_t,
                "max_quality": b.max_quality,
                "min_t_over_a27": b.min_t_over_a27,
            }
            for b in report.buckets
        ],
        "global_min_ratio": (
            [
                report.global_min_ratio[0],
                report.global_min_ratio[1],
                report.global_min_ratio[1] / report.global_min_ratio[0],
            ]
            if report.global_min_ratio
            else None
        ),
        "bound_curve_samples": [list(s) for s in report.bound_curve_samples],
        "manifest": {
            "config": report.manifest.config,
            "tool_version": report.manifest.tool_version,
            "started_at": report.manifest.started_at,
            "finished_at": report.manifest.finished_at,
            "worker_count": report.manifest.worker_count,
            "total_pairs": report.manifest.total_pairs,
            "identity_failures": report.manifest.identity_failures,
        },
    }
