"""Scatter of gap ratios b/a against a, with bound-curve overlays.

Input is the pair survey's CSV (columns a,b,t) and report JSON; both
are consumed strictly through their documented schemas.  Trivial rows
(a = 1) are excluded from the plot.  The two overlay curves are the
report's displayed lower-bound curves divided by a, so they live on
the same ratio axis as the scatter:

    ratio1(a) = (ln a)^(1/8) / (ln max(e, ln a))^12
    ratio2(a) = a^(1/14 - epsilon)

both with implied constant 1.  epsilon comes from --epsilon, else from
the report manifest's config, else 0.01.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

REQUIRED_COLUMNS = ("a", "b", "t")
DEFAULT_EPSILON = 0.01


class PlotError(Exception):
    """Bad input data: missing files, columns, or malformed rows."""


@dataclass
class PlotSpec:
    pairs_path: str
    report_path: str
    out_path: str
    log_x: bool = False
    log_y: bool = False
    epsilon: Optional[float] = None


def read_pairs(path: str) -> list[tuple[int, int, int]]:
    """Rows of the pairs CSV as (a, b, t), header validated by name."""
    try:
        fh = open(path, encoding="utf-8", newline="")
    except OSError as exc:
        raise PlotError(f"cannot read pairs CSV: {exc}")
    with fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in REQUIRED_COLUMNS:
            if column not in header:
                raise PlotError(
                    f"pairs CSV {path} is missing column '{column}'"
                )
        rows = []
        for lineno, row in enumerate(reader, start=2):
            try:
                rows.append((int(row["a"]), int(row["b"]), int(row["t"])))
            except (TypeError, ValueError):
                raise PlotError(
                    f"pairs CSV {path} line {lineno}: non-integer field"
                )
    return rows


def read_report(path: str) -> dict:
    """The report JSON, checked for its documented top-level keys."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise PlotError(f"cannot read report JSON: {exc}")
    except json.JSONDecodeError as exc:
        raise PlotError(f"report JSON {path} is not valid JSON: {exc}")
    if not isinstance(doc, dict):
        raise PlotError(f"report JSON {path}: expected a JSON object")
    for key in ("buckets", "manifest"):
        if key not in doc:
            raise PlotError(f"report JSON {path} is missing key '{key}'")
    return doc


def _resolve_epsilon(spec: PlotSpec, report: dict) -> float:
    if spec.epsilon is not None:
        return spec.epsilon
    config = report.get("manifest", {}).get("config", {})
    value = config.get("epsilon")
    return float(value) if value is not None else DEFAULT_EPSILON


def _ratio_bound1(a: float) -> float:
    la = math.log(a)
    return la**0.125 / math.log(max(math.e, la)) ** 12


def _ratio_bound2(a: float, epsilon: float) -> float:
    return math.exp((1 / 14 - epsilon) * math.log(a))


def _curve_grid(lo: float, hi: float, log_x: bool, n: int = 256):
    if lo < 2.0:
        lo = 2.0
    if hi <= lo:
        hi = lo + 1.0
    if log_x:
        step = (math.log(hi) - math.log(lo)) / (n - 1)
        return [math.exp(math.log(lo) + i * step) for i in range(n)]
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def build_figure(spec: PlotSpec):
    """Assemble the figure; returns (figure, nontrivial point count)."""
    rows = read_pairs(spec.pairs_path)
    report = read_report(spec.report_path)
    epsilon = _resolve_epsilon(spec, report)
    points = [(a, b / a) for a, b, _ in rows if a >= 2]

    fig, ax = plt.subplots(figsize=(8, 5))
    if points:
        ax.scatter(
            [p[0] for p in points],
            [p[1] for p in points],
            s=4,
            alpha=0.35,
            linewidths=0,
            label=f"pairs ({len(points)})",
        )
        a_lo = min(p[0] for p in points)
        a_hi = max(p[0] for p in points)
    else:
        a_lo, a_hi = 2.0, 100.0
    grid = _curve_grid(a_lo, a_hi, spec.log_x)
    ax.plot(
        grid,
        [_ratio_bound1(a) for a in grid],
        color="tab:red",
        label="(ln a)^(1/8) / (ln max(e, ln a))^12, c = 1",
    )
    ax.plot(
        grid,
        [_ratio_bound2(a, epsilon) for a in grid],
        color="tab:green",
        linestyle="--",
        label=f"a^(1/14 - {epsilon:g}), c = 1",
    )
    if spec.log_x:
        ax.set_xscale("log")
    if spec.log_y:
        ax.set_yscale("log")
    ax.set_xlabel("a")
    ax.set_ylabel("b / a")
    ax.set_title("gap ratios of divisible pairs")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig, len(points)


def render_plot(spec: PlotSpec) -> int:
    """Write the figure to spec.out_path; returns the point count."""
    fig, count = build_figure(spec)
    try:
        fig.savefig(spec.out_path, dpi=150)
    finally:
        plt.close(fig)
    return count


def main(argv: Optional[list[str]] = None) -> None:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="scatter b/a against a with bound-curve overlays",
    )
    parser.add_argument("--pairs", required=True, help="pairs CSV path")
    parser.add_argument("--report", required=True, help="report JSON path")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--log-x", action="store_true", dest="log_x")
    parser.add_argument("--epsilon", type=float)
    args = parser.parse_args(argv)
    spec = PlotSpec(
        pairs_path=args.pairs,
        report_path=args.report,
        out_path=args.out,
        log_x=args.log_x,
        epsilon=args.epsilon,
    )
    try:
        count = render_plot(spec)
    except PlotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(1)
    print(f"wrote {spec.out_path} with {count} points")
    sys.exit(0)


if __name__ == "__main__":
    main()
