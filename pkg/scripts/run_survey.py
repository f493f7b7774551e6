#!/usr/bin/env python3
"""Run a full survey: scan, decompose, abc, report, all to an output dir.

Writes pairs.csv, decomp.csv, abc.csv, and report.json, then prints a
short summary.  Every identity is re-verified along the way; the script
exits nonzero if any check fails.
"""

import argparse
import json
import sys
import time
from pathlib import Path

from divgap.abc_triples import abc_decompose, verify_branch_bounds
from divgap.decomp import decompose, verify_identities
from divgap.pairs import SearchConfig, Strategy, scan
from divgap.report import aggregate_report, emit_csv, report_to_json


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--a-min", type=int, default=2)
    parser.add_argument("--a-max", type=int, default=100)
    parser.add_argument("--b-max", type=int, default=10**5)
    parser.add_argument(
        "--strategy", choices=["naive", "congruence"], default="congruence"
    )
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--bucket-width", type=int, default=10)
    parser.add_argument("--epsilon", type=float, default=0.01)
    parser.add_argument("--outdir", type=Path, default=Path("survey-out"))
    args = parser.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    config = SearchConfig(
        a_min=args.a_min,
        a_max=args.a_max,
        b_max=args.b_max,
        strategy=Strategy(args.strategy),
        jobs=args.jobs,
    )

    t0 = time.perf_counter()
    pairs = list(scan(config))
    scan_time = time.perf_counter() - t0
    print(f"scan: {len(pairs)} pairs in {scan_time:.2f}s")

    with open(args.outdir / "pairs.csv", "wb") as fh:
        for chunk in emit_csv(pairs, "pairs"):
            fh.write(chunk)

    t0 = time.perf_counter()
    failures = 0
    decomps = []
    for pair in pairs:
        rec = decompose(pair)
        if not verify_identities(rec).all_ok:
            failures += 1
            print(f"IDENTITY FAILURE: {tuple(pair)}", file=sys.stderr)
        decomps.append(rec)
    with open(args.outdir / "decomp.csv", "wb") as fh:
        for chunk in emit_csv(decomps, "decomp"):
            fh.write(chunk)
    print(f"decompose: {len(decomps)} records in "
          f"{time.perf_counter() - t0:.2f}s, {failures} failures")

    t0 = time.perf_counter()
    abc_rows = []
    for rec in decomps:
        abc = abc_decompose(rec)
        if not verify_branch_bounds(rec, abc).all_ok:
            failures += 1
            print(f"BRANCH FAILURE: {tuple(rec.pair)}", file=sys.stderr)
        abc_rows.append((rec, abc))
    with open(args.outdir / "abc.csv", "wb") as fh:
        for chunk in emit_csv(abc_rows, "abc"):
            fh.write(chunk)
    best = max(abc_rows, key=lambda row: row[1].quality)
    print(f"abc: {len(abc_rows)} triples in {time.perf_counter() - t0:.2f}s; "
          f"best quality {best[1].quality:.4f} at {tuple(best[0].pair)}")

    report = aggregate_report(
        pairs,
        bucket_width=args.bucket_width,
        epsilon=args.epsilon,
        config_echo=vars(args) | {"outdir": str(args.outdir)},
        worker_count=args.jobs,
    )
    with open(args.outdir / "report.json", "w", encoding="utf-8") as fh:
        json.dump(report_to_json(report), fh, indent=2)
        fh.write("\n")
    if report.global_min_ratio:
        a, b = report.global_min_ratio
        print(f"report: global min ratio b/a = {b / a:.4f} at ({a}, {b})")
    print(f"report: identity failures = "
          f"{report.manifest.identity_failures}")

    return 1 if failures or report.manifest.identity_failures else 0


if __name__ == "__main__":
    sys.exit(main())
