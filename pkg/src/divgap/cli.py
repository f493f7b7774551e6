"""Command-line interface.

Subcommands: scan, decompose, abc, curve, report.  Options may come
from a ``--config`` file of ``key = value`` lines; explicit flags win
over config values, which win over built-in defaults.

Exit codes: 0 on success, 1 when a verification check fails (a
counterexample, printed prominently), 2 for usage or config errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import __version__
from .abc_triples import abc_decompose, verify_abc, verify_branch_bounds
from .curve import enumerate_points
from .decomp import CounterexampleError, decompose, verify_identities
from .pairs import (
    ConfigError,
    PairRecord,
    SearchConfig,
    Strategy,
    divides_with_quotient,
    scan,
)
from .report import (
    SerializationError,
    aggregate_report,
    emit_csv,
    parse_pairs_csv,
    report_to_json,
)


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


# config-file key -> (argparse attribute, converter) per subcommand
_CONFIG_KEYS = {
    "scan": {
        "a_min": ("a_min", int),
        "a_max": ("a_max", int),
        "b_max": ("b_max", int),
        "strategy": ("strategy", str),
        "include_trivial": ("include_trivial", _parse_bool),
        "jobs": ("jobs", int),
        "out": ("out", str),
    },
    "decompose": {},
    "abc": {
        "in": ("in_path", str),
        "out": ("out", str),
    },
    "curve": {
        "t": ("t", int),
        "s": ("s", int),
        "x_max": ("x_max", int),
        "out": ("out", str),
    },
    "report": {
        "in": ("in_path", str),
        "out": ("out", str),
        "bucket_width": ("bucket_width", int),
        "epsilon": ("epsilon", float),
    },
}

_DEFAULTS = {
    "scan": {
        "strategy": "congruence",
        "include_trivial": False,
        "jobs": 1,
        "out": "-",
    },
    "decompose": {},
    "abc": {},
    "curve": {"out": "-"},
    "report": {"bucket_width": 10, "epsilon": 0.01},
}

_REQUIRED = {
    "scan": ("a_min", "a_max", "b_max"),
    "decompose": (),
    "abc": ("in_path", "out"),
    "curve": ("t", "s", "x_max"),
    "report": ("in_path", "out"),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divgap",
        description="search and verification for a^2(a^2+1) | b^2(b^2+1)",
    )
    parser.add_argument(
        "--version", action="version", version=f"divgap {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="enumerate divisible pairs to CSV")
    p.add_argument("--a-min", dest="a_min", type=int)
    p.add_argument("--a-max", dest="a_max", type=int)
    p.add_argument("--b-max", dest="b_max", type=int)
    p.add_argument("--strategy", choices=["naive", "congruence"])
    p.add_argument(
        "--include-trivial", dest="include_trivial", action="store_true",
        default=None,
    )
    p.add_argument("--jobs", type=int)
    p.add_argument("--out", help="output path, or - for stdout")
    p.add_argument("--config", help="key=value config file")

    p = sub.add_parser(
        "decompose", help="decompose one pair and verify its identities"
    )
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument(
        "--json", action="store_true",
        help="compact single-line JSON instead of indented",
    )
    p.add_argument("--config", help="key=value config file")

    p = sub.add_parser("abc", help="abc triples for a pairs CSV")
    p.add_argument("--in", dest="in_path", help="pairs CSV, or - for stdin")
    p.add_argument("--out", help="output path, or - for stdout")
    p.add_argument("--config", help="key=value config file")

    p = sub.add_parser("curve", help="integral points on Y^2 = t X^4 + s")
    p.add_argument("--t", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--x-max", dest="x_max", type=int)
    p.add_argument("--out", help="output path, or - for stdout")
    p.add_argument("--config", help="key=value config file")

    p = sub.add_parser("report", help="aggregate a pairs CSV into JSON")
    p.add_argument("--in", dest="in_path", help="pairs CSV, or - for stdin")
    p.add_argument("--out", help="output path, or - for stdout")
    p.add_argument("--bucket-width", dest="bucket_width", type=int)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--config", help="key=value config file")
    return parser


def _read_config_file(path: str, command: str) -> dict:
    known = _CONFIG_KEYS[command]
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}")
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if key not in known:
            raise ConfigError(
                f"{path}:{lineno}: unknown key {key!r} for {command}"
            )
        attr, conv = known[key]
        try:
            values[attr] = conv(value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}")
    return values


def _merge_options(args: argparse.Namespace) -> dict:
    command = args.command
    merged = dict(_DEFAULTS[command])
    if getattr(args, "config", None):
        merged.update(_read_config_file(args.config, command))
    for key in _CONFIG_KEYS[command].values():
        attr = key[0]
        cli_value = getattr(args, attr, None)
        if cli_value is not None:
            merged[attr] = cli_value
    missing = [k for k in _REQUIRED[command] if merged.get(k) is None]
    if missing:
        raise ConfigError(
            f"missing required option(s) for {command}: "
            + ", ".join(m.replace("_", "-").replace("in-path", "in")
                        for m in missing)
        )
    return merged


def _open_out(path: str):
    if path == "-":
        return sys.stdout.buffer, False
    return open(path, "wb"), True


def _write_stream(path: str, chunks) -> None:
    fh, close = _open_out(path)
    try:
        for chunk in chunks:
            fh.write(chunk)
        fh.flush()
    finally:
        if close:
            fh.close()


def _read_lines(path: str) -> list[str]:
    if path == "-":
        return sys.stdin.readlines()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}")


def _counterexample(message: str) -> None:
    print(f"COUNTEREXAMPLE: {message}", file=sys.stderr)


def _cmd_scan(opts: dict) -> int:
    try:
        strategy = Strategy(opts["strategy"])
    except ValueError:
        raise ConfigError(f"unknown strategy: {opts['strategy']!r}")
    config = SearchConfig(
        a_min=opts["a_min"],
        a_max=opts["a_max"],
        b_max=opts["b_max"],
        strategy=strategy,
        include_trivial=opts["include_trivial"],
        jobs=opts["jobs"],
    )
    _write_stream(opts["out"], emit_csv(scan(config), "pairs"))
    return 0


def _cmd_decompose(args: argparse.Namespace) -> int:
    a, b = args.a, args.b
    try:
        t = divides_with_quotient(a, b)
    except ValueError as exc:
        raise ConfigError(str(exc))
    if t is None:
        raise ConfigError(
            f"a^2(a^2+1) does not divide b^2(b^2+1) for a={a}, b={b}"
        )
    rec = decompose(PairRecord(a, b, t))
    report = verify_identities(rec)
    payload = {
        "pair": {"a": a, "b": b, "t": t},
        "decomposition": {
            "D": rec.D,
            "x": rec.x,
            "y": rec.y,
            "T": rec.T,
            "m": rec.m,
            "s": rec.s,
            "lambda": rec.lam,
        },
        "identities": report._asdict(),
        "all_ok": report.all_ok,
    }
    if args.json:
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(json.dumps(payload, indent=2))
    if not report.all_ok:
        failed = [k for k, v in report._asdict().items() if not v]
        _counterexample(
            f"pair ({a}, {b}, {t}) fails: {', '.join(failed)}"
        )
        return 1
    return 0


def _cmd_abc(opts: dict) -> int:
    pairs = parse_pairs_csv(_read_lines(opts["in_path"]))
    failures = 0
    rows = []
    for pair in pairs:
        try:
            rec = decompose(pair)
        except ValueError:
            failures += 1
            _counterexample(f"pair {tuple(pair)} is not a divisible pair")
            continue
        identities = verify_identities(rec)
        if not identities.all_ok:
            failures += 1
            failed = [k for k, v in identities._asdict().items() if not v]
            _counterexample(
                f"pair {tuple(pair)} fails: {', '.join(failed)}"
            )
            continue
        abc = abc_decompose(rec)
        checks = verify_abc(rec, abc)
        bounds = verify_branch_bounds(rec, abc)
        if not checks.all_ok:
            failures += 1
            failed = [k for k, v in checks._asdict().items() if not v]
            _counterexample(
                f"abc triple of {tuple(pair)} fails: {', '.join(failed)}"
            )
        if not bounds.all_ok:
            failures += 1
            failed = [
                k for k, v in bounds._asdict().items()
                if k != "branch" and not v
            ]
            _counterexample(
                f"branch bounds of {tuple(pair)} fail: {', '.join(failed)}"
            )
        rows.append((rec, abc))
    _write_stream(opts["out"], emit_csv(rows, "abc"))
    return 1 if failures else 0


def _cmd_curve(opts: dict) -> int:
    try:
        points = enumerate_points(opts["t"], opts["s"], opts["x_max"])
    except ValueError as exc:
        raise ConfigError(str(exc))
    _write_stream(opts["out"], emit_csv(points, "points"))
    return 0


def _cmd_report(opts: dict) -> int:
    pairs = parse_pairs_csv(_read_lines(opts["in_path"]))
    try:
        report = aggregate_report(
            pairs,
            bucket_width=opts["bucket_width"],
            epsilon=opts["epsilon"],
            config_echo={
                "in": opts["in_path"],
                "bucket_width": opts["bucket_width"],
                "epsilon": opts["epsilon"],
            },
        )
    except ValueError as exc:
        raise ConfigError(str(exc))
    text = json.dumps(report_to_json(report), indent=2) + "\n"
    _write_stream(opts["out"], [text.encode()])
    if report.manifest.identity_failures:
        _counterexample(
            f"{report.manifest.identity_failures} pair(s) failed "
            "identity verification"
        )
        return 1
    return 0


def run_cli(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "decompose":
            return _cmd_decompose(args)
        opts = _merge_options(args)
        if args.command == "scan":
            return _cmd_scan(opts)
        if args.command == "abc":
            return _cmd_abc(opts)
        if args.command == "curve":
            return _cmd_curve(opts)
        return _cmd_report(opts)
    except (ConfigError, SerializationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CounterexampleError as exc:
        _counterexample(str(exc))
        return 1
    except BrokenPipeError:
        return 0


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
