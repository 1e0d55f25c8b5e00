"""Command-line interface: simulate / analyze / fit / stats.

Every command is a reproducible batch step writing plot-ready CSV or
JSON to declared paths only.  Exit codes: 0 success, 1 usage error,
2 data error (unparseable input, empty result after filtering).
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import corpus, fitstats, simulate
from .errors import ConfigError, OpenNodesError
from .generate import BINARY, LINEAR, Mechanism, multi_node
from .metrics import MetricConfig
from .rng import GenSeed


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="opennodes",
                     description="Working-memory load metrics for tree structures")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="Monte-Carlo load/entropy curves")
    sim.add_argument("--mechanism", action="append",
                     choices=["linear", "binary", "multi"],
                     help="repeatable; default: all three")
    sim.add_argument("--min-len", type=int, default=1)
    sim.add_argument("--max-len", type=int, default=100)
    sim.add_argument("--tokens", type=int, default=1000)
    sim.add_argument("--seed", type=int, required=True,
                     help="base seed; required, no hidden entropy sources")
    sim.add_argument("--sigma", type=float, default=1.0)
    sim.add_argument("--multi-min", type=int, default=1)
    sim.add_argument("--multi-max", type=int, default=4)
    sim.add_argument("--workers", type=int, default=1)
    sim.add_argument("--out", required=True, help="curves CSV path")
    sim.add_argument("--out-compare", help="optional comparison JSON path")

    ana = sub.add_parser("analyze", help="per-sentence loads over a corpus")
    ana.add_argument("--input", required=True)
    ana.add_argument("--format", choices=["jsonl", "bracketed"], default="jsonl")
    ana.add_argument("--iqr-filter", action="store_true",
                     help="exclude sentence-length outliers by the 1.5 IQR rule")
    ana.add_argument("--sigma", type=float, default=1.0)
    ana.add_argument("--strip-labels", action=argparse.BooleanOptionalAction,
                     default=True)
    ana.add_argument("--collapse-unary", action=argparse.BooleanOptionalAction,
                     default=True)
    ana.add_argument("--drop-punct", action="store_true",
                     help="drop leaves made only of punctuation")
    ana.add_argument("--group-key", default="group",
                     help="JSONL field holding the group label")
    ana.add_argument("--group", default="all",
                     help="group label for bracketed input")
    ana.add_argument("--workers", type=int, default=1)
    ana.add_argument("--out-sentences")
    ana.add_argument("--out-summary")
    ana.add_argument("--out-curves")
    ana.add_argument("--out-stats")

    fit = sub.add_parser("fit", help="nonlinear regression on x,y points")
    fit.add_argument("--input", required=True, help="CSV with header x,y")
    fit.add_argument("--model", choices=["log", "logistic"], default="log")
    fit.add_argument("--init", help="comma-separated initial parameters")
    fit.add_argument("--tol", type=float, default=1e-10)
    fit.add_argument("--max-iter", type=int, default=200)
    fit.add_argument("--out", required=True, help="fit JSON path")

    st = sub.add_parser("stats", help="one-sample t-test against a threshold")
    st.add_argument("--input", required=True, help="CSV holding the sample")
    st.add_argument("--column", default="value")
    st.add_argument("--mu0", type=float, required=True)
    st.add_argument("--out", required=True, help="test JSON path")
    return parser


def _check_in_path(path: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise _UsageError(f"input file not found: {path}")
    return p


def _check_out_path(path: str) -> Path:
    p = Path(path)
    if not p.parent.exists():
        raise _UsageError(f"output directory does not exist: {p.parent}")
    return p


def _write(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _cmd_simulate(args) -> int:
    if args.min_len < 1 or args.min_len > args.max_len:
        raise _UsageError(f"need 1 <= min-len <= max-len, got "
                          f"[{args.min_len}, {args.max_len}]")
    if args.tokens < 1:
        raise _UsageError("--tokens must be >= 1")
    if args.workers < 1:
        raise _UsageError("--workers must be >= 1")
    out = _check_out_path(args.out)
    out_compare = _check_out_path(args.out_compare) if args.out_compare else None
    names = args.mechanism or ["linear", "binary", "multi"]
    mechanisms: list[Mechanism] = []
    for name in dict.fromkeys(names):
        if name == "linear":
            mechanisms.append(LINEAR)
        elif name == "binary":
            mechanisms.append(BINARY)
        else:
            mechanisms.append(multi_node(args.multi_min, args.multi_max))
    cfg = simulate.SimConfig(args.min_len, args.max_len, args.tokens,
                             tuple(mechanisms), GenSeed(args.seed), args.sigma)
    curve = simulate.run_simulation(cfg, workers=args.workers)
    _write(out, simulate.curve_to_csv(curve))
    if out_compare is not None:
        comparison = simulate.compare_mechanisms(curve)
        payload = {
            name: {
                "log_fit": comparison.log_fits[name].to_json_dict()
                if name in comparison.log_fits else None,
                "ratios": [[length, ratio] for length, ratio in ratios],
            }
            for name, ratios in sorted(comparison.ratios.items())
        }
        _write(out_compare, json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_analyze(args) -> int:
    in_path = _check_in_path(args.input)
    outputs = {key: getattr(args, f"out_{key}")
               for key in ("sentences", "summary", "curves", "stats")}
    if not any(outputs.values()):
        raise _UsageError("no outputs requested; pass at least one --out-* flag")
    out_paths = {key: _check_out_path(p) for key, p in outputs.items() if p}
    if args.workers < 1:
        raise _UsageError("--workers must be >= 1")

    with open(in_path, encoding="utf-8") as fh:
        documents = corpus.ingest(
            fh, format=args.format, strip_labels=args.strip_labels,
            collapse_unary=args.collapse_unary, drop_punct=args.drop_punct,
            group_key=args.group_key, default_group=args.group)
    records = corpus.analyze(documents, cfg=MetricConfig(args.sigma),
                             apply_filter=args.iqr_filter, workers=args.workers)
    if "sentences" in out_paths:
        _write(out_paths["sentences"], corpus.sentences_to_csv(records))
    if "summary" in out_paths or "curves" in out_paths:
        summaries = corpus.aggregate(records)
        if "summary" in out_paths:
            _write(out_paths["summary"], corpus.summary_to_csv(summaries))
        if "curves" in out_paths:
            _write(out_paths["curves"], corpus.curves_to_csv(summaries))
    if "stats" in out_paths:
        _write(out_paths["stats"], corpus.stats_to_csv(corpus.descriptive_stats(records)))
    return 0


def _read_xy(path: Path) -> list[tuple[float, float]]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or "x" not in reader.fieldnames \
                or "y" not in reader.fieldnames:
            raise OpenNodesError(f"{path}: expected CSV header with columns x,y")
        try:
            return [(float(row["x"]), float(row["y"])) for row in reader]
        except (TypeError, ValueError) as exc:
            raise OpenNodesError(f"{path}: non-numeric point ({exc})") from exc


def _cmd_fit(args) -> int:
    in_path = _check_in_path(args.input)
    out = _check_out_path(args.out)
    points = _read_xy(in_path)
    init = None
    if args.init:
        try:
            init = [float(v) for v in args.init.split(",")]
        except ValueError:
            raise _UsageError(f"--init must be comma-separated floats: {args.init!r}")
    if args.model == "log":
        if init is not None and len(init) != 2:
            raise _UsageError("log model takes 2 initial parameters")
        model = fitstats.LogModel(*init) if init else fitstats.LogModel()
    else:
        if init is not None and len(init) != 3:
            raise _UsageError("logistic model takes 3 initial parameters")
        model = (fitstats.LogisticModel(*init) if init
                 else fitstats.LogisticModel.from_data(points))
    result = fitstats.fit(points, model, tol=args.tol, max_iter=args.max_iter)
    _write(out, json.dumps(result.to_json_dict(), indent=2) + "\n")
    return 0


def _cmd_stats(args) -> int:
    in_path = _check_in_path(args.input)
    out = _check_out_path(args.out)
    with open(in_path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or args.column not in reader.fieldnames:
            raise OpenNodesError(f"{in_path}: no column {args.column!r} in header")
        try:
            values = [float(row[args.column]) for row in reader]
        except (TypeError, ValueError) as exc:
            raise OpenNodesError(f"{in_path}: non-numeric value ({exc})") from exc
    result = fitstats.one_sample_test(values, args.mu0)
    n = len(values)
    mean = sum(values) / n
    sd = (sum((v - mean) ** 2 for v in values) / (n - 1)) ** 0.5
    payload = {"n": n, "mean": mean, "sd": sd, "mu0": args.mu0,
               "t": result.t, "df": result.df, "p_two_sided": result.p_two_sided}
    _write(out, json.dumps(payload, indent=2) + "\n")
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "analyze": _cmd_analyze,
    "fit": _cmd_fit,
    "stats": _cmd_stats,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except OpenNodesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
