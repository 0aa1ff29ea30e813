"""Command-line entry point: ``seqdiv {discretize,monitor,gen,eval}``.

Every command is deterministic in its inputs, flags and seed. Failures
exit non-zero with a one-line JSON error on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from seqdiv.discretize import CutPointConfig, SaxConfig, cutpoint_discretize, read_series_csv, sax_discretize
from seqdiv.divergence import WeightVector
from seqdiv.errors import SeqDivError
from seqdiv.evalgen import GeneratedDataset, gen_dc, gen_jm, roc_auc, score_dataset
from seqdiv.monitor import MEASURES, DeltaWindow, MonitorConfig, run_monitor
from seqdiv.symbolic import read_symbol_stream, write_symbol_stream

GENERATORS = {"dc": gen_dc, "jm": gen_jm}


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _floats(text: str) -> list[float]:
    return [float(v) for v in str(text).split(",") if v.strip()]


def _ints(text: str) -> list[int]:
    """``"3,5,7"`` or ranges like ``"3-10"``."""
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _delta(text: str) -> DeltaWindow:
    lo, hi = (int(v) for v in str(text).split(","))
    return DeltaWindow(lo, hi)


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _echo_config(args, path: Path) -> None:
    cfg = {}
    for key, value in vars(args).items():
        if key in ("func", "config"):
            continue
        cfg[key] = f"{value.lo},{value.hi}" if isinstance(value, DeltaWindow) else value
    _atomic_write(path, json.dumps(cfg, indent=2, sort_keys=True, default=str) + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="seqdiv", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="JSON file whose keys mirror the command's flags")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    d = sub.add_parser("discretize", help="numeric CSV -> symbol stream")
    d.add_argument("--input", required=True)
    d.add_argument("--output", required=True)
    d.add_argument("--method", choices=("sax", "cutpoints"), default="sax")
    d.add_argument("--k", type=int, default=3)
    d.add_argument("--segment", type=int, default=1)
    d.add_argument("--cutpoints", type=_floats)
    d.set_defaults(func=cmd_discretize)

    m = sub.add_parser("monitor", help="symbol stream -> JSON-lines divergence reports")
    m.add_argument("--input", required=True)
    m.add_argument("--output", default="-")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--mode", choices=("growing", "sliding"), default="sliding")
    m.add_argument("--m", type=int, default=2)
    m.add_argument("--measure", choices=MEASURES, default="gjs-sv")
    m.add_argument("--alpha", type=float, default=0.05)
    m.add_argument("--damping", type=float, default=0.99)
    m.add_argument("--weights", default="equal", help="'equal' or comma-separated weights")
    m.add_argument("--pretty", action="store_true", help="print a readable table to stdout")
    m.set_defaults(func=cmd_monitor)

    g = sub.add_parser("gen", help="write a synthetic dataset and its change-point sidecar")
    g.add_argument("--dataset", choices=sorted(GENERATORS), required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--output", required=True)
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("eval", help="AUC of each measure over a k sweep")
    e.add_argument("--input", help="dataset CSV with a .json change-point sidecar")
    e.add_argument("--dataset", choices=sorted(GENERATORS), help="generate instead of reading --input")
    e.add_argument("--seed", type=int)
    e.add_argument("--out-dir", required=True)
    e.add_argument("--segment", type=int, default=3)
    e.add_argument("--n", type=int, default=100)
    e.add_argument("--mode", choices=("growing", "sliding"), default="sliding")
    e.add_argument("--m", type=int, default=2)
    e.add_argument("--k-sweep", type=_ints, default=[3])
    e.add_argument("--measures", type=lambda s: [x.strip() for x in s.split(",") if x.strip()],
                   default=list(MEASURES))
    e.add_argument("--delta", type=_delta, default=DeltaWindow(-5, 5))
    e.add_argument("--delta-anchor", choices=("end", "junction"), default="end",
                   help="anchor Delta at the last symbol consumed (end) or where the newest sequence begins")
    e.add_argument("--alpha", type=float, default=0.05)
    e.add_argument("--damping", type=float, default=0.99)
    e.add_argument("--jobs", type=int, default=1)
    e.set_defaults(func=cmd_eval)
    return p


def cmd_discretize(args) -> None:
    values = read_series_csv(args.input)
    if args.method == "sax":
        seq = sax_discretize(values, SaxConfig(args.k, args.segment))
    else:
        if not args.cutpoints:
            raise CliError("--method cutpoints needs --cutpoints v1,v2,...")
        seq = cutpoint_discretize(values, CutPointConfig(tuple(args.cutpoints)))
    write_symbol_stream(args.output, seq.alphabet, seq.data)
    _echo_config(args, Path(args.output + ".config.json"))


def _weights(text: str):
    if text is None or str(text).strip().lower() == "equal":
        return None
    return WeightVector(tuple(_floats(text)))


def cmd_monitor(args) -> None:
    cfg = MonitorConfig(
        n=args.n,
        mode=args.mode,
        m=args.m,
        measure=args.measure,
        d=args.damping,
        alpha=args.alpha,
        weights=_weights(args.weights),
    )
    alphabet, stream = read_symbol_stream(args.input)
    reports = run_monitor(cfg, stream, alphabet)
    text = "".join(r.to_json() + "\n" for r in reports)
    if args.output == "-":
        if not args.pretty:
            sys.stdout.write(text)
    else:
        _atomic_write(Path(args.output), text)
        _echo_config(args, Path(args.output + ".config.json"))
    if args.pretty:
        print(f"{'step':>5} {'m':>3} {'N':>6} {'value':>12} {'threshold':>10}  alert")
        for r in reports:
            thr = "-" if r.threshold is None else f"{r.threshold:.4f}"
            print(f"{r.step_index:>5} {r.window_sequences:>3} {r.total_symbols:>6} {r.value:>12.6f} {thr:>10}  "
                  f"{'ALERT' if r.alert else ''}")


def cmd_gen(args) -> None:
    ds = GENERATORS[args.dataset](args.seed)
    ds.write(args.output)
    _echo_config(args, Path(args.output + ".config.json"))


def _eval_cell(ds: GeneratedDataset, k: int, args, out_dir: Path) -> dict[str, float]:
    results = score_dataset(
        ds,
        SaxConfig(k, args.segment),
        args.n,
        args.measures,
        args.delta,
        mode=args.mode,
        m=args.m,
        d=args.damping,
        alpha=args.alpha,
        delta_anchor=args.delta_anchor,
    )
    aucs = {}
    for measure, (reports, series) in results.items():
        roc = roc_auc(series)
        rows = ["boundary,value,label"]
        for r, lab in zip(reports, series.labels):
            rows.append(f"{r.boundary},{'inf' if math.isinf(r.value) else repr(r.value)},{int(lab)}")
        _atomic_write(out_dir / f"k{k}" / f"{measure}.scores.csv", "\n".join(rows) + "\n")
        _atomic_write(out_dir / f"k{k}" / f"{measure}.roc.csv", roc.to_csv())
        aucs[measure] = roc.auc
    return aucs


def cmd_eval(args) -> None:
    if args.dataset:
        if args.seed is None:
            raise CliError("--dataset needs an explicit --seed")
        ds = GENERATORS[args.dataset](args.seed)
    elif args.input:
        ds = GeneratedDataset.read(args.input)
    else:
        raise CliError("eval needs --input or --dataset")
    unknown = [m for m in args.measures if m not in MEASURES]
    if unknown:
        raise CliError(f"unknown measures: {unknown}")
    out_dir = Path(args.out_dir)
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        per_k = list(pool.map(lambda k: _eval_cell(ds, k, args, out_dir), args.k_sweep))
    summary = {str(k): aucs for k, aucs in zip(args.k_sweep, per_k)}
    _atomic_write(out_dir / "summary.json", json.dumps({"auc": summary}, indent=2) + "\n")
    _echo_config(args, out_dir / "config.json")


def _expand_config(argv: list[str]) -> list[str]:
    """Splice ``--config`` values into argv as flags; explicit flags come later and win."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    ns, rest = pre.parse_known_args(argv)
    if not ns.config:
        return argv
    try:
        cfg = json.loads(Path(ns.config).read_text())
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot read config {ns.config}: {exc}") from None
    commands = ("discretize", "monitor", "gen", "eval")
    idx = next((i for i, a in enumerate(rest) if a in commands), None)
    if idx is None:
        if cfg.get("command") not in commands:
            raise CliError("no command given on the command line or in the config")
        rest = [cfg["command"]] + rest
        idx = 0
    extra = []
    for key, value in cfg.items():
        if key in ("command", "config") or value is None:
            continue
        flag = "--" + key.replace("_", "-")
        if isinstance(value, bool):
            if value:
                extra.append(flag)
        elif isinstance(value, list):
            extra += [flag, ",".join(str(v) for v in value)]
        else:
            extra += [flag, str(value)]
    return rest[: idx + 1] + extra + rest[idx + 1 :]


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_expand_config(argv))
        if args.command is None:
            raise CliError("a command is required: discretize, monitor, gen, eval")
        args.func(args)
    except (CliError, SeqDivError, OSError, ValueError) as exc:
        kind = "usage" if isinstance(exc, CliError) else type(exc).__name__
        sys.stderr.write(json.dumps({"error": kind, "message": str(exc)}) + "\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
