"""Command line: gen, fold, verify, sweep and keysize.

Exit status is 0 exactly when every verdict is true and nothing failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .folding import verify_instance
from .instance import (
    FormatError,
    dumps_canonical,
    error_row,
    make_instance,
    parse,
    parse_field,
    parse_group,
    parse_view,
    report_csv,
    report_json,
    report_row,
    rng_for,
    serialize,
)
from .keysize import KeySize
from .symmetry import SymmetricInstance


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _write_reports(prefix: str, rows: list[dict]) -> None:
    base = prefix[:-5] if prefix.endswith(".json") else prefix
    Path(base + ".json").write_text(report_json(rows))
    Path(base + ".csv").write_text(report_csv(rows))


def cmd_gen(args) -> int:
    F = parse_field(args.field)
    view = parse_view(F, args.view)
    group = parse_group(args.group)
    rng = rng_for(args.seed, 0)
    inst = make_instance(view, group, args.code, args.degree, rng, d=args.d, n0=args.n0,
                         seed=args.seed, strict=args.strict)
    _write(args.out, serialize(inst))
    return 0


def _load(path: str):
    text = Path(path).read_text()
    return text, parse(text)


def cmd_fold(args) -> int:
    text, inst = _load(args.instance)
    if inst.group is None:
        raise FormatError("instance has no symmetry group to fold along")
    rep = verify_instance(inst)
    row = report_row(rep, text, Path(args.instance).name, timing=args.timing)
    if rep.predicted is not None:
        folded = serialize(SymmetricInstance(rep.predicted, None, inst.seed))
        if args.folded:
            Path(args.folded).write_text(folded)
        row["predicted"] = json.loads(folded)
    if args.out:
        _write_reports(args.out, [row])
    else:
        sys.stdout.write(dumps_canonical(row, keys=list(row)))
    return 0 if rep.verdict else 1


def cmd_verify(args) -> int:
    rows = []
    for path in args.instances:
        label = Path(path).name
        text = ""
        try:
            text, inst = _load(path)
            if inst.group is None:
                raise FormatError("instance has no symmetry group")
            row = report_row(verify_instance(inst), text, label, timing=args.timing)
        except (OSError, ValueError) as exc:
            row = error_row(text or path, label, exc)
        rows.append(row)
        status = "PASS" if row["verdict"] else "FAIL"
        extra = f" ({row['error']})" if row.get("error") else ""
        print(f"{status} {label} n={row['n']} -> {row['n_folded']} "
              f"k={row['k']} -> {row['k_folded']}{extra}")
    if args.out:
        _write_reports(args.out, rows)
    return 0 if all(r["verdict"] for r in rows) else 1


def cmd_sweep(args) -> int:
    from .sweep import expand_grid, load_grid, run_sweep, summarize

    grid = load_grid(args.grid)
    if args.trials is not None:
        grid = dict(grid, trials=args.trials)
        grid["cases"] = [{k: v for k, v in c.items() if k != "trials"} for c in grid.get("cases", [])]
    jobs = expand_grid(grid)
    rows = run_sweep(jobs, seed=args.seed, workers=args.jobs, corrupt_rate=args.corrupt_rate,
                     timing=args.timing, primal=args.primal)
    if args.out:
        _write_reports(args.out, rows)
    summary = summarize(rows)
    print(json.dumps(summary, sort_keys=True))
    return 0 if summary["failed"] == 0 else 1


def cmd_keysize(args) -> int:
    ks = KeySize(args.n, args.k, args.q, args.group_order)
    for line in ks.lines():
        print(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="foldcodes", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a symmetric alternant or Goppa instance")
    g.add_argument("--code", choices=("alternant", "goppa"), default="alternant")
    g.add_argument("--field", required=True, help="p:m[:c0,...,cm]")
    g.add_argument("--view", help="q:m, the subfield the code lives over (default: prime field)")
    g.add_argument("--group", required=True,
                   help="qc:a,b | qc:order=l | qm:s0,s1,... | qm:lambda=k (qd is an alias of qm)")
    g.add_argument("--degree", type=int, required=True,
                   help="t for alternant codes, degree of Q for Goppa codes")
    g.add_argument("--d", type=int, default=0, help="multiplier twist alpha = a^d (cyclic, a != 1)")
    g.add_argument("--n0", type=int, help="number of orbits / cosets in the support")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--strict", action="store_true",
                   help="distinct multipliers on distinct cosets (shift groups)")
    g.add_argument("--out", help="output path (default: stdout)")
    g.set_defaults(func=cmd_gen)

    f = sub.add_parser("fold", help="fold one instance and compare with the predicted code")
    f.add_argument("instance")
    f.add_argument("--out", help="report prefix; writes PREFIX.json and PREFIX.csv")
    f.add_argument("--folded", help="write the predicted folded code as an instance file")
    f.add_argument("--timing", action="store_true", help="include wall time in reports")
    f.set_defaults(func=cmd_fold)

    v = sub.add_parser("verify", help="verify instance files")
    v.add_argument("instances", nargs="+")
    v.add_argument("--out", help="report prefix; writes PREFIX.json and PREFIX.csv")
    v.add_argument("--timing", action="store_true")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="run a verification campaign over a parameter grid")
    s.add_argument("--grid", help="grid JSON file (default: built-in desk-scale grid)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    s.add_argument("--trials", type=int, help="override the trials per grid point")
    s.add_argument("--corrupt-rate", type=float, default=0.0,
                   help="fraction of instances verified against a perturbed prediction")
    s.add_argument("--primal", action="store_true",
                   help="also check the folded primal code against the predicted alternant code")
    s.add_argument("--out", help="report prefix; writes PREFIX.json and PREFIX.csv")
    s.add_argument("--timing", action="store_true")
    s.set_defaults(func=cmd_sweep)

    k = sub.add_parser("keysize", help="key sizes before and after folding")
    k.add_argument("n", type=int)
    k.add_argument("k", type=int)
    k.add_argument("q", type=int)
    k.add_argument("group_order", type=int)
    k.set_defaults(func=cmd_keysize)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
