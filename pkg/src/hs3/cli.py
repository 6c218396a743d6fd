"""Command-line interface.  Reports are printed as ``key=value`` lines."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .instance_io import GenConfig, GenerationError, ParseError, generate, parse, serialize
from .measure import TableFormatError, bundled_psi4, check_properties, load_table
from .oracle import oracle_min
from .rules import Instance
from .solver import SolverConfig, solve
from .vectors import VERIFIED_RULES, verify_rule

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_instance(path: str) -> Instance:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse(text)
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(**pairs) -> None:
    for key, val in pairs.items():
        print(f"{key}={val}")


def _fmt_set(s) -> str:
    return ",".join(map(str, sorted(s)))


def cmd_solve(args) -> int:
    inst = _read_instance(args.file)
    if args.k is not None:
        inst = Instance(inst.graph, args.k)
    rep = solve(inst, SolverConfig(full_tree=args.full_tree))
    _emit(k=inst.k, decision="yes" if rep.decision else "no", leaves=rep.leaves, nodes=rep.nodes)
    if args.cert and rep.certificate is not None:
        _emit(certificate=_fmt_set(rep.certificate))
    for rule in sorted(rep.rule_counts):
        _emit(**{f"rule.{rule}": rep.rule_counts[rule]})
    if rep.violations:
        _emit(violations=len(rep.violations))
        return EXIT_FAIL
    return EXIT_OK


def cmd_min(args) -> int:
    inst = _read_instance(args.file)
    k = 0
    while True:
        rep = solve(Instance(inst.graph, k))
        if rep.decision:
            _emit(min=k, certificate=_fmt_set(rep.certificate))
            return EXIT_OK
        k += 1


def cmd_oracle(args) -> int:
    inst = _read_instance(args.file)
    _emit(min=oracle_min(inst.graph))
    return EXIT_OK


def cmd_fuzz(args) -> int:
    from .fuzz import run_fuzz

    failed = cases = 0
    for res in run_fuzz(args.count, args.seed, args.max_n):
        cases += res.checked
        if not res.ok:
            failed += 1
            _emit(**{
                f"case.{res.index}.mismatches": res.mismatches,
                f"case.{res.index}.bad_certificates": res.bad_certificates,
                f"case.{res.index}.leaf_violations": res.leaf_violations,
                f"case.{res.index}.invariant_violations": len(res.invariant_violations),
                f"case.{res.index}.monotonicity_violations": res.monotonicity_violations,
            })
    _emit(instances=args.count, cases=cases, failed=failed)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_verify_measure(args) -> int:
    try:
        table = load_table(args.table) if args.table else bundled_psi4()
    except OSError as exc:
        raise UsageError(f"cannot read {args.table}: {exc.strerror}") from None
    except TableFormatError as exc:
        raise UsageError(str(exc)) from None
    failures = check_properties(table)
    _emit(dhat=table.dhat, properties="ok" if not failures else "fail", property_failures=len(failures))
    for f in failures[:20]:
        print(f"property {f.prop} m={f.m} c={f.c} a={f.a} c'={f.cp} {f.detail}")
    ok = not failures
    overall = 0.0
    for rule in VERIFIED_RULES:
        rc = verify_rule(table, rule)
        if rc.max_bn is None:
            print(f"{rule} max=NA")
            continue
        overall = max(overall, rc.max_bn)
        line = f"{rule} max={rc.max_bn:.4f} vectors={rc.count} nonpositive={len(rc.failures)}"
        if rc.tail_unchecked:
            line += " tail=unchecked"
        print(line)
        ok = ok and not rc.failures
    within = overall <= args.target + args.tol
    _emit(max=f"{overall:.4f}", target=args.target, tol=args.tol, within="yes" if within else "no")
    return EXIT_OK if ok and within else EXIT_FAIL


def cmd_gen(args) -> int:
    p2 = args.p2
    try:
        inst = generate(GenConfig(args.n, args.edges, (p2, 1 - p2), args.seed, args.k))
    except GenerationError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(serialize(inst))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hs3", description="Exact 3-Hitting Set solver and measure verifier.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide whether a hitting set of size <= k exists")
    p.add_argument("file")
    p.add_argument("--k", type=int, help="override the budget from the header")
    p.add_argument("--full-tree", action="store_true", help="explore the whole search tree")
    p.add_argument("--cert", action="store_true", help="print the hitting set on yes")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("min", help="smallest k the solver accepts")
    p.add_argument("file")
    p.set_defaults(func=cmd_min)

    p = sub.add_parser("oracle", help="brute-force minimum hitting set size")
    p.add_argument("file")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("fuzz", help="differential test against the oracle")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=14)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("verify-measure", help="check a measure table and its branching numbers")
    p.add_argument("--table", help="table file (default: bundled dhat=4 table)")
    p.add_argument("--target", type=float, default=2.0409)
    p.add_argument("--tol", type=float, default=0.005)
    p.set_defaults(func=cmd_verify_measure)

    p = sub.add_parser("gen", help="print a random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--p2", type=float, default=0.5, help="probability of a 2-edge")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=0)
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hs3: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
