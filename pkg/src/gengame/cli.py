"""Command-line interface.

Subcommands: nim, diagram, oracle, spectrum, corpus, conjecture.  Exit status
0 means every requested check passed, 1 a computation failure (the diagnostic
names the failing module), 2 a usage error (including malformed group specs).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .corpus import run_corpus
from .digraph import analyze, check_even_option_conjecture, digraph_report
from .dot import emit_dot
from .groups import GroupSpecError, build_group
from .lattice import build_lattice
from .oracle import (
    ORACLE_CAP_DEFAULT,
    check_structure_invariance,
    nim_table,
    nim_table_json,
)
from .spectrum import feasible_spectrum

CACHE_ENV = "GENGAME_CACHE_DIR"
DEFAULT_CACHE_DIR = ".gengame-cache"


def _cache_dir(args) -> str | None:
    if args.no_cache:
        return None
    return os.environ.get(CACHE_ENV, DEFAULT_CACHE_DIR)


def _write_json(path: str, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def _cmd_nim(args) -> int:
    G = build_group(args.spec)
    dg = analyze(G, cache_dir=_cache_dir(args))
    print(dg.nim_value)
    return 0


def _cmd_diagram(args) -> int:
    G = build_group(args.spec)
    dg = analyze(G, cache_dir=_cache_dir(args))
    Path(args.dot).write_text(emit_dot(dg))
    print(f"wrote {args.dot}")
    if args.json:
        _write_json(args.json, digraph_report(dg))
        print(f"wrote {args.json}")
    return 0


def _cmd_oracle(args) -> int:
    G = build_group(args.spec)
    lattice = build_lattice(G, cache_dir=_cache_dir(args))
    table = nim_table(G, lattice=lattice, cap=args.cap)
    print(f"oracle nim-value: {table.start_value}")
    violations = check_structure_invariance(G, nim=table, lattice=lattice, cap=args.cap)
    if violations:
        print(f"structure invariance: FAILED ({len(violations)} position pairs disagree)")
        for v in violations[:10]:
            print(f"  {v.first.label()} has value {v.first_value}, "
                  f"{v.second.label()} has value {v.second_value}")
    else:
        print("structure invariance: ok")
    dg = analyze(G, lattice=lattice)
    match = dg.nim_value == table.start_value
    print(f"quotient nim-value: {dg.nim_value} ({'matches' if match else 'MISMATCH'})")
    if args.dump:
        _write_json(args.dump, nim_table_json(table))
        print(f"wrote {args.dump}")
    return 0 if match and not violations else 1


def _format_k_list(ks: tuple[int, ...], continues: bool) -> str:
    text = ",".join(str(k) for k in ks)
    return text + ",..." if continues else text


def _cmd_spectrum(args) -> int:
    sp = feasible_spectrum(naive=args.naive)
    rows = [
        (min(ks), t, ks, sp.continues_forever(t))
        for t, ks in sp.membership().items()
    ]
    rows.sort(key=lambda r: (r[0], r[1]))
    if args.format == "json":
        payload = {
            "schema": 1,
            "stabilized_at": sp.stabilized_at,
            "rows": [
                {"etype": list(t), "k": list(ks), "continues": cont}
                for _, t, ks, cont in rows
            ],
        }
        if args.trace:
            payload["inner"] = [
                [[list(t) for t in sorted(level)] for level in trace]
                for trace in sp.inner
            ]
        print(json.dumps(payload, indent=2))
    else:
        print(f"{'etype':<14}k")
        for _, t, ks, cont in rows:
            label = f"({t.p},{t.e},{t.o},{t.s})"
            print(f"{label:<14}{_format_k_list(ks, cont)}")
        if args.trace:
            for k, trace in enumerate(sp.inner):
                for level, layer in enumerate(trace):
                    body = ", ".join(f"({t.p},{t.e},{t.o},{t.s})" for t in sorted(layer))
                    print(f"inner[{k},{level}] = {{{body}}}")
        print(f"stabilized: E{sp.stabilized_at} = E{sp.stabilized_at + 1}")
    return 0


def _cmd_corpus(args) -> int:
    report = run_corpus(max_order=args.max_order, jobs=args.jobs,
                        cache_dir=_cache_dir(args))
    _write_json(args.report, report.to_json_dict())
    print(f"wrote {args.report}")
    failed = [e.spec for e in report.entries if not e.passed]
    print(f"{len(report.entries)} groups checked, "
          f"{'all passed' if report.all_passed else 'FAILURES: ' + ', '.join(failed)}")
    return 0 if report.all_passed else 1


def _cmd_conjecture(args) -> int:
    G = build_group(args.spec)
    report = check_even_option_conjecture(G, analyze(G, cache_dir=_cache_dir(args)))
    verdict = "holds" if report.holds else "fails"
    print(f"even-option conjecture {verdict} for {report.group} "
          f"({report.checked} odd classes checked)")
    for label in report.counterexamples:
        print(f"  counterexample class: {label}")
    return 0 if report.holds else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gengame",
        description="Nim-values of the achievement game of generating a finite group.",
    )
    parser.add_argument("--no-cache", action="store_true",
                        help="disable the on-disk lattice cache")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nim", help="print the nim-value of the game on a group")
    p.add_argument("spec", help="group spec, e.g. Z6, Z2^3, D4, S3, perm:(1,2);(1,2,3)")
    p.set_defaults(handler=_cmd_nim)

    p = sub.add_parser("diagram", help="write the structure diagram as DOT")
    p.add_argument("spec")
    p.add_argument("--dot", required=True, help="output path for the DOT text")
    p.add_argument("--json", help="also write the JSON class report here")
    p.set_defaults(handler=_cmd_diagram)

    p = sub.add_parser("oracle", help="brute-force nim-value and invariance checks")
    p.add_argument("spec")
    p.add_argument("--dump", help="write the full nim table as JSON here")
    p.add_argument("--cap", type=int, default=ORACLE_CAP_DEFAULT,
                   help="largest group order to accept (at most 20)")
    p.set_defaults(handler=_cmd_oracle)

    p = sub.add_parser("spectrum", help="compute the feasible spectrum of extended types")
    p.add_argument("--trace", action="store_true", help="show the inner iteration sets")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--naive", action="store_true",
                   help="full powerset enumeration instead of signature deduplication")
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("corpus", help="run all checks over the built-in corpus")
    p.add_argument("--max-order", type=int, default=16)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report", required=True, help="output path for the JSON report")
    p.set_defaults(handler=_cmd_corpus)

    p = sub.add_parser("conjecture", help="check the even-option conjecture on one group")
    p.add_argument("spec")
    p.set_defaults(handler=_cmd_conjecture)
    return parser


def run(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except GroupSpecError as exc:
        print(f"error (groups): {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error ({_origin_module(exc)}): {exc}", file=sys.stderr)
        return 1


def _origin_module(exc: BaseException) -> str:
    tb = exc.__traceback__
    module = "gengame"
    while tb is not None:
        name = tb.tb_frame.f_globals.get("__name__", "")
        if name.startswith("gengame."):
            module = name.removeprefix("gengame.")
        tb = tb.tb_next
    return module


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
