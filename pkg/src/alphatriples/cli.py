"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a violation (or
counterexample) is found, 2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .constructions import NAMED_GRAPHS, factorless_regular, named_graph, p3_packing_graph, sharpness_bipartite
from .corpus import CorpusSpec, enumerate_regular
from .graph import Graph6Error, write_graph6
from .verify import (
    DEFAULT_MAX_LINE_VERTICES,
    Status,
    check_bounds_suite,
    classify_triple,
    confirm_witness,
    emit_report,
    search_counterexample,
    verdict_table,
    verify_triple_on_corpus,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

_FAMILIES = {
    "sharpness_bipartite": sharpness_bipartite,
    "factorless_regular": factorless_regular,
    "p3_packing": p3_packing_graph,
}


def _write(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _triple_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)


def _output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alphatriples",
        description="Check alpha_p(G) <= alpha_q(L(G)) claims for regular graphs.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="verdict for one triple")
    _triple_args(c)
    c.add_argument("--no-confirm", action="store_true", help="skip re-solving the witness")
    _output_args(c)

    t = sub.add_parser("table", help="verdicts for p, q <= P/Q and r <= R")
    t.add_argument("--p-max", type=int, default=4)
    t.add_argument("--q-max", type=int, default=4)
    t.add_argument("--r-max", type=int, default=8)
    _output_args(t)

    v = sub.add_parser("verify", help="check a triple on every corpus graph")
    _triple_args(v)
    v.add_argument("--corpus", required=True)
    v.add_argument("--jobs", type=int, default=1)
    _output_args(v)

    b = sub.add_parser("bounds", help="bound comparisons for every corpus graph")
    b.add_argument("--corpus", required=True)
    b.add_argument("--r", type=int, default=None, help="expected regularity of a file corpus")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--max-line-vertices", type=int, default=DEFAULT_MAX_LINE_VERTICES)
    _output_args(b)

    s = sub.add_parser("search", help="look for a counterexample")
    _triple_args(s)
    s.add_argument("--corpus", default=None)
    s.add_argument("--max-line-vertices", type=int, default=DEFAULT_MAX_LINE_VERTICES)
    s.add_argument("--out", default=None)

    k = sub.add_parser("construct", help="emit a construction as graph6")
    k.add_argument("--family", required=True,
                   help=f"one of {', '.join([*_FAMILIES, *NAMED_GRAPHS])}")
    k.add_argument("--params", type=int, nargs="*", default=[])
    k.add_argument("--out", default=None)

    e = sub.add_parser("enumerate", help="emit r-regular graphs of order N (or A..B) as graph6")
    e.add_argument("--r", type=int, required=True)
    e.add_argument("--n", required=True)
    e.add_argument("--connected", action="store_true")
    e.add_argument("--out", default=None)
    return parser


def _order_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("..")
    return int(lo), int(hi or lo)


def _run(args) -> int:
    cmd = args.command
    if cmd == "classify":
        verdict = classify_triple(args.p, args.q, args.r)
        if args.format == "csv":
            _write(emit_report([verdict], "csv"), args.out)
            return EXIT_OK
        row = verdict.as_row()
        if not args.no_confirm:
            check = confirm_witness(verdict)
            if check is not None:
                row["witness_check"] = check.__dict__
        _write(json.dumps(row, indent=2) + "\n", args.out)
        return EXIT_OK

    if cmd == "table":
        _write(emit_report(verdict_table(args.p_max, args.q_max, args.r_max), args.format), args.out)
        return EXIT_OK

    if cmd == "verify":
        spec = CorpusSpec.parse(args.corpus, r=args.r)
        report = verify_triple_on_corpus(args.p, args.q, args.r, spec, jobs=args.jobs)
        _write(emit_report([report], args.format), args.out)
        return EXIT_OK if report.passed else EXIT_VIOLATION

    if cmd == "bounds":
        spec = CorpusSpec.parse(args.corpus, r=args.r)
        reports = check_bounds_suite(spec, jobs=args.jobs, max_line_vertices=args.max_line_vertices)
        _write(emit_report(reports, args.format, kind="bounds"), args.out)
        return EXIT_OK if all(rep.passed for rep in reports) else EXIT_VIOLATION

    if cmd == "search":
        corpus = CorpusSpec.parse(args.corpus, r=args.r) if args.corpus else None
        res = search_counterexample(args.p, args.q, args.r, corpus, args.max_line_vertices)
        payload = {
            "p": res.p, "q": res.q, "r": res.r,
            "found": res.found, "witness": res.witness, "source": res.source,
            "alpha_p": res.alpha_p, "alpha_q_line": res.alpha_q_line, "log": res.log,
        }
        _write(json.dumps(payload, indent=2) + "\n", args.out)
        return EXIT_VIOLATION if res.found else EXIT_OK

    if cmd == "construct":
        if args.family in _FAMILIES:
            g = _FAMILIES[args.family](*args.params)
        else:
            g = named_graph(args.family, *args.params)
        _write(write_graph6(g) + "\n", args.out)
        return EXIT_OK

    if cmd == "enumerate":
        lo, hi = _order_range(args.n)
        spec = CorpusSpec(args.r, lo, hi, args.connected)
        _write("".join(write_graph6(g) + "\n" for g in enumerate_regular(spec)), args.out)
        return EXIT_OK
    raise AssertionError(cmd)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _run(args)
    except (ValueError, TypeError, OSError, Graph6Error) as exc:
        print(f"alphatriples: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
