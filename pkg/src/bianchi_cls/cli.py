"""Command line entry point ``bianchi-cls``.

Exit codes: 0 when every check passes, 1 on a mismatch against the embedded
reference data, 2 when some computation ran out of its resource budget,
3 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import pipeline, reference
from .bianchi import (
    Generation,
    parabolic_generation_test,
    parse_presentation_file,
)
from .fpgroup import Limits, Overflow, certify_trivializing_slopes, parse_presentation, parse_words
from .modmat import cusp_count, psl2_order, torsion_in_gamma
from .quadint import canonical_up_to_conjugation, format_element, parse_ideal

EXIT_OK, EXIT_MISMATCH, EXIT_OVERFLOW, EXIT_BAD_INPUT = 0, 1, 2, 3


def _ideal(args):
    return parse_ideal(args.d, args.ideal)


def cmd_enumerate(args) -> int:
    fields = pipeline.admissible_fields() if args.d == "all" else [int(args.d)]
    total = torsion = 0
    for d in fields:
        levels = pipeline.candidate_levels(d)
        for I in levels:
            t = torsion_in_gamma(d, I) is not None
            torsion += t
            total += 1
            if args.verbose:
                print(f"{d:>3}  {str(I):<28} N={I.norm():<3} {'torsion' if t else ''}".rstrip())
        print(f"d={d}: {len(levels)} levels")
    print(f"total {total} levels, {torsion} with torsion, {total - torsion} candidates")
    return EXIT_OK


def cmd_order(args) -> int:
    I = _ideal(args)
    print(f"|PSL(2, O_{args.d}/{I})| = {psl2_order(I)}")
    return EXIT_OK


def cmd_cusps(args) -> int:
    I = _ideal(args)
    print(f"cusps of Gamma({I}) = {cusp_count(args.d, I)}")
    return EXIT_OK


def cmd_torsion(args) -> int:
    I = _ideal(args)
    w = torsion_in_gamma(args.d, I)
    if w is None:
        print(f"Gamma({I}): no elliptic element found (torsion-free)")
    else:
        (a, b), (c, e) = w
        print(f"Gamma({I}): elliptic element [[{format_element(a)}, {format_element(b)}], "
              f"[{format_element(c)}, {format_element(e)}]]")
    return EXIT_OK


def cmd_quotient(args) -> int:
    I = _ideal(args)
    limits = Limits(max_cosets=args.max_cosets, max_seconds=args.max_seconds)
    res = parabolic_generation_test(args.d, I, limits, args.strategy, low_index=args.low_index)
    print(f"d={args.d} I={I} |PSL(2,O/I)|={res.psl2_order} verdict={res.verdict.value}")
    for line in res.evidence:
        print("  " + line)
    ref = reference.lookup(args.d, canonical_up_to_conjugation(I))
    if ref is not None:
        print(f"  reference: link level ({ref.source})")
        if res.verdict is Generation.NOT_GENERATED:
            return EXIT_MISMATCH
    if res.verdict is Generation.UNKNOWN:
        return EXIT_OVERFLOW
    return EXIT_OK


def _load_presentation(path: Path):
    text = path.read_text()
    if "matrix:" in text:
        return parse_presentation_file(text).presentation
    return parse_presentation(" ".join(l.split("#", 1)[0] for l in text.splitlines()))


def cmd_certify(args) -> int:
    pres = _load_presentation(Path(args.pres))
    slopes = parse_words(args.slopes, pres.generators)
    limits = Limits(max_cosets=args.max_cosets, max_seconds=args.max_seconds)
    ok = certify_trivializing_slopes(pres, slopes, limits)
    if ok is None:
        print("unknown: coset enumeration overflowed")
        return EXIT_OVERFLOW
    print("trivial" if ok else "not trivial")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_table1(args) -> int:
    bad = 0
    print(f"{'d':>3} {'x':<14} {'N':>3} {'|PSL|':>6} {'cusps':>5}")
    for r in pipeline.table1_report():
        flag = "" if not r.mismatches else "  MISMATCH: " + "; ".join(r.mismatches)
        print(f"{r.row.d:>3} {r.row.x:<14} {r.norm:>3} {r.order:>6} {r.cusps:>5}{flag}")
        bad += bool(r.mismatches)
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_report(args) -> int:
    fields = None if args.d == "all" else [int(args.d)]
    limits = Limits(max_cosets=args.max_cosets, max_seconds=None)

    def progress(rec):
        if args.verbose:
            print(f"{rec.d:>3} {str(rec.ideal):<28} {rec.status.value}", file=sys.stderr)

    records = pipeline.run(fields, limits, args.low_index, workers=args.workers, progress=progress)
    pipeline.emit_report(records, args.out, args.format)
    s = pipeline.summary(records)
    print(json.dumps(s, sort_keys=True))
    if s["contradictions"]:
        return EXIT_MISMATCH
    if s["overflows"]:
        return EXIT_OVERFLOW
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bianchi-cls", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def level(sp):
        sp.add_argument("--d", type=int, required=True)
        sp.add_argument("--ideal", required=True, help='comma-separated generators, e.g. "1+3*w"')

    def budget(sp, cosets=pipeline.PIPELINE_LIMITS.max_cosets):
        sp.add_argument("--max-cosets", type=int, default=cosets)
        sp.add_argument("--max-seconds", type=float, default=None)

    sp = sub.add_parser("enumerate", help="list candidate levels")
    sp.add_argument("--d", default="all")
    sp.add_argument("-v", "--verbose", action="store_true")
    sp.set_defaults(func=cmd_enumerate)

    for name, func, text in (("order", cmd_order, "order of PSL(2, O/I)"),
                             ("cusps", cmd_cusps, "number of cusps of Gamma(I)"),
                             ("torsion", cmd_torsion, "search for elliptic elements in Gamma(I)")):
        sp = sub.add_parser(name, help=text)
        level(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("quotient", help="parabolic generation test")
    level(sp)
    budget(sp)
    sp.add_argument("--strategy", choices=("hlt", "felsch"), default="hlt")
    sp.add_argument("--low-index", type=int, default=0)
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("certify", help="check that slopes trivialize a presentation")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--slopes", required=True, help='words separated by ";"')
    budget(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("table1", help="recompute the eight reference rows")
    sp.set_defaults(func=cmd_table1)

    sp = sub.add_parser("report", help="classify every candidate and write a report")
    sp.add_argument("--out", required=True)
    sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
    sp.add_argument("--d", default="all")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--low-index", type=int, default=pipeline.PIPELINE_LOW_INDEX)
    sp.add_argument("--max-cosets", type=int, default=pipeline.PIPELINE_LIMITS.max_cosets)
    sp.add_argument("-v", "--verbose", action="store_true")
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Overflow as exc:
        print(f"overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
