"""Command-line front end.

Subcommands: `bracket` (Poisson bracket of two germ components),
`discriminant` (critical-value curve of a germ file, or of a given
generator), `coxeter` (braid relations, group order, Coxeter element),
`fold` (diagram folding with its automorphism group), `steinberg`
(adjoint-quotient checks for sl_2 / sl_3) and `paper-suite` (the twelve
acceptance checks).

Machine-readable output is line-oriented: `CHECK <name> <status>
expected=<v> got=<v>`; `--notes` appends one `NOTE <name> <text>` line per
annotated check.  Exit codes: 0 all-pass, 1 any check failed, 2 usage or
parse error, 3 Groebner budget exhausted without any failure.
"""

from __future__ import annotations

import argparse
import re
import sys
from math import factorial

from .germfile import GermFileError, load_germ_file
from .groebner import DEFAULT_PAIR_LIMIT, ResourceLimitExceeded
from .monodromy import (SUPPORTED_TYPES, CoxeterDatum, FoldingError, LatticeError,
                        braid_relation_check, coxeter_element_order, fold,
                        group_order_bfs, quotient_rank_check,
                        standard_automorphisms, weyl_generators)
from .poly import (PolyError, format_polynomial, normalized, parse_polynomial,
                   squarefree_part_bivariate)
from .report import ASSUMED, FAIL, PASS, SKIPPED_BUDGET, CheckResult, Report, check
from .singularity import discriminant, multiplicity_at_origin
from .steinberg import (casimir_components_check, jacobian_rank_at,
                        steinberg_discriminant_multiplicity, steinberg_kks,
                        steinberg_map, subregular_slice_check)
from .suite import run_paper_suite
from .symplectic import poisson_bracket

import numpy as np


def _emit(report: Report, notes: bool) -> int:
    for line in report.lines():
        print(line)
    if notes:
        for line in report.note_lines():
            print(line)
    return report.exit_code()


# ---------------------------------------------------------------------------
# bracket
# ---------------------------------------------------------------------------

def cmd_bracket(args) -> int:
    gf = load_germ_file(args.file)
    if gf.symplectic_pairs is None:
        print("error: germ file declares no symplectic pairing", file=sys.stderr)
        return 2
    k = len(gf.components)
    for idx in (args.i, args.j):
        if not 1 <= idx <= k:
            print(f"error: component index {idx} out of range 1..{k}",
                  file=sys.stderr)
            return 2
    bracket = poisson_bracket(gf.components[args.i - 1],
                              gf.components[args.j - 1], gf.context())
    print(format_polynomial(bracket))
    return 0


# ---------------------------------------------------------------------------
# discriminant
# ---------------------------------------------------------------------------

def _given_multiplicity(expr: str) -> int:
    names: list[str] = []
    for m in re.finditer(r"[A-Za-z][A-Za-z0-9_]*", expr):
        if m.group(0) not in names:
            names.append(m.group(0))
    given = parse_polynomial(expr, tuple(sorted(names)))
    reduced = squarefree_part_bivariate(given)
    print(f"given: {format_polynomial(given)}")
    print(f"reduced: {format_polynomial(normalized(reduced))}")
    mult = reduced.order_at_origin()
    print(f"multiplicity: {mult}")
    return 0


def cmd_discriminant(args) -> int:
    if args.given is not None:
        return _given_multiplicity(args.given)
    if args.file is None:
        print("error: a germ file (or --given) is required", file=sys.stderr)
        return 2
    germ = load_germ_file(args.file).to_map_germ()
    try:
        d = discriminant(germ, max_pairs=args.budget)
    except ResourceLimitExceeded as exc:
        print(f"budget-exhausted: stopped after {exc.pairs_processed} S-pairs "
              f"(limit {exc.limit})")
        return 3
    print(f"target: {' '.join(d.target_vars)}")
    for g in d.ideal.generators:
        print(f"generator: {format_polynomial(g)}")
    if not d.ideal.generators:
        print("generator: 0 (discriminant fills the target)")
    if d.note:
        print(f"note: {d.note}")
    if d.reduced_generator is not None:
        print(f"reduced: {format_polynomial(normalized(d.reduced_generator))}")
        if d.k == 2:
            print(f"multiplicity: {multiplicity_at_origin(d)}")
    return 0


# ---------------------------------------------------------------------------
# coxeter
# ---------------------------------------------------------------------------

def _golden_weyl_order(label: str) -> int:
    letter, rank = label[0], int(label[1:])
    if letter == "A":
        return factorial(rank + 1)
    if letter in ("B", "C"):
        return 2 ** rank * factorial(rank)
    if letter == "D":
        return 2 ** (rank - 1) * factorial(rank)
    return {"E6": 51840, "E7": 2903040, "E8": 696729600,
            "F4": 1152, "G2": 12}[label]


def _golden_coxeter_number(label: str) -> int:
    letter, rank = label[0], int(label[1:])
    if letter == "A":
        return rank + 1
    if letter in ("B", "C"):
        return 2 * rank
    if letter == "D":
        return 2 * (rank - 1)
    return {"E6": 12, "E7": 18, "E8": 30, "F4": 12, "G2": 6}[label]


def cmd_coxeter(args) -> int:
    label = args.type
    if label not in SUPPORTED_TYPES:
        print(f"error: unsupported type '{label}' (supported: "
              f"{', '.join(SUPPORTED_TYPES)})", file=sys.stderr)
        return 2
    datum = CoxeterDatum.for_type(label)
    gens = weyl_generators(datum)
    report = Report()
    wanted = ("braid", "order", "coxeter-element") if args.check == "all" \
        else (args.check,)
    if "braid" in wanted:
        identity = np.eye(datum.rank, dtype=np.int64)
        involutive = all(np.array_equal(g @ g, identity) for g in gens)
        braid_ok, witness = braid_relation_check(gens, datum.coxeter)
        report.add(check(f"braid-{label}", True, involutive and braid_ok,
                         note=f"failing pair {witness}" if witness else ""))
    if "order" in wanted:
        report.add(check(f"order-{label}", _golden_weyl_order(label),
                         group_order_bfs(gens)))
    if "coxeter-element" in wanted:
        report.add(check(f"coxeter-element-{label}", _golden_coxeter_number(label),
                         coxeter_element_order(gens)))
    return _emit(report, args.notes)


# ---------------------------------------------------------------------------
# fold
# ---------------------------------------------------------------------------

_FOLD_EXPECTED: dict[tuple[str, str], tuple[str, int, bool]] = {
    ("A3", "flip"): ("C2", 2, True),
    ("A5", "flip"): ("C3", 2, True),
    ("A7", "flip"): ("C4", 2, True),
    ("D4", "flip"): ("B3", 2, True),
    ("D4", "triality"): ("G2", 3, True),
    ("D4", "full"): ("G2", 6, False),
    ("E6", "flip"): ("F4", 2, True),
}


def cmd_fold(args) -> int:
    label, name = args.source, args.automorphism
    folding = fold(label, standard_automorphisms(label, name))
    if name == "identity":
        want_type, want_order, want_abelian = label, 1, True
    elif (label, name) in _FOLD_EXPECTED:
        want_type, want_order, want_abelian = _FOLD_EXPECTED[(label, name)]
    else:
        want_type, want_order, want_abelian = (folding.folded.label,
                                               folding.group_order,
                                               folding.group_abelian)
    report = Report()
    orbit_note = "orbits " + ";".join(
        "{" + ",".join(str(i) for i in orbit) + "}" for orbit in folding.orbits)
    report.add(check("fold-type", want_type, folding.folded.label, note=orbit_note))
    report.add(check("fold-group-order", want_order, folding.group_order,
                     note=f"group {folding.group_name}"))
    report.add(check("fold-group-abelian", want_abelian, folding.group_abelian))
    report.add(check("fold-quotient-rank", True, quotient_rank_check(folding)))
    return _emit(report, args.notes)


# ---------------------------------------------------------------------------
# steinberg
# ---------------------------------------------------------------------------

def _steinberg_points(rank: int):
    if rank == 1:
        return ((0, 0), (0, 0)), ((1, 0), (0, -1))
    return ((1, 0, 0), (0, 1, 0), (0, 0, -2)), ((1, 0, 0), (0, 2, 0), (0, 0, -3))


def cmd_steinberg(args) -> int:
    rank = args.rank
    if rank not in (1, 2):
        print("error: --rank must be 1 or 2", file=sys.stderr)
        return 2
    wanted = ("casimir", "rank", "discriminant", "slice") if args.check == "all" \
        else (args.check,)
    if "slice" in wanted and rank != 2:
        if args.check == "slice":
            print("error: the slice check needs --rank 2", file=sys.stderr)
            return 2
        wanted = tuple(w for w in wanted if w != "slice")
    report = Report()
    smap = steinberg_map(rank)
    if "casimir" in wanted:
        report.add(check("steinberg-casimir", True,
                         casimir_components_check(smap, steinberg_kks(rank)),
                         note=f"{rank} component(s) against the Lie-Poisson bracket"))
    if "rank" in wanted:
        subregular, regular = _steinberg_points(rank)
        report.add(check("steinberg-rank-subregular", rank - 1,
                         jacobian_rank_at(smap, subregular)))
        report.add(check("steinberg-rank-regular", rank,
                         jacobian_rank_at(smap, regular)))
    if "discriminant" in wanted:
        report.add(check("steinberg-discriminant", rank,
                         steinberg_discriminant_multiplicity(rank)))
    if "slice" in wanted:
        slice_report = subregular_slice_check()
        report.add(check("steinberg-slice", True, slice_report.passed,
                         note=f"c2 block Hessian rank {slice_report.block_hessian_rank}; "
                              f"differential rank {slice_report.differential_rank}"))
    if args.check == "all":
        report.add(CheckResult("steinberg-t2-hypothesis", ASSUMED,
                               "assumed", "assumed",
                               note="simplifiable calibrated T2 behaviour of the "
                                    "adjoint quotient is assumed, not certified"))
    return _emit(report, args.notes)


# ---------------------------------------------------------------------------
# paper-suite
# ---------------------------------------------------------------------------

def cmd_paper_suite(args) -> int:
    report = run_paper_suite(budget=args.budget)
    code = _emit(report, args.notes)
    counts = {PASS: 0, FAIL: 0, SKIPPED_BUDGET: 0, ASSUMED: 0}
    for c in report.checks:
        counts[c.status] += 1
    print(f"paper-suite: {counts[PASS]} pass, {counts[FAIL]} fail, "
          f"{counts[SKIPPED_BUDGET]} skipped-budget, "
          f"{counts[ASSUMED]} assumed-hypothesis", file=sys.stderr)
    return code


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vancyc",
        description="Exact checks for involutive germs, discriminants, "
                    "monodromy lattices and adjoint quotients.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="Poisson bracket of two germ components")
    p.add_argument("file", help="germ file path")
    p.add_argument("i", type=int, help="first component index (1-based)")
    p.add_argument("j", type=int, help="second component index (1-based)")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("discriminant",
                       help="discriminant generators and multiplicity of a germ")
    p.add_argument("file", nargs="?", default=None, help="germ file path")
    p.add_argument("--budget", type=int, default=DEFAULT_PAIR_LIMIT,
                   help="Groebner S-pair cap (default %(default)s)")
    p.add_argument("--given", metavar="EXPR", default=None,
                   help="skip elimination; reduce EXPR and report its "
                        "multiplicity at the origin")
    p.set_defaults(func=cmd_discriminant)

    p = sub.add_parser("coxeter", help="braid relations, group order, "
                                       "Coxeter element order")
    p.add_argument("type", help="type label, e.g. A3, B2, G2")
    p.add_argument("--check", choices=("braid", "order", "coxeter-element", "all"),
                   default="all")
    p.add_argument("--notes", action="store_true", help="print NOTE lines")
    p.set_defaults(func=cmd_coxeter)

    p = sub.add_parser("fold", help="fold a simply-laced diagram")
    p.add_argument("source", help="simply-laced type label, e.g. D4")
    p.add_argument("automorphism",
                   choices=("identity", "flip", "triality", "full"),
                   help="named automorphism set")
    p.add_argument("--notes", action="store_true", help="print NOTE lines")
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("steinberg", help="adjoint-quotient checks for sl_2/sl_3")
    p.add_argument("--rank", type=int, default=2, help="1 or 2 (default 2)")
    p.add_argument("--check",
                   choices=("casimir", "rank", "discriminant", "slice", "all"),
                   default="all")
    p.add_argument("--notes", action="store_true", help="print NOTE lines")
    p.set_defaults(func=cmd_steinberg)

    p = sub.add_parser("paper-suite", help="run the twelve acceptance checks")
    p.add_argument("--budget", type=int, default=None,
                   help="Groebner S-pair cap for elimination-based checks "
                        f"(default {DEFAULT_PAIR_LIMIT})")
    p.add_argument("--notes", action="store_true", help="print NOTE lines")
    p.set_defaults(func=cmd_paper_suite)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GermFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PolyError, LatticeError, FoldingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitExceeded as exc:
        print(f"budget-exhausted: stopped after {exc.pairs_processed} S-pairs "
              f"(limit {exc.limit})", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
