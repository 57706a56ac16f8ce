"""Command-line interface: ``bottfano <subcommand> ...``.

Exit codes: 0 on success, 2 on usage or parse errors. With ``--quiet``,
``fano`` and ``iso`` print nothing and exit 0 for "yes", 3 otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cohomology, fan, iso
from .enumerate import classification_emit, enumerate_fano, verify_rigidity
from .gbm import (
    DimensionMismatchError,
    GeneralizedBottMatrix,
    SpecParseError,
    TwoStageSpec,
    load_tower,
    parse_spec,
)
from .polynomial import PolynomialParseError, parse_polynomial

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO = 3


def _fmt_lambda(rays: fan.RayMatrix, rel: fan.PrimitiveRelation) -> str:
    lhs = " + ".join([f"v{rel.j}"] + [f"e{rel.j}^{k}" for k in range(1, rays.fiber_dims[rel.j - 1] + 1)])
    rhs = []
    for i, lam in sorted(rel.lambdas.items()):
        if lam[0]:
            rhs.append(f"v{i}" if lam[0] == 1 else f"{lam[0]}*v{i}")
        for k, c in enumerate(lam[1:], start=1):
            if c:
                rhs.append(f"e{i}^{k}" if c == 1 else f"{c}*e{i}^{k}")
    return f"{lhs} = {' + '.join(rhs) or '0'}"


def _print_relation(gbm: GeneralizedBottMatrix, rel: fan.PrimitiveRelation, out) -> None:
    rays = fan.ray_matrix(gbm)
    lams = "; ".join(f"lambda_{i},{rel.j} = {lam}" for i, lam in sorted(rel.lambdas.items()))
    print(f"R{rel.j}: {_fmt_lambda(rays, rel)}", file=out)
    print(f"    {lams or 'sum is zero'}; degree {rel.degree}", file=out)


def cmd_fano(args, out) -> int:
    gbm = load_tower(args.spec)
    report = fan.is_fano(gbm)
    if args.quiet:
        return EXIT_OK if report.is_fano else EXIT_NO
    for rel in report.relations:
        _print_relation(gbm, rel, out)
    print("Fano" if report.is_fano else "not Fano", file=out)
    return EXIT_OK


def cmd_relations(args, out) -> int:
    gbm = load_tower(args.spec)
    js = [args.j] if args.j is not None else range(1, gbm.stages + 1)
    for j in js:
        if not 1 <= j <= gbm.stages:
            raise SpecParseError(f"--j {j} out of range 1..{gbm.stages}")
        _print_relation(gbm, fan.primitive_relation(gbm, j), out)
    return EXIT_OK


def cmd_coh(args, out) -> int:
    gbm = load_tower(args.spec)
    ring = cohomology.ring_of(gbm)
    printed = False
    if args.degree is not None:
        basis = cohomology.additive_basis(gbm, args.degree)
        print(f"H^{args.degree} basis: " + ", ".join(str(b) for b in basis), file=out)
        printed = True
    if args.c1:
        print(f"c1 = {cohomology.c1(gbm)}", file=out)
        printed = True
    if args.reduce is not None:
        poly = parse_polynomial(args.reduce, gbm.stages)
        print(str(ring.reduce(poly)), file=out)
        printed = True
    if not printed:
        for i, rel in enumerate(ring.relations, start=1):
            print(f"r{i} = {rel}", file=out)
    return EXIT_OK


def cmd_chern(args, out) -> int:
    gbm = load_tower(args.spec)
    print(f"c = {cohomology.total_chern(gbm)}", file=out)
    return EXIT_OK


def cmd_iso(args, out) -> int:
    a, b = parse_spec(args.spec_a), parse_spec(args.spec_b)
    if args.c1:
        try:
            verdict = iso.decide_c1_iso(a, b)
        except iso.NotFanoError:
            bound = args.bound if args.bound is not None else iso.default_bound(a, b)
            w = iso.ring_iso_search(a, b, bound, require_c1=True)
            if w is not None:
                verdict = iso.IsoVerdict("yes", w, "c1-preserving witness (non-Fano input)")
            else:
                verdict = iso.IsoVerdict(
                    "no", certificate=f"no c1-preserving witness with entries in [-{bound}, {bound}]"
                )
    else:
        verdict = iso.decide_ring_iso(a, b, args.bound)
    if args.quiet:
        return EXIT_OK if verdict.answer == "yes" else EXIT_NO
    if args.json:
        print(verdict.dumps(), file=out)
    else:
        print(verdict.answer, file=out)
        if verdict.witness:
            (al, be), (ga, de) = verdict.witness.matrix
            print(f"witness: x1 -> {_lin(al, be)}, x2 -> {_lin(ga, de)}", file=out)
        if verdict.certificate:
            print(verdict.certificate, file=out)
    return EXIT_OK


def _lin(p: int, q: int) -> str:
    return str(cohomology.IntPolynomial.linear((p, q)))


def cmd_enumerate(args, out) -> int:
    out.write(classification_emit(enumerate_fano(args.dim), args.format))
    return EXIT_OK


def _bound_policy(text: str):
    if text == "auto":
        return "auto"
    if text.startswith("fixed:"):
        try:
            value = int(text[6:])
        except ValueError:
            value = 0
        if value >= 1:
            return value
    raise argparse.ArgumentTypeError(f"expected 'auto' or 'fixed:B' with B >= 1, got {text!r}")


def cmd_verify(args, out) -> int:
    reports = verify_rigidity(args.max_dim, args.bound_policy, workers=args.workers)
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2), file=out)
        return EXIT_OK
    for r in reports:
        status = "ok" if not r.counterexamples else f"{len(r.counterexamples)} COUNTEREXAMPLES"
        print(
            f"dim {r.dimension}: {r.agreements}/{r.pairs_checked} pairs agree, "
            f"bound <= {r.oracle_bound_used}, {r.elapsed:.2f}s, {status}",
            file=out,
        )
        for c in r.counterexamples:
            print(f"    {json.dumps(c, sort_keys=True)}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bottfano",
        description="Fano condition, cohomology and isomorphism tests for generalized Bott manifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    spec_help = "B(n1;a1,...,an2), an inline JSON matrix, or a JSON file path"

    p = sub.add_parser("fano", help="primitive relations and Fano verdict")
    p.add_argument("spec", help=spec_help)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_fano)

    p = sub.add_parser("relations", help="primitive relations")
    p.add_argument("spec", help=spec_help)
    p.add_argument("--j", type=int)
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("coh", help="cohomology ring relations, basis, c1")
    p.add_argument("spec", help=spec_help)
    p.add_argument("--degree", type=int, help="even cohomological degree of the basis to print")
    p.add_argument("--c1", action="store_true")
    p.add_argument("--reduce", metavar="POLY", help="print the normal form of POLY")
    p.set_defaults(func=cmd_coh)

    p = sub.add_parser("chern", help="total Chern class")
    p.add_argument("spec", help=spec_help)
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("iso", help="ring / c1-preserving isomorphism of two-stage specs")
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    p.add_argument("--c1", action="store_true", help="require c1-preserving isomorphism")
    p.add_argument("--bound", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("enumerate", help="two-stage Fano manifolds of a given dimension")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-rigidity", help="exhaustive c1-rigidity check up to a dimension")
    p.add_argument("--max-dim", type=int, required=True)
    p.add_argument("--bound-policy", type=_bound_policy, default="auto")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (SpecParseError, PolynomialParseError, DimensionMismatchError, ValueError) as exc:
        print(f"bottfano {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
