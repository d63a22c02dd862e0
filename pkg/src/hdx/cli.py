"""Command-line front end.

Exit status: 0 on success, 1 when validation or a verification fails,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from hdx import io
from hdx.covers import quotient_complex, twisted_complex, validate_gamma_data, verify_shapiro
from hdx.errors import HDXError
from hdx.family import family_report
from hdx.fixtures import fixture_cycle_z, fixture_torus_z2
from hdx.group_ring import evaluate_matrix, laplacian_symbol
from hdx.hodge import CochainComplex, betti_exact, full_laplacian, spectrum_report
from hdx.simplicial import (
    boundary_matrix,
    coboundary_matrix,
    matrix_to_csv,
    validate_complex,
    vertex_degree_profile,
)


class _Failure(Exception):
    pass


def _emit(args, payload: dict):
    text = io.dumps(payload)
    if getattr(args, "out", None):
        io.write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def cmd_complex_info(args):
    K = io.complex_from_json(io.load_json(args.facets))
    problems = validate_complex(K)
    _emit(args, {
        "vertex_count": K.vertex_count,
        "dim": K.dim,
        "counts": K.counts(),
        "degree_profiles": {
            str(l): {str(k): v for k, v in sorted(vertex_degree_profile(K, l).items())}
            for l in range(K.dim + 1)
        },
        "problems": problems,
    })
    if problems:
        raise _Failure("; ".join(problems))


def cmd_complex_spectrum(args):
    K = io.complex_from_json(io.load_json(args.facets))
    M = CochainComplex.from_simplicial(K)
    _emit(args, io.spectrum_report_to_json(spectrum_report(M, args.degree)))


def cmd_complex_betti(args):
    K = io.complex_from_json(io.load_json(args.facets))
    M = CochainComplex.from_simplicial(K)
    _emit(args, {"betti": [betti_exact(M, l) for l in range(M.top + 1)]})


def cmd_complex_matrix(args):
    K = io.complex_from_json(io.load_json(args.facets))
    if args.kind == "boundary":
        M = boundary_matrix(K, args.degree)
    else:
        M = coboundary_matrix(K, args.degree)
    text = matrix_to_csv(M)
    if args.out:
        io.write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _load_gamma_action(args):
    G = io.gamma_from_json(io.load_json(args.gamma))
    act = io.action_from_json(io.load_json(args.action))
    return G, act


def cmd_quotient_build(args):
    G, act = _load_gamma_action(args)
    K = quotient_complex(G, act, top=args.n)
    _emit(args, io.complex_to_json(K))


def cmd_shapiro_verify(args):
    G, act = _load_gamma_action(args)
    report = verify_shapiro(G, act, args.degree)
    if args.out:
        io.write_atomic(args.out, io.dumps(report.to_dict()))
    if not report.matrices_equal:
        print(f"MISMATCH (max entry difference {report.max_entry_diff})")
        raise _Failure("twisted and quotient coboundaries differ")
    print("EXACT MATCH")


def cmd_symbol_check(args):
    G, act = _load_gamma_action(args)
    l = args.degree
    if not 0 <= l <= G.top:
        raise HDXError(f"degree {l} outside [0, {G.top}]")
    low = G.coboundary_symbol(l) if l >= 1 else None
    high = G.coboundary_symbol(l + 1) if l < G.top else None
    D = evaluate_matrix(laplacian_symbol(low, high, G.count(l)), act)
    lap = full_laplacian(twisted_complex(G, act), l)
    diff = int(np.max(np.abs(D - lap))) if D.size else 0
    if args.out:
        io.write_atomic(args.out, io.dumps({"degree": l, "matrices_equal": diff == 0, "max_entry_diff": diff}))
    if diff:
        print(f"MISMATCH (max entry difference {diff})")
        raise _Failure("symbol does not evaluate to the twisted Laplacian")
    print("EXACT MATCH")


def cmd_family_report(args):
    G = io.gamma_from_json(io.load_json(args.gamma))
    actions = [io.action_from_json(io.load_json(p)) for p in args.actions]
    labels = [a.label or p for a, p in zip(actions, args.actions)]
    problems = validate_gamma_data(G, actions)
    if problems:
        raise _Failure("; ".join(problems))
    report = family_report(G, actions, args.n, args.threshold, labels)
    _emit(args, io.family_to_json(report))
    if args.csv:
        io.write_atomic(args.csv, io.family_csv(report))


def cmd_fixture(args):
    if args.fixture == "cycle":
        G, act = fixture_cycle_z(args.m)
    else:
        G, act = fixture_torus_z2(args.m1, args.m2)
    io.write_atomic(args.gamma, io.dumps(G.to_json()))
    io.write_atomic(args.action, io.dumps(act.to_json()))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hdx", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="group", required=True)

    cx = sub.add_parser("complex", help="simplicial complex from a facets file").add_subparsers(
        dest="action_", required=True)
    for name, fn in [("info", cmd_complex_info), ("spectrum", cmd_complex_spectrum),
                     ("betti", cmd_complex_betti), ("matrix", cmd_complex_matrix)]:
        q = cx.add_parser(name)
        q.add_argument("--facets", required=True)
        q.add_argument("--out")
        if name in ("spectrum", "matrix"):
            q.add_argument("--degree", type=int, required=True)
        if name == "matrix":
            q.add_argument("--kind", choices=["boundary", "coboundary"], default="coboundary")
        q.set_defaults(func=fn)

    def gamma_action(q):
        q.add_argument("--gamma", required=True)
        q.add_argument("--action", required=True)
        q.add_argument("--out")

    q = sub.add_parser("quotient").add_subparsers(dest="action_", required=True).add_parser("build")
    gamma_action(q)
    q.add_argument("--n", type=int)
    q.set_defaults(func=cmd_quotient_build)

    q = sub.add_parser("shapiro").add_subparsers(dest="action_", required=True).add_parser("verify")
    gamma_action(q)
    q.add_argument("--degree", type=int, required=True)
    q.set_defaults(func=cmd_shapiro_verify)

    q = sub.add_parser("symbol").add_subparsers(dest="action_", required=True).add_parser("check")
    gamma_action(q)
    q.add_argument("--degree", type=int, required=True)
    q.set_defaults(func=cmd_symbol_check)

    q = sub.add_parser("family").add_subparsers(dest="action_", required=True).add_parser("report")
    q.add_argument("--gamma", required=True)
    q.add_argument("--actions", nargs="+", required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--threshold", type=float, required=True)
    q.add_argument("--out")
    q.add_argument("--csv")
    q.set_defaults(func=cmd_family_report)

    fx = sub.add_parser("fixture").add_subparsers(dest="fixture", required=True)
    q = fx.add_parser("cycle")
    q.add_argument("--m", type=int, required=True)
    q2 = fx.add_parser("torus")
    q2.add_argument("--m1", type=int, required=True)
    q2.add_argument("--m2", type=int, required=True)
    for q in (q, q2):
        q.add_argument("--gamma", required=True)
        q.add_argument("--action", required=True)
        q.set_defaults(func=cmd_fixture)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except (HDXError, _Failure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, KeyError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
