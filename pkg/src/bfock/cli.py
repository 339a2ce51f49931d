"""Command-line front end.

Subcommands: group, partitions, fock, moment, qt, orthopoly, verify.

Exactness crosses the CLI boundary as strings: rationals as ``p/q`` and
polynomials in canonical text form; floats appear only under ``--mode float``.
Every command is deterministic byte-for-byte for a fixed (config, seed);
the verify report therefore emits ``elapsed_ms: 0`` unless ``--timings`` is
requested.

Exit codes: 0 success / all checks pass, 1 verification failure,
2 usage errors (argparse), 3 resource-guard violations.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from . import orthopoly
from .coxeter import enumerate_group
from .errors import ResourceLimitError, TruncationError
from .fock import SpaceSpec, r_operator, symmetrizer, vacuum_expectation
from .moments import (
    MomentProblem,
    corollary_cases,
    random_problem,
    verify_moment_identity,
    verify_vector_identity,
    wick_moment,
)
from .partitions import enumerate_colored, enumerate_extended, statistics
from .qt import QtSpec, qt_wick, qt_y_moment
from .scalars import Matrix, ScalarMode, frac_identity

REPORT_VERSION = 1

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_RESOURCE = 3


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _mode(args: argparse.Namespace) -> ScalarMode:
    return ScalarMode(
        kind=args.mode,
        alpha=getattr(args, "alpha", Fraction(0)) or Fraction(0),
        q=getattr(args, "q", Fraction(0)) or Fraction(0),
        t=getattr(args, "t", Fraction(0)) or Fraction(0),
    )


def _render_matrix(matrix: Matrix, mode: ScalarMode) -> list[list[str]]:
    return [[mode.render(entry) for entry in row] for row in matrix]


# -- subcommands ----------------------------------------------------------------


def cmd_group(args: argparse.Namespace) -> int:
    records = enumerate_group(args.n)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["window", "l1", "l2", "word"])
    for record in records:
        writer.writerow(
            [
                " ".join(str(v) for v in record.perm.window),
                record.l1,
                record.l2,
                " ".join(str(g) for g in record.word),
            ]
        )
    _emit(args, buffer.getvalue())
    return EXIT_OK


def _format_blocks(blocks) -> str:
    return "|".join(" ".join(str(x) for x in block) for block in blocks)


def _format_colors(colors) -> str:
    return "|".join("".join("+" if c == 1 else "-" for c in cs) for cs in colors)


def cmd_partitions(args: argparse.Namespace) -> int:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(
        [
            "blocks", "colors", "marked",
            "rc", "nest", "rnarc", "narc", "rarc",
            "maxc", "maxl", "mleft", "outarc",
        ]
    )

    def write_row(blocks, colors, marked, stats):
        writer.writerow(
            [
                _format_blocks(blocks),
                _format_colors(colors),
                " ".join(str(b) for b in sorted(marked)),
                stats.rc, stats.nest, stats.rnarc, stats.narc, stats.rarc,
                stats.max_c, stats.max_l, stats.m_left,
                "" if stats.out_arc is None else stats.out_arc,
            ]
        )

    if args.extended:
        for p in enumerate_extended(args.n):
            write_row(p.base.blocks, p.base.colors, p.marked, statistics(p))
    else:
        for p in enumerate_colored(args.n, args.filter):
            write_row(p.blocks, p.colors, (), statistics(p))
    _emit(args, buffer.getvalue())
    return EXIT_OK


def cmd_fock(args: argparse.Namespace) -> int:
    mode = _mode(args)
    mode.require_type_b_range()
    if args.d is not None and args.d != len(args.signature):
        raise ValueError("--d must equal the signature length")
    space = SpaceSpec.diagonal(args.signature, truncation=max(args.n, 1))
    payload = {
        "version": REPORT_VERSION,
        "n": args.n,
        "d": space.d,
        "signature": args.signature,
        "mode": args.mode,
        "symmetrizer": _render_matrix(symmetrizer(args.n, space), mode),
    }
    if args.n >= 1:
        payload["r_operator"] = _render_matrix(r_operator(args.n, space), mode)
    _emit(args, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def _moment_problem(args: argparse.Namespace) -> MomentProblem:
    n = args.n
    if args.seed is not None:
        space = SpaceSpec.diagonal(args.signature, truncation=max(n, 1))
        return random_problem(
            random.Random(args.seed), n, space, zero_lams=not args.lambdas
        )
    space = SpaceSpec.diagonal("+", truncation=max(n, 1))
    lams = list(args.lambdas) + [Fraction(0)] * (n - len(args.lambdas))
    return MomentProblem.build(
        xs=[(Fraction(1),)] * n,
        ts=[((Fraction(1),),)] * n,
        lams=lams[:n],
        space=space,
    )


def cmd_moment(args: argparse.Namespace) -> int:
    mode = _mode(args)
    mode.require_type_b_range()
    prob = _moment_problem(args)
    partition_side = wick_moment(prob)
    payload = {
        "version": REPORT_VERSION,
        "n": args.n,
        "mode": args.mode,
        "partition_side": mode.render(partition_side),
    }
    status = EXIT_OK
    if args.check:
        operator_side = vacuum_expectation(prob.operators(), prob.space)
        payload["operator_side"] = mode.render(operator_side)
        payload["equal"] = operator_side == partition_side
        if not payload["equal"]:
            status = EXIT_CHECK_FAILED
    _emit(args, json.dumps(payload, indent=2) + "\n")
    return status


def cmd_qt(args: argparse.Namespace) -> int:
    mode = _mode(args)
    if not args.t_symbolic:
        mode.require_qt_range()
    n = args.n
    spec = QtSpec.make(1, truncation=max(n, 1))
    unit = (Fraction(1),)
    identity = frac_identity(1)
    zero = ((Fraction(0),),)
    t_matrix = identity if args.T == "identity" else zero
    wick = qt_wick([unit] * n, [t_matrix] * n, spec)
    if args.q is not None:
        wick = wick.subs(q=args.q)
    if not args.t_symbolic:
        wick = wick.subs(t=args.t)
    payload = {
        "version": REPORT_VERSION,
        "n": n,
        "T": args.T,
        "wick": str(wick),
    }
    status = EXIT_OK
    if args.check:
        operator_side = qt_y_moment([unit] * n, [t_matrix] * n, spec)
        if args.q is not None:
            operator_side = operator_side.subs(q=args.q)
        if not args.t_symbolic:
            operator_side = operator_side.subs(t=args.t)
        payload["operator_side"] = str(operator_side)
        payload["equal"] = operator_side == wick
        if not payload["equal"]:
            status = EXIT_CHECK_FAILED
    _emit(args, json.dumps(payload, indent=2) + "\n")
    return status


def cmd_orthopoly(args: argparse.Namespace) -> int:
    mode = _mode(args)
    kwargs = {}
    if args.family == "alsalam-ismail":
        from .scalars import T as t_var

        kwargs = {"a": Fraction(-1), "b": t_var * t_var}
    jp = orthopoly.family(args.family, **kwargs)
    table = orthopoly.polys(jp, args.N)
    moments = orthopoly.moments_from_jacobi(jp, args.N)
    payload = {
        "version": REPORT_VERSION,
        "family": args.family,
        "N": args.N,
        "beta": [mode.render(jp.beta(k)) for k in range(args.N + 1)],
        "gamma": [mode.render(jp.gamma(k)) for k in range(args.N + 1)],
        "polynomials": [[mode.render(c) for c in row] for row in table],
        "moments": [mode.render(m) for m in moments],
    }
    _emit(args, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


# -- verify suite -----------------------------------------------------------------

Check = tuple[str, Callable[[], tuple[bool, str, str]]]


def _wick_checks(n_max: int, seed: int) -> list[Check]:
    checks: list[Check] = []
    for n in range(1, n_max + 1):

        def run(n=n) -> tuple[bool, str, str]:
            rng = random.Random(seed + n)
            space = SpaceSpec.diagonal("+-", truncation=max(n, 1))
            prob = random_problem(rng, n, space)
            report = verify_moment_identity(prob)
            return report.equal, report.lhs, report.rhs

        checks.append((f"wick-n{n}", run))
    return checks


def _vector_checks(n_max: int, seed: int) -> list[Check]:
    checks: list[Check] = []
    for n in range(1, n_max + 1):

        def run(n=n) -> tuple[bool, str, str]:
            rng = random.Random(seed + 100 + n)
            space = SpaceSpec.diagonal("+-", truncation=max(n, 1))
            prob = random_problem(rng, n, space)
            for eps in product("*1'", repeat=n):
                report = verify_vector_identity(eps, prob)
                if not report.equal:
                    return False, report.lhs, report.rhs
            return True, "all eps equal", "all eps equal"

        checks.append((f"vector-n{n}", run))
    return checks


def _corollary_checks(n_max: int, seed: int) -> list[Check]:
    def run() -> tuple[bool, str, str]:
        for n in range(1, n_max + 1):
            rng = random.Random(seed + 200 + n)
            space = SpaceSpec.diagonal("++", truncation=max(n, 1))
            prob = random_problem(rng, n, space, zero_lams=True)
            full = wick_moment(prob)
            if full.subs(alpha=0) != corollary_cases("q-case", prob):
                return False, str(full.subs(alpha=0)), "q-case mismatch"
            if full.subs(q=0) != corollary_cases("free-alpha", prob):
                return False, str(full.subs(q=0)), "free-alpha mismatch"
            zero_t = tuple(
                tuple(tuple(Fraction(0) for _ in range(2)) for _ in range(2))
                for _ in range(n)
            )
            gaussian = MomentProblem(
                xs=prob.xs, ts=zero_t, lams=prob.lams, space=space
            )
            if wick_moment(gaussian) != corollary_cases("gaussian", gaussian):
                return False, "gaussian mismatch", ""
        return True, "all specializations equal", "all specializations equal"

    return [("corollaries", run)]


def _qt_checks(n_max: int, seed: int) -> list[Check]:
    def run() -> tuple[bool, str, str]:
        spec = QtSpec.make(2, truncation=max(n_max, 1))
        for n in range(1, n_max + 1):
            rng = random.Random(seed + 300 + n)
            prob = random_problem(rng, n, spec.space, zero_lams=True)
            lhs = qt_y_moment(prob.xs, prob.ts, spec)
            rhs = qt_wick(prob.xs, prob.ts, spec)
            if lhs != rhs:
                return False, str(lhs), str(rhs)
        return True, "operator = partition", "operator = partition"

    def fixture() -> tuple[bool, str, str]:
        spec = QtSpec.make(1, truncation=5)
        unit = (Fraction(1),)
        value = qt_wick([unit] * 5, [frac_identity(1)] * 5, spec).subs(q=0)
        from .scalars import T as t_var

        expected = t_var**2 + 2 * t_var + 3
        return value == expected, str(value), str(expected)

    return [("qt-identity", run), ("qt-y5-fixture", fixture)]


def _factorization_checks() -> list[Check]:
    def run() -> tuple[bool, str, str]:
        from .scalars import mat_eq, mat_kron, mat_mul, identity_matrix

        for signature in ("+", "+-"):
            space = SpaceSpec.diagonal(signature, truncation=4)
            for n in range(1, 5):
                lhs = symmetrizer(n, space)
                rhs = mat_mul(
                    mat_kron(symmetrizer(n - 1, space), identity_matrix(space.d)),
                    r_operator(n, space),
                )
                if not mat_eq(lhs, rhs):
                    return False, f"P({n}) factorization", signature
        return True, "P = (P⊗I)R for n <= 4", "exact"

    def bounds() -> tuple[bool, str, str]:
        from .fock import gram_min_eigenvalue, r_operator_norm
        from .scalars import qint

        space = SpaceSpec.diagonal("+-", truncation=5)
        for alpha, q in ((0.4, 0.3), (0.4, -0.3), (-0.4, 0.3), (-0.4, -0.3)):
            for n in range(1, 5):
                bound = (1 + abs(alpha) * abs(q) ** (n - 1)) * qint(n).eval_float(
                    0, abs(q)
                )
                if r_operator_norm(space, n, alpha, q) > bound + 1e-9:
                    return False, f"norm bound n={n}", f"({alpha},{q})"
                if gram_min_eigenvalue(space, n, alpha, q) <= 0:
                    return False, f"gram positivity n={n}", f"({alpha},{q})"
        return True, "norm bounds and positivity", "within tolerance"

    return [("factorization", run), ("spectral-bounds", bounds)]


def _orthopoly_checks() -> list[Check]:
    def identities() -> tuple[bool, str, str]:
        for which, sign in (("alphaq", "+"), ("alphaq", "-"), ("qt", "+")):
            report = orthopoly.vacuum_polynomial_identity(which, 5, sign=sign)
            if not report.equal:
                return False, report.name, report.detail
        for which, model in (("alphaq-poisson-B", "alphaq"), ("qt-poisson", "qt")):
            jp = orthopoly.family(which)
            if orthopoly.moments_from_jacobi(jp, 6) != orthopoly.operator_moments(
                model, 6
            ):
                return False, which, "moment mismatch"
        return True, "polynomial and moment identities", "exact"

    def substitution() -> tuple[bool, str, str]:
        report = orthopoly.substitution_check(10)
        return report.equal, report.name, report.detail

    return [("orthopoly-identities", identities), ("orthopoly-substitution", substitution)]


def _group_checks() -> list[Check]:
    def run() -> tuple[bool, str, str]:
        from .partitions import set_partitions

        for n in range(1, 6):
            expected = 2**n
            for k in range(2, n + 1):
                expected *= k
            if len(enumerate_group(n)) != expected:
                return False, f"|group({n})|", str(expected)
        for n in range(1, 8):
            partitions = list(set_partitions(n))
            expected_colored = sum(2 ** (n - len(blocks)) for blocks in partitions)
            if sum(1 for _ in enumerate_colored(n)) != expected_colored:
                return False, f"colored count n={n}", str(expected_colored)
        return True, "group and partition counts", "exact"

    return [("group-partition-counts", run)]


SUITES: dict[str, Callable[[int, int], list[Check]]] = {
    "wick": lambda n, seed: _wick_checks(min(n, 4), seed),
    "vector": lambda n, seed: _vector_checks(min(n, 4), seed),
    "corollaries": lambda n, seed: _corollary_checks(min(n, 5), seed),
    "qt": lambda n, seed: _qt_checks(min(n, 5), seed),
    "factorization": lambda n, seed: _factorization_checks(),
    "orthopoly": lambda n, seed: _orthopoly_checks(),
    "group": lambda n, seed: _group_checks(),
}


def cmd_verify(args: argparse.Namespace) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    checks: list[Check] = []
    for name in names:
        checks.extend(SUITES[name](args.n, args.seed))
    results = []
    all_ok = True
    for name, run in sorted(checks, key=lambda item: item[0]):
        started = time.perf_counter()
        ok, lhs, rhs = run()
        elapsed = int((time.perf_counter() - started) * 1000)
        all_ok = all_ok and ok
        results.append(
            {
                "name": name,
                "status": "pass" if ok else "fail",
                "lhs": lhs if not ok else "",
                "rhs": rhs if not ok else "",
                "elapsed_ms": elapsed if args.timings else 0,
            }
        )
    payload = {"version": REPORT_VERSION, "checks": results}
    _emit(args, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bfock",
        description="Exact type-B deformed Fock spaces and their Wick formulas.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", default=None, help="write output to a file")

    p = sub.add_parser("group", help="enumerate the signed-permutation group")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--stats", action="store_true", help="included for compatibility; stats are always emitted")
    common(p)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("partitions", help="enumerate colored/extended partitions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--filter", choices=["all", "no-singletons", "pairs-only"], default="all"
    )
    p.add_argument("--extended", action="store_true")
    p.add_argument("--stats", action="store_true", help="included for compatibility; stats are always emitted")
    common(p)
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("fock", help="emit symmetrizer and recursion-factor matrices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=None, help="defaults to len(signature)")
    p.add_argument("--signature", default="+")
    p.add_argument("--alpha", type=_fraction, default=Fraction(0))
    p.add_argument("--q", type=_fraction, default=Fraction(0))
    p.add_argument("--mode", choices=["symbolic", "rational", "float"], default="symbolic")
    common(p)
    p.set_defaults(func=cmd_fock)

    p = sub.add_parser("moment", help="moment of a type-B operator product")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=_fraction, default=Fraction(0))
    p.add_argument("--q", type=_fraction, default=Fraction(0))
    p.add_argument(
        "--lambda",
        dest="lambdas",
        type=_fraction,
        action="append",
        default=[],
        help="shift constants, repeatable (lambda_1 first)",
    )
    p.add_argument("--mode", choices=["symbolic", "rational"], default="symbolic")
    p.add_argument("--check", action="store_true", help="also compute the operator side")
    p.add_argument("--seed", type=int, default=None, help="random instance instead of the unit one")
    p.add_argument("--signature", default="+-", help="signature for seeded instances")
    common(p)
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("qt", help="(q,t)-model moments")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=_fraction, default=None)
    p.add_argument("--t", type=_fraction, default=Fraction(1, 2))
    p.add_argument("--t-symbolic", dest="t_symbolic", action="store_true")
    p.add_argument("--T", choices=["identity", "zero"], default="identity")
    p.add_argument("--mode", choices=["symbolic", "rational"], default="symbolic")
    p.add_argument("--check", action="store_true")
    common(p)
    p.set_defaults(func=cmd_qt)

    p = sub.add_parser("orthopoly", help="polynomial tables and moment sequences")
    p.add_argument(
        "--family",
        choices=["alphaq-poisson-B", "qt-poisson", "alsalam-ismail"],
        required=True,
    )
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--alpha", type=_fraction, default=Fraction(0))
    p.add_argument("--q", type=_fraction, default=Fraction(0))
    p.add_argument("--t", type=_fraction, default=Fraction(0))
    p.add_argument("--mode", choices=["symbolic", "rational"], default="symbolic")
    common(p)
    p.set_defaults(func=cmd_orthopoly)

    p = sub.add_parser("verify", help="run the acceptance-style check suites")
    p.add_argument(
        "--suite",
        choices=sorted(SUITES) + ["all"],
        default="all",
    )
    p.add_argument("--n", type=int, default=4, help="size cap inside the suites")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--timings", action="store_true", help="emit real elapsed_ms (non-deterministic)")
    common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (TruncationError, ValueError) as exc:
        parser.error(str(exc))
        return 2  # unreachable; parser.error exits


if __name__ == "__main__":
    sys.exit(main())
