"""Command-line front end: seq, chain, solve, verify, limit.

Results go to stdout (or --out); diagnostics go to stderr as a JSON error
object.  Exit codes: 0 success, 2 parameter error, 3 verification failure,
4 solver failure or non-convergence.  Every command is deterministic given
its full flag set, including --seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .chains import (
    ChainFamily,
    ParameterError,
    balancing_chain,
    balancing_chain_q,
    balancing_like_chain,
    balancing_like_chain_q,
    build,
    lucas_chain,
    lucas_chain_q,
    lucas_cobalancing_chain,
    matrix_from_json,
    matrix_to_csv,
    matrix_to_json,
    pell_ratio_chain,
    truncated_infinite_chain,
    truncated_infinite_chain_q,
)
from .quadratic import beta_power_identity, float_upper, silver_ratio_gap
from .sequences import NAMED_KINDS, balancing_like, sequence
from .steady import (
    ConvergenceError,
    SolverError,
    exact_vector_to_json,
    float_vector_to_json,
    power_iteration,
    simulate,
    solve_exact,
    vector_to_csv,
)
from .verify import q_invariance, truncation_convergence, verify_family

__all__ = ["main", "entry"]

EXIT_OK = 0
EXIT_PARAMETER = 2
EXIT_VERIFY_FAILED = 3
EXIT_SOLVER = 4

_SEQ_KINDS = (*NAMED_KINDS, "balancing-like")
_CHAIN_FAMILIES = (
    "balancing",
    "balancing-q",
    "pell-ratio",
    "lucas",
    "lucas-q",
    "lucas-cobalancing",
    "truncated-infinite",
    "truncated-infinite-q",
    "balancing-like",
    "balancing-like-q",
)
_FAMILY_MINIMUM = {kind: 4 if kind == "lucas-cobalancing" else 3 for kind in _CHAIN_FAMILIES}


class UsageError(Exception):
    """Bad command line; reported as a JSON error object with exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: A002 - argparse API
        raise UsageError(message)


def _add_io_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--out", default=None, help="write results to this path")


def _build_parser() -> _Parser:
    parser = _Parser(prog="balchain", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p_seq = subs.add_parser("seq", help="emit sequence terms")
    p_seq.add_argument("kind", choices=_SEQ_KINDS)
    p_seq.add_argument("--count", type=int, required=True)
    p_seq.add_argument("--a", type=int, default=None, help="multiplier for balancing-like")
    _add_io_flags(p_seq)

    p_chain = subs.add_parser("chain", help="emit a transition matrix")
    p_chain.add_argument("family", choices=_CHAIN_FAMILIES)
    p_chain.add_argument("--n", type=int, required=True)
    p_chain.add_argument("--a", type=int, default=None)
    p_chain.add_argument("--q", default=None, help='fraction like "1/7"')
    _add_io_flags(p_chain)

    p_solve = subs.add_parser("solve", help="stationary distribution of a chain")
    p_solve.add_argument("family", nargs="?", choices=_CHAIN_FAMILIES)
    p_solve.add_argument("--n", type=int, default=None)
    p_solve.add_argument("--a", type=int, default=None)
    p_solve.add_argument("--q", default=None)
    p_solve.add_argument("--matrix-file", default=None, help="JSON matrix from `chain --format json`")
    p_solve.add_argument("--method", choices=("exact", "power", "simulate"), default="exact")
    p_solve.add_argument("--tol", type=float, default=1e-12)
    p_solve.add_argument("--max-iter", type=int, default=10**6)
    p_solve.add_argument("--steps", type=int, default=10**6)
    p_solve.add_argument("--seed", type=int, default=0)
    p_solve.add_argument("--start", type=int, default=0)
    _add_io_flags(p_solve)

    p_verify = subs.add_parser("verify", help="check closed forms against the solver")
    p_verify.add_argument("family", nargs="?", choices=_CHAIN_FAMILIES)
    p_verify.add_argument("--all", action="store_true")
    p_verify.add_argument(
        "--beta-powers",
        action="store_true",
        help="check BETA**(n+1) == BETA*B[n+1] - B[n] for n up to --max-n",
    )
    p_verify.add_argument("--n", type=int, default=None)
    p_verify.add_argument("--min-n", type=int, default=None)
    p_verify.add_argument("--max-n", type=int, default=None)
    p_verify.add_argument("--a", type=int, default=None)
    p_verify.add_argument("--q", default=None)
    _add_io_flags(p_verify)

    p_limit = subs.add_parser("limit", help="convergence tables toward the infinite chain")
    p_limit.add_argument("--sizes", default=None, help='comma list like "5,10,20"')
    p_limit.add_argument("--ratio", action="store_true", help="B(n-1)/B(n) gaps to the limit ratio")
    p_limit.add_argument("--max-n", type=int, default=None)
    p_limit.add_argument("--digits", type=int, default=50)
    _add_io_flags(p_limit)

    return parser


def _parse_q(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse fraction {text!r}: {exc}") from None


def _make_family(kind: str, n: int | None, a: int | None, q: str | None) -> ChainFamily:
    if n is None:
        raise UsageError(f"family {kind} requires --n")
    needs_a = kind in ("balancing-like", "balancing-like-q")
    needs_q = kind.endswith("-q")
    if needs_a and a is None:
        raise UsageError(f"family {kind} requires --a")
    if needs_q and q is None:
        raise UsageError(f"family {kind} requires --q")
    q_val = _parse_q(q) if needs_q else None
    factories = {
        "balancing": lambda: balancing_chain(n),
        "balancing-q": lambda: balancing_chain_q(n, q_val),
        "pell-ratio": lambda: pell_ratio_chain(n),
        "lucas": lambda: lucas_chain(n),
        "lucas-q": lambda: lucas_chain_q(n, q_val),
        "lucas-cobalancing": lambda: lucas_cobalancing_chain(n),
        "truncated-infinite": lambda: truncated_infinite_chain(n),
        "truncated-infinite-q": lambda: truncated_infinite_chain_q(n, q_val),
        "balancing-like": lambda: balancing_like_chain(n, a),
        "balancing-like-q": lambda: balancing_like_chain_q(n, a, q_val),
    }
    return factories[kind]()


def _cmd_seq(args: argparse.Namespace) -> tuple[str, int]:
    if args.count < 0:
        raise UsageError(f"--count must be >= 0, got {args.count}")
    if args.kind == "balancing-like":
        if args.a is None:
            raise UsageError("seq balancing-like requires --a")
        kind = balancing_like(args.a)
    else:
        kind = NAMED_KINDS[args.kind]
    terms = sequence(kind, args.count)
    if args.format == "json":
        return json.dumps([str(t) for t in terms]), EXIT_OK
    return "\n".join(str(t) for t in terms), EXIT_OK


def _cmd_chain(args: argparse.Namespace) -> tuple[str, int]:
    matrix = build(_make_family(args.family, args.n, args.a, args.q))
    if args.format == "json":
        return matrix_to_json(matrix), EXIT_OK
    return matrix_to_csv(matrix), EXIT_OK


def _cmd_solve(args: argparse.Namespace) -> tuple[str, int]:
    if args.matrix_file:
        matrix = matrix_from_json(Path(args.matrix_file).read_text())
    elif args.family:
        matrix = build(_make_family(args.family, args.n, args.a, args.q))
    else:
        raise UsageError("solve needs a family or --matrix-file")
    if args.method == "exact":
        pi = solve_exact(matrix)
        if args.format == "json":
            return exact_vector_to_json(pi), EXIT_OK
        return vector_to_csv(pi), EXIT_OK
    if args.method == "power":
        vector, iterations = power_iteration(matrix, tol=args.tol, max_iter=args.max_iter)
        if args.format == "json":
            payload = json.loads(float_vector_to_json(vector, args.tol))
            payload["iterations"] = iterations
            return json.dumps(payload), EXIT_OK
        return vector_to_csv(vector), EXIT_OK
    result = simulate(matrix, steps=args.steps, seed=args.seed, start=args.start)
    if args.format == "json":
        return (
            json.dumps(
                {
                    "pi": list(result.empirical),
                    "steps": result.steps,
                    "seed": result.seed,
                    "start": args.start,
                    "visits": list(result.visits),
                    "rng": result.rng,
                }
            ),
            EXIT_OK,
        )
    return vector_to_csv(list(result.empirical)), EXIT_OK


def _summary_row(
    family: str, n: int, params: dict, ok: bool, max_gap: str, notes: str = ""
) -> dict:
    return {
        "family": family,
        "n": n,
        "params": params,
        "exact_match": ok,
        "max_gap": max_gap,
        "notes": notes,
    }


def _report_row(report) -> dict:
    params: dict = {}
    if report.family.a is not None:
        params["a"] = report.family.a
    if report.family.q is not None:
        params["q"] = str(report.family.q)
    return _summary_row(
        report.family.kind,
        report.family.n,
        params,
        report.exact_match,
        str(report.max_gap),
        report.notes,
    )


def _verify_range(kind: str, sizes: range, a: int | None, q: str | None) -> list[dict]:
    return [
        _report_row(verify_family(_make_family(kind, n, a, q))) for n in sizes
    ]


def _q_invariance_row(kind: str, n: int, q_values: list[Fraction], a: int | None) -> dict:
    report = q_invariance(n, q_values, kind, a=a)
    params: dict = {"q": [str(q) for q in report.q_values]}
    if a is not None:
        params["a"] = a
    return _summary_row(
        f"q-invariance:{kind}",
        n,
        params,
        report.identical and report.matches_base,
        "0" if report.identical and report.matches_base else "mismatch",
        "stationary vector is identical across all listed q",
    )


def _beta_power_row(max_n: int) -> dict:
    ok = all(beta_power_identity(k) for k in range(1, max_n + 1))
    return _summary_row(
        "beta-power-identity",
        max_n,
        {},
        ok,
        "0" if ok else "mismatch",
        "BETA**(n+1) == BETA*B[n+1] - B[n] checked exactly in Z[sqrt(2)]",
    )


def _cmd_verify(args: argparse.Namespace) -> tuple[str, int]:
    rows: list[dict] = []
    if args.beta_powers:
        rows.append(_beta_power_row(args.max_n or 100))
    elif args.all:
        max_n = args.max_n or 25
        for kind in ("balancing", "pell-ratio", "lucas", "truncated-infinite"):
            rows.extend(_verify_range(kind, range(3, max_n + 1), None, None))
        rows.extend(_verify_range("lucas-cobalancing", range(4, max_n + 1), None, None))
        for a in (2, 3, 4, 6, 10):
            rows.extend(_verify_range("balancing-like", range(3, max_n + 1), a, None))
        sixths = [Fraction(1, 6), Fraction(1, 7), Fraction(1, 100)]
        rows.append(_q_invariance_row("balancing", 10, sixths, None))
        rows.append(_q_invariance_row("lucas", 10, sixths, None))
        rows.append(_q_invariance_row("truncated-infinite", 10, sixths, None))
        rows.append(
            _q_invariance_row(
                "balancing-like", 10, [Fraction(1, 4), Fraction(1, 5), Fraction(1, 100)], 4
            )
        )
        rows.append(_beta_power_row(100))
    elif args.family:
        if args.n is not None:
            sizes = range(args.n, args.n + 1)
        elif args.max_n is not None:
            low = args.min_n or _FAMILY_MINIMUM[args.family]
            sizes = range(low, args.max_n + 1)
        else:
            raise UsageError("verify needs --n or --max-n for a single family")
        rows.extend(_verify_range(args.family, sizes, args.a, args.q))
    else:
        raise UsageError("verify needs a family, --all, or --beta-powers")

    all_ok = all(r["exact_match"] for r in rows)
    if args.format == "json":
        text = json.dumps({"all_ok": all_ok, "reports": rows})
    else:
        lines = ["family,n,params,exact_match,max_gap"]
        for r in rows:
            params = ";".join(f"{k}={v}" for k, v in r["params"].items())
            lines.append(
                f"{r['family']},{r['n']},{params},{r['exact_match']},{r['max_gap']}"
            )
        text = "\n".join(lines)
    return text, EXIT_OK if all_ok else EXIT_VERIFY_FAILED


def _cmd_limit(args: argparse.Namespace) -> tuple[str, int]:
    if args.ratio:
        max_n = args.max_n or 10
        if max_n < 2:
            raise UsageError("--max-n must be >= 2 for --ratio")
        table = [
            (n, float_upper(silver_ratio_gap(n, args.digits)))
            for n in range(2, max_n + 1)
        ]
    elif args.sizes:
        try:
            sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
        except ValueError as exc:
            raise UsageError(f"bad --sizes list: {exc}") from None
        if not sizes or min(sizes) < 3:
            raise UsageError("--sizes must list integers >= 3")
        table = truncation_convergence(sizes, digits=args.digits)
    else:
        raise UsageError("limit needs --sizes or --ratio")
    if args.format == "json":
        return json.dumps([{"n": n, "gap": gap} for n, gap in table]), EXIT_OK
    return "\n".join(f"{n},{gap!r}" for n, gap in table), EXIT_OK


_HANDLERS = {
    "seq": _cmd_seq,
    "chain": _cmd_chain,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "limit": _cmd_limit,
}


def _fail(code: int, message: str) -> int:
    print(json.dumps({"error": {"code": code, "message": message}}), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        text, code = _HANDLERS[args.command](args)
    except UsageError as exc:
        return _fail(EXIT_PARAMETER, str(exc))
    except (ParameterError, ValueError) as exc:
        return _fail(EXIT_PARAMETER, str(exc))
    except ConvergenceError as exc:
        return _fail(EXIT_SOLVER, str(exc))
    except SolverError as exc:
        return _fail(EXIT_SOLVER, str(exc))
    except OSError as exc:
        return _fail(EXIT_PARAMETER, str(exc))
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return code


def entry() -> None:
    sys.exit(main())
