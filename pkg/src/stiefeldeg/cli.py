"""Command-line front end: ``stiefeldeg {lambda,intersect,solve,check} FILE``.

Exit codes: 0 ok, 2 hypothesis failure, 3 parse/validation error, 4 resource cap.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .errors import (
    HypothesisFailure,
    NotZeroDimensional,
    OracleError,
    ResourceLimitExceeded,
    StiefelError,
    ValidationError,
)
from .groebner import DEFAULT_MAX_REDUCTIONS, buchberger, is_zero_dimensional, quotient_algebra
from .immersion import ImmersionProblem, build_alpha, intersection_number
from .oracle import DEFAULT_TOL, oracle_lambda, solve_real_points
from .polycore import GREVLEX, LEX, PolyMatrix, Ring
from .polyparse import ParseError, _VAR_RE, format_poly, parse_poly
from .stiefel import RetryPolicy, StiefelProblem, compute_lambda, minors_ideal, prepare, real_point_count

EXIT_OK = 0
EXIT_HYPOTHESIS = 2
EXIT_INPUT = 3
EXIT_RESOURCE = 4

SCHEMA = "1"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# -- problem files ---------------------------------------------------------


def _q(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _parse_field(text, ring, where):
    if not isinstance(text, str):
        raise ValidationError(f"{where}: expected a polynomial string, got {type(text).__name__}")
    try:
        return parse_poly(text, ring)
    except ParseError as exc:
        raise ValidationError(f"{where}: parse error at offset {exc.offset}: expected {exc.expected}, found {exc.found}") from exc


def load_problem(data: bytes):
    """Decode a problem file into a StiefelProblem or ImmersionProblem."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise ValidationError(f"problem file is not UTF-8 (offset {exc.start})") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON at offset {exc.pos}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ValidationError("problem file must be a JSON object")
    kind = doc.get("kind")
    if kind not in ("stiefel", "immersion"):
        raise ValidationError(f"'kind' must be \"stiefel\" or \"immersion\", got {kind!r}")
    variables = doc.get("variables")
    if not isinstance(variables, list) or not all(isinstance(v, str) and _VAR_RE.match(v) for v in variables):
        raise ValidationError("'variables' must be a list of names matching [A-Za-z][A-Za-z0-9_]*")
    if len(set(variables)) != len(variables):
        raise ValidationError("'variables' contains duplicates")
    ring = Ring(variables)
    if "f" not in doc:
        raise ValidationError("missing field 'f'")
    f = _parse_field(doc["f"], ring, "f")

    if kind == "stiefel":
        grid = doc.get("matrix")
        if not isinstance(grid, list) or not grid or not all(isinstance(r, list) and r for r in grid):
            raise ValidationError("'matrix' must be a nonempty list of nonempty rows")
        if len({len(r) for r in grid}) != 1:
            raise ValidationError("'matrix' rows have different lengths")
        n, k = len(grid), len(grid[0])
        if k < 2:
            raise ValidationError(f"matrix needs k >= 2 columns, got {k}")
        if n - k <= 0:
            raise ValidationError(f"matrix must satisfy n-k > 0 (n={n} rows, k={k} columns)")
        if (n - k) % 2:
            raise ValidationError(f"matrix must satisfy n-k even (n-k={n - k})")
        if len(variables) != n - k + 1:
            raise ValidationError(f"an {n}x{k} matrix needs n-k+1 = {n - k + 1} variables, got {len(variables)}")
        rows = [[_parse_field(e, ring, f"matrix[{i}][{j}]") for j, e in enumerate(r)] for i, r in enumerate(grid)]
        return StiefelProblem(PolyMatrix(rows, ring), f)

    g = doc.get("g")
    if not isinstance(g, list):
        raise ValidationError("'g' must be a list of polynomial strings")
    if len(g) % 2:
        raise ValidationError(f"'g' must have even length 2m, got {len(g)}")
    m = len(g) // 2
    if m < 2 or m % 2:
        raise ValidationError(f"m must be even and >= 2 (len(g) = 2m = {len(g)})")
    if len(variables) != m + 1:
        raise ValidationError(f"immersion with m={m} needs m+1 = {m + 1} variables, got {len(variables)}")
    G = [_parse_field(e, ring, f"g[{i}]") for i, e in enumerate(g)]
    return ImmersionProblem(f, tuple(G))


# -- reports ---------------------------------------------------------------


def _hyp_dict(hyp) -> dict:
    d = hyp.as_dict()
    if d["algebra_dim"] is not None:
        d["algebra_dim"] = str(d["algebra_dim"])
    return d


def _matrix_strings(M) -> list:
    return [[_q(c) for c in row] for row in M.rows]


def _base_report(command, args, digest, problem) -> dict:
    kind = "immersion" if isinstance(problem, ImmersionProblem) else "stiefel"
    return {
        "schema": SCHEMA,
        "tool": {"name": "stiefeldeg", "version": __version__},
        "command": command,
        "input_digest": f"sha256:{digest}",
        "kind": kind,
        "settings": {
            "order": args.order,
            "seed": args.seed,
            "retries": args.retries,
            "tol": args.tol,
            "max_spairs": args.max_spairs,
            "oracle": bool(getattr(args, "oracle", False)),
        },
    }


def _lambda_fields(rep) -> dict:
    prep = rep.prepared
    ring = prep.problem.ring
    return {
        "problem": {
            "n": str(prep.problem.n),
            "k": str(prep.problem.k),
            "variables": list(ring.variables),
            "matrix": [[format_poly(e) for e in row] for row in prep.problem.A.entries],
            "f": format_poly(prep.problem.f),
        },
        "groebner_basis": [format_poly(g) for g in rep.gb],
        "algebra_dim": str(rep.algebra_dim),
        "basis": [format_poly(ring.monomial(b)) for b in prep.algebra.basis],
        "pivot_minor": format_poly(prep.pivot),
        "delta_residue": format_poly(rep.delta_residue),
        "theta_delta": _matrix_strings(prep.theta_delta.matrix),
        "theta_f_delta": _matrix_strings(prep.theta_f_delta.matrix),
        "signature_delta": str(rep.signature_delta),
        "signature_f_delta": str(rep.signature_f_delta),
        "k": str(rep.k),
        "sign_factor": str(rep.sign_factor),
        "formula": "lambda = sign_factor * (signature_delta + signature_f_delta) / 2, sign_factor = (-1)^(k-1)",
        "lambda": str(rep.lambda_value),
        "hypotheses": _hyp_dict(rep.hypotheses),
        "randomization": None
        if rep.hypotheses.randomization_applied is None
        else rep.hypotheses.randomization_applied.as_dict(),
    }


class _Out:
    def __init__(self, quiet: bool):
        self.quiet = quiet

    def stanza(self, title, *lines):
        if self.quiet:
            return
        print(f"[{title}]")
        for line in lines:
            print(f"  {line}")

    def final(self, line):
        print(line)


def _summarize_lambda(out: _Out, rep):
    prep = rep.prepared
    ring = prep.problem.ring
    out.stanza(
        "groebner",
        f"order = {prep.gb.order.name}, {len(rep.gb)} generators",
        *[format_poly(g) for g in rep.gb],
    )
    out.stanza(
        "algebra",
        f"dim = {rep.algebra_dim}",
        "basis = (" + ", ".join(format_poly(ring.monomial(b)) for b in prep.algebra.basis) + ")",
    )
    hyp = rep.hypotheses
    lines = [f"m = {format_poly(prep.pivot)}", f"det(mult by m) = {_q(hyp.pivot_minor_det)}"]
    if hyp.randomization_applied is not None:
        lines.append(f"row transform applied on attempt {hyp.randomization_applied.attempt}: {[list(r) for r in hyp.randomization_applied.matrix]}")
    out.stanza("pivot minor", *lines)
    out.stanza("delta", f"delta = {format_poly(rep.delta_residue)} (mod I)")
    out.stanza(
        "signatures",
        f"signature theta_delta = {rep.signature_delta}",
        f"signature theta_f_delta = {rep.signature_f_delta}",
        f"sign factor (-1)^(k-1) = {rep.sign_factor}",
    )


def _timings(out: _Out, timings: dict):
    out.stanza("timings", *[f"{k}: {v:.4f} s" for k, v in timings.items()])


def _oracle_block(out, report, problem, prep, args, exact_value) -> int:
    try:
        res = oracle_lambda(problem, tol=args.tol, seed=args.seed, prepared=prep)
    except OracleError as exc:
        report["oracle"] = {"error": f"{type(exc).__name__}: {exc}"}
        out.stanza("oracle", f"refused: {exc}")
        return EXIT_HYPOTHESIS
    report["oracle"] = res.as_dict()
    report["oracle"]["lambda"] = str(res.value)
    report["oracle"]["real_point_count"] = str(res.real_count)
    report["oracle"]["agrees"] = res.value == exact_value
    out.stanza(
        "oracle",
        f"real points located = {len(res.points)} (trace-form count {res.real_count})",
        *[f"p = ({', '.join(f'{c:.10g}' for c in p.coordinates)}), residual {p.residual:.2e}" for p in res.points],
        f"oracle lambda = {res.value}",
    )
    if res.value != exact_value:
        out.final(f"oracle disagreement: exact {exact_value}, oracle {res.value}")
        return EXIT_HYPOTHESIS
    return EXIT_OK


def _policy(args) -> RetryPolicy:
    return RetryPolicy(retries=args.retries, seed=args.seed)


def _order(args):
    return LEX if args.order == "lex" else GREVLEX


def cmd_lambda(problem, args, report, out) -> int:
    if isinstance(problem, ImmersionProblem):
        problem = build_alpha(problem)
    t0 = time.perf_counter()
    rep = compute_lambda(problem, _policy(args), _order(args), args.max_spairs)
    timings = dict(rep.prepared.timings, total=time.perf_counter() - t0)
    report.update(_lambda_fields(rep))
    _summarize_lambda(out, rep)
    code = EXIT_OK
    if args.oracle:
        code = _oracle_block(out, report, rep.prepared.problem, rep.prepared, args, rep.lambda_value)
    _timings(out, timings)
    if args.timings:
        report["timings"] = timings
    out.final(f"lambda = {rep.lambda_value}")
    return code


def cmd_intersect(problem, args, report, out) -> int:
    if not isinstance(problem, ImmersionProblem):
        raise ValidationError("intersect needs an immersion-kind problem file")
    t0 = time.perf_counter()
    res = intersection_number(problem, _policy(args), _order(args), args.max_spairs)
    rep = res.lambda_report
    timings = dict(rep.prepared.timings, total=time.perf_counter() - t0)
    report.update(_lambda_fields(rep))
    report["lambda_gradient_oriented"] = str(res.lambda_gradient_oriented)
    report["intersection_number"] = str(res.value)
    _summarize_lambda(out, rep)
    out.stanza(
        "immersion",
        f"lambda (boundary orientation of M) = {rep.lambda_value}",
        f"lambda (grad f orientation of M) = {res.lambda_gradient_oriented}",
    )
    code = EXIT_OK
    if args.oracle:
        code = _oracle_block(out, report, rep.prepared.problem, rep.prepared, args, rep.lambda_value)
    _timings(out, timings)
    if args.timings:
        report["timings"] = timings
    out.final(f"intersection_number = {res.value}")
    return code


def cmd_solve(problem, args, report, out) -> int:
    if isinstance(problem, ImmersionProblem):
        problem = build_alpha(problem)
    t0 = time.perf_counter()
    minors = [m for m in minors_ideal(problem.A) if not m.is_zero()]
    if not minors:
        raise NotZeroDimensional("all maximal minors vanish identically")
    gb = buchberger(minors, _order(args), args.max_spairs)
    if not is_zero_dimensional(gb):
        raise NotZeroDimensional("the ideal of maximal minors is not zero-dimensional")
    A = quotient_algebra(gb)
    points = solve_real_points(A, tol=args.tol, seed=args.seed)
    count = real_point_count(A)
    elapsed = time.perf_counter() - t0
    report.update(
        {
            "groebner_basis": [format_poly(g) for g in gb],
            "algebra_dim": str(A.dim),
            "variables": list(problem.ring.variables),
            "points": [p.as_dict() for p in points],
            "located_points": str(len(points)),
            "real_point_count": str(count),
            "counts_agree": len(points) == count,
        }
    )
    if args.timings:
        report["timings"] = {"total": elapsed}
    out.stanza("algebra", f"dim = {A.dim}", f"trace-form real point count = {count}")
    out.stanza(
        "points",
        *[f"({', '.join(f'{c:.10g}' for c in p.coordinates)})  residual {p.residual:.2e}" for p in points],
    )
    out.final(f"real_points = {len(points)}")
    if len(points) != count:
        out.final(f"count mismatch: located {len(points)}, trace form says {count}")
        return EXIT_HYPOTHESIS
    return EXIT_OK


def cmd_check(problem, args, report, out) -> int:
    if isinstance(problem, ImmersionProblem):
        problem = build_alpha(problem)
    prep = prepare(problem, _policy(args), _order(args), args.max_spairs)
    hyp = prep.report
    report["hypotheses"] = _hyp_dict(hyp)
    report["randomization"] = None if hyp.randomization_applied is None else hyp.randomization_applied.as_dict()
    out.stanza(
        "hypotheses",
        f"zero_dimensional = {hyp.zero_dimensional} (dim = {hyp.algebra_dim})",
        f"pivot_minor_invertible = {hyp.pivot_minor_invertible}",
        f"theta_delta_nondegenerate = {hyp.theta_delta_nondegenerate}",
        f"theta_f_delta_nondegenerate = {hyp.theta_f_delta_nondegenerate}",
        *(
            [f"row transform applied on attempt {hyp.randomization_applied.attempt}"]
            if hyp.randomization_applied
            else []
        ),
    )
    if hyp.all_passed:
        out.final("hypotheses: all pass")
        return EXIT_OK
    out.final(f"hypotheses: FAIL ({hyp.failure})")
    return EXIT_HYPOTHESIS


COMMANDS = {"lambda": cmd_lambda, "intersect": cmd_intersect, "solve": cmd_solve, "check": cmd_check}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("path", help="problem file (JSON)")
    common.add_argument("--json", metavar="PATH", help="write the machine-readable report here")
    common.add_argument("--order", choices=["degrevlex", "lex"], default="degrevlex")
    common.add_argument("--seed", type=int, default=0, help="seed for row transforms and the oracle")
    common.add_argument("--retries", type=int, default=8, help="pivot-minor repair attempts")
    common.add_argument("--oracle", action="store_true", help="append the numeric cross-check")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="oracle residual tolerance")
    common.add_argument("--quiet", action="store_true", help="print only the final value")
    common.add_argument("--max-spairs", type=int, default=DEFAULT_MAX_REDUCTIONS, dest="max_spairs")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings in the JSON report")

    parser = _Parser(prog="stiefeldeg", description="Signature-based Lambda and Whitney intersection numbers.")
    parser.add_argument("--version", action="version", version=f"stiefeldeg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("lambda", parents=[common], help="Lambda of a polynomial frame on M = {f = 0}")
    sub.add_parser("intersect", parents=[common], help="Whitney intersection number of G restricted to M")
    sub.add_parser("solve", parents=[common], help="real points of V(I) (numeric)")
    sub.add_parser("check", parents=[common], help="verify the hypotheses only")
    return parser


def _write_json(path, report):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(args.quiet)
    report = None
    try:
        try:
            with open(args.path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise ValidationError(f"cannot read {args.path}: {exc.strerror}") from exc
        if args.tol <= 0:
            raise ValidationError("--tol must be positive")
        if args.retries < 0 or args.max_spairs <= 0:
            raise ValidationError("--retries must be >= 0 and --max-spairs > 0")
        digest = hashlib.sha256(data).hexdigest()
        problem = load_problem(data)
        report = _base_report(args.command, args, digest, problem)
        code = COMMANDS[args.command](problem, args, report, out)
        report["exit_code"] = code
    except HypothesisFailure as exc:
        code = EXIT_HYPOTHESIS
        print(f"hypothesis failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        if report is not None:
            report["error"] = {"type": type(exc).__name__, "message": str(exc)}
            if exc.report is not None:
                report["hypotheses"] = _hyp_dict(exc.report)
            report["exit_code"] = code
    except ValidationError as exc:
        code = EXIT_INPUT
        print(f"invalid input: {exc}", file=sys.stderr)
    except ResourceLimitExceeded as exc:
        code = EXIT_RESOURCE
        print(f"resource limit: {exc}", file=sys.stderr)
        if report is not None:
            report["error"] = {"type": type(exc).__name__, "message": str(exc)}
            report["exit_code"] = code
    except (StiefelError, Exception) as exc:  # every termination path maps to a documented code
        code = EXIT_INPUT
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
    if args.json and report is not None:
        try:
            _write_json(args.json, report)
        except OSError as exc:
            print(f"cannot write report: {exc.strerror}", file=sys.stderr)
            code = EXIT_INPUT
    return code


if __name__ == "__main__":
    sys.exit(main())
