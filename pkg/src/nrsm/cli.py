"""Command-line driver: iteration tables, the Newton baseline, word counting,
series equivalence reports, and the critical-line coefficient experiment.

Exit codes: 0 success, 2 validation error, 3 singular linear system,
4 no convergence within the step budget, 5 count mismatch.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from . import genluk, hyper, nrs, xi
from .scalars import (
    DEFAULT_PRECISION,
    Polynomial,
    ParseError,
    Scalar,
    ScalarError,
    parse_scalar,
    poly_from_strings,
    print_scalar,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_SINGULAR = 3
EXIT_MAX_STEPS = 4
EXIT_COUNT_MISMATCH = 5


class ValidationError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    coeffs: List[str] = field(default_factory=list)
    m: int = 1
    steps: int = 64
    precision: int = DEFAULT_PRECISION
    tol: Optional[str] = None
    fmt: str = "table"
    mode: Optional[str] = None
    seq: Optional[str] = None
    grade_cap: int = 4
    nmax: int = xi.DEFAULT_NMAX
    jensen: Optional[int] = None


def _load_coeffs(args) -> List[str]:
    if getattr(args, "coeffs", None):
        tokens = args.coeffs.split()
    elif getattr(args, "coeff_file", None):
        with open(args.coeff_file) as fh:
            tokens = fh.read().split()
    else:
        raise ValidationError("either --coeffs or --coeff-file is required")
    if len(tokens) < 2:
        raise ValidationError("need at least two coefficients a_0 a_1 ...")
    return tokens


def _build_poly(cfg: RunConfig, default_float: bool = False) -> Polynomial:
    """Parse coefficients. Rational text stays exact only under --mode exact
    (or for subcommands that need exactness); iteration subcommands default
    to float, since exact rationals grow without bound along the iteration."""
    force_float = cfg.mode == "float" or (cfg.mode is None and default_float)
    try:
        p = poly_from_strings(cfg.coeffs, cfg.precision, force_float=force_float)
    except ScalarError as exc:
        raise ValidationError(str(exc)) from exc
    if cfg.mode == "exact" and not p.is_exact:
        raise ValidationError("--mode exact requires rational coefficients")
    return p


def _parse_tol(cfg: RunConfig) -> Optional[Scalar]:
    if cfg.tol is None:
        return None
    try:
        return parse_scalar(cfg.tol, cfg.precision)
    except ScalarError as exc:
        raise ValidationError(f"bad --tol: {exc}") from exc


def _emit_rows(rows, m: int, fmt: str) -> None:
    header = ["n"] + [f"J_{i}" for i in range(m)] + ["J_total", "partial_sum"]
    table = [
        [str(r.n)] + [print_scalar(j) for j in r.J]
        + [print_scalar(r.J_total), print_scalar(r.partial_sum)]
        for r in rows
    ]
    if fmt == "csv":
        print(",".join(header))
        for row in table:
            print(",".join(row))
        return
    widths = [max(len(header[c]), *(len(row[c]) for row in table))
              for c in range(len(header))]
    print("  ".join(h.rjust(w) for h, w in zip(header, widths)))
    for row in table:
        print("  ".join(v.rjust(w) for v, w in zip(row, widths)))


def cmd_run(cfg: RunConfig) -> int:
    p = _build_poly(cfg, default_float=True)
    if not 1 <= cfg.m <= p.degree:
        raise ValidationError(f"--m must lie in 1..{p.degree}")
    try:
        result = nrs.run(p, cfg.m, max_steps=cfg.steps, tol=_parse_tol(cfg))
    except (nrs.NrsError, ScalarError) as exc:
        raise ValidationError(str(exc)) from exc
    _emit_rows(result.rows, cfg.m, cfg.fmt)
    if result.verdict == "Failed":
        print(f"verdict: Failed ({result.failure})", file=sys.stderr)
        return EXIT_SINGULAR
    print(f"verdict: {result.verdict}")
    return EXIT_OK if result.verdict == "Converged" else EXIT_MAX_STEPS


def cmd_newton(cfg: RunConfig) -> int:
    p = _build_poly(cfg, default_float=True)
    try:
        iterates = nrs.newton_run(p, cfg.steps)
        result = nrs.run(p, 1, max_steps=cfg.steps,
                         tol=Scalar.exact(-1) if p.is_exact else None)
    except (nrs.NrsError, ScalarError) as exc:
        raise ValidationError(str(exc)) from exc
    rows = result.rows
    print("k  newton_c_k      nrs1_partial_sum")
    deviation = None
    for k in range(1, len(iterates)):
        if k - 1 < len(rows):
            ps = rows[k - 1].partial_sum
            d = abs(iterates[k] - ps)
            deviation = d if deviation is None or d > deviation else deviation
            print(f"{k}  {print_scalar(iterates[k])}  {print_scalar(ps)}")
        else:
            print(f"{k}  {print_scalar(iterates[k])}  -")
    if deviation is not None:
        print(f"max deviation: {print_scalar(deviation)}")
    return EXIT_OK


def _parse_seq(text: str) -> Dict[int, int]:
    d: Dict[int, int] = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise ValidationError(f"bad degree-sequence entry {part!r}; use k:count")
        k, v = part.split(":", 1)
        try:
            d[int(k)] = d.get(int(k), 0) + int(v)
        except ValueError:
            raise ValidationError(f"bad degree-sequence entry {part!r}") from None
    if not d:
        raise ValidationError("empty degree sequence")
    return d


def cmd_count(cfg: RunConfig) -> int:
    if not cfg.seq:
        raise ValidationError("--seq is required for count")
    d = _parse_seq(cfg.seq)
    try:
        formula = genluk.count_with_degree_sequence(d)
        enumerated = sum(1 for _ in genluk.enumerate_by_degree_sequence(d))
    except genluk.WordError as exc:
        raise ValidationError(str(exc)) from exc
    ok = formula == enumerated
    print(f"formula {formula}, enumeration {enumerated}, "
          f"{'OK' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_COUNT_MISMATCH


def cmd_sturmfels(cfg: RunConfig) -> int:
    p = _build_poly(cfg)
    if not p.is_exact:
        raise ValidationError("sturmfels requires exact rational coefficients")
    if not 1 <= cfg.m <= p.degree:
        raise ValidationError(f"--m must lie in 1..{p.degree}")
    try:
        report = hyper.equivalence_report(p, cfg.m, cfg.grade_cap)
    except (ValueError, ScalarError, genluk.WordError) as exc:
        raise ValidationError(str(exc)) from exc
    print(report.render())
    return EXIT_OK


def cmd_xi(cfg: RunConfig) -> int:
    k_max = max(xi.DEFAULT_KMAX, cfg.jensen or 0)
    try:
        series = xi.xi_coefficients(cfg.nmax, k_max, cfg.precision)
    except xi.XiError as exc:
        raise ValidationError(str(exc)) from exc
    for j, aj in enumerate(series.a):
        print(f"a_{j} = {print_scalar(aj)}")
    if cfg.jensen is None:
        return EXIT_OK
    poly = xi.jensen_polynomial(series, cfg.jensen)
    print(f"jensen degree {cfg.jensen}: "
          + " ".join(print_scalar(c) for c in poly.coeffs))
    if not 1 <= cfg.m <= poly.degree:
        raise ValidationError(f"--m must lie in 1..{poly.degree}")
    try:
        result = nrs.run(poly, cfg.m, max_steps=cfg.steps, tol=_parse_tol(cfg))
    except (nrs.NrsError, ScalarError) as exc:
        raise ValidationError(str(exc)) from exc
    _emit_rows(result.rows, cfg.m, cfg.fmt)
    if result.verdict == "Failed":
        print(f"verdict: Failed ({result.failure})", file=sys.stderr)
        return EXIT_SINGULAR
    print(f"verdict: {result.verdict}")
    return EXIT_OK if result.verdict == "Converged" else EXIT_MAX_STEPS


def _add_poly_flags(sp):
    sp.add_argument("--coeffs", help="coefficients a_0 a_1 ... as one string")
    sp.add_argument("--coeff-file", help="file with whitespace-separated coefficients")
    sp.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                    help="float precision in bits")
    sp.add_argument("--mode", choices=["exact", "float"],
                    help="force arithmetic mode (default: inferred)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nrsm",
                                 description="Polynomial root-sum iterations")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    run = sub.add_parser("run", help="iterate and print the table")
    _add_poly_flags(run)
    run.add_argument("--m", type=int, default=1)
    run.add_argument("--steps", type=int, default=64)
    run.add_argument("--tol", help="convergence tolerance on |J_total|")
    run.add_argument("--format", dest="fmt", choices=["table", "csv"],
                     default="table")

    newton = sub.add_parser("newton", help="classical iterates vs m=1 run")
    _add_poly_flags(newton)
    newton.add_argument("--steps", type=int, default=8)

    count = sub.add_parser("count", help="word count: formula vs enumeration")
    count.add_argument("--seq", required=True,
                       help='degree sequence "k:count,..." e.g. "-1:1,0:1,2:2"')

    st = sub.add_parser("sturmfels", help="grade-by-grade series comparison")
    _add_poly_flags(st)
    st.add_argument("--m", type=int, default=1)
    st.add_argument("--grade-cap", type=int, default=4)

    xicmd = sub.add_parser("xi", help="critical-line series coefficients")
    xicmd.add_argument("--nmax", type=int, default=xi.DEFAULT_NMAX)
    xicmd.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    xicmd.add_argument("--jensen", type=int,
                       help="also run on the degree-N binomial-weighted polynomial")
    xicmd.add_argument("--m", type=int, default=1)
    xicmd.add_argument("--steps", type=int, default=64)
    xicmd.add_argument("--tol")
    xicmd.add_argument("--format", dest="fmt", choices=["table", "csv"],
                       default="table")
    return ap


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(subcommand=args.subcommand)
    if args.subcommand in ("run", "newton", "sturmfels"):
        cfg.coeffs = _load_coeffs(args)
    for name in ("m", "steps", "precision", "tol", "fmt", "mode", "seq",
                 "nmax", "jensen"):
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    if hasattr(args, "grade_cap"):
        cfg.grade_cap = args.grade_cap
    if cfg.precision < 2:
        raise ValidationError("--precision must be at least 2 bits")
    if cfg.steps < 1:
        raise ValidationError("--steps must be positive")
    return cfg


DISPATCH = {
    "run": cmd_run,
    "newton": cmd_newton,
    "count": cmd_count,
    "sturmfels": cmd_sturmfels,
    "xi": cmd_xi,
}


def main(argv: Optional[List[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    # glue values that start with '-' onto their flag so argparse does not
    # mistake them for options (e.g. --seq "-1:1,0:1,2:2")
    glued: List[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (tok in ("--seq", "--coeffs", "--tol") and i + 1 < len(argv)
                and argv[i + 1].startswith("-")):
            glued.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            glued.append(tok)
            i += 1
    args = build_parser().parse_args(glued)
    try:
        cfg = config_from_args(args)
        return DISPATCH[cfg.subcommand](cfg)
    except (ValidationError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
