"""Command-line front end.

Exit status: 0 success, 2 malformed input, 3 numerical non-convergence,
4 no applicable method.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import __version__
from .apolarity import essential_variables, hilbert_function, max_catalecticant_rank, minimal_generator_degrees
from .binary import binary_decompose, binary_rank
from .bounds import (colon_e1_lower, max_rank_known, monomial_decomposition, monomial_rank,
                     monomial_waring_locus, rank_bounds, upper_bounds, ah_generic_rank)
from .decomposition import WaringDecomposition, numeric_residual
from .errors import ConvergenceError, DomainError, MethodInapplicable, ParseError
from .fields import SECANT_PRIMES
from .multivar import bcmt_decompose, catalecticant_decompose, quadric_decompose
from .poly import HomogeneousForm, format_form, parse_form
from .secant import (FatPointScheme, defect_scan, fat_point_hf, generic_rank, parse_spec, secant_dim)

log = logging.getLogger("waring")

EXIT_PARSE, EXIT_CONVERGENCE, EXIT_INAPPLICABLE = 2, 3, 4


@dataclass
class Report:
    method: str
    result: dict[str, Any]
    certificate: dict[str, Any] = field(default_factory=dict)
    residual: float | None = None
    decomposition: WaringDecomposition | None = None


# -- rank dispatch -------------------------------------------------------------

def _check_form(F: HomogeneousForm) -> None:
    if F.is_zero():
        raise DomainError("the zero form has no rank")
    if F.degree < 1:
        raise DomainError("constants have no rank")


def analyze_rank(F: HomogeneousForm, seed: int = 0, tol: float = 1e-8) -> Report:
    """Cheapest certain method first; falls back to a bound interval."""
    _check_form(F)
    if F.is_monomial():
        (alpha,) = F.terms
        r = monomial_rank(alpha)
        cert = {"forbidden_hyperplanes": sorted(monomial_waring_locus(alpha).indices)}
        if F.degree >= 2 and len([a for a in alpha if a]) > 1:
            colon = colon_e1_lower(F)
            cert["colon_e1_lower"] = colon
        method = "monomial formula + e=1 colon bound" if cert.get("colon_e1_lower") == r else "monomial formula"
        return Report(method, {"rank": r}, cert)
    ev = essential_variables(F)
    prefix = "essential variables + " if ev.m < F.nvars else ""
    cert = {"essential_variables": ev.m}
    if ev.m == 1:
        return Report(prefix + "power of a linear form", {"rank": 1, "border_rank": 1}, cert)
    if ev.m == 2:
        rc = binary_rank(F if F.nvars == 2 else ev.reduced, seed)
        cert.update(rc.to_dict())
        method = "sigma2 test" if rc.border_rank == 2 else "sylvester"
        return Report(prefix + method, {"rank": rc.rank, "border_rank": rc.border_rank}, cert)
    if F.degree == 2:
        return Report(prefix + "quadric", {"rank": ev.m, "border_rank": ev.m}, cert)
    lower = max_catalecticant_rank(F)
    cert["catalecticant_lower"] = lower
    try:
        dec = catalecticant_decompose(F, tol, seed)
        return Report(prefix + "catalecticant method", {"rank": dec.rank, "border_rank": dec.rank}, cert,
                      dec.verified_residual, dec)
    except (MethodInapplicable, ConvergenceError) as exc:
        log.info("catalecticant method: %s", exc)
    bounds = rank_bounds(F)
    lo, hi = bounds.best_lower, bounds.best_upper
    cert["bounds"] = bounds.to_dict()
    try:
        dec = bcmt_decompose(F, tol=tol, seed=seed)
    except (MethodInapplicable, ConvergenceError) as exc:
        log.info("bcmt: %s", exc)
        dec = None
    if dec is not None:
        hi = min(hi, dec.rank) if hi is not None else dec.rank
        if dec.rank <= lo:
            return Report(prefix + "bcmt", {"rank": dec.rank}, cert, dec.verified_residual, dec)
        return Report(prefix + "bcmt + bound interval", {"rank": None, "interval": [lo, hi]}, cert,
                      dec.verified_residual, dec)
    if lo == hi:
        return Report(prefix + "bounds", {"rank": lo}, cert)
    return Report(prefix + "bound interval", {"rank": None, "interval": [lo, hi]}, cert)


def analyze_border_rank(F: HomogeneousForm, seed: int = 0, tol: float = 1e-8) -> Report:
    _check_form(F)
    ev = essential_variables(F)
    cert = {"essential_variables": ev.m}
    if ev.m == 1:
        return Report("power of a linear form", {"border_rank": 1}, cert)
    if ev.m == 2:
        rc = binary_rank(F if F.nvars == 2 else ev.reduced, seed)
        cert.update(rc.to_dict())
        return Report("sylvester", {"border_rank": rc.border_rank}, cert)
    if F.degree == 2:
        return Report("quadric", {"border_rank": ev.m}, cert)
    lower = max_catalecticant_rank(F)
    cert["catalecticant_lower"] = lower
    rep = analyze_rank(F, seed, tol)
    if rep.result.get("rank") == lower:
        return Report(rep.method, {"border_rank": lower}, cert, rep.residual)
    hi = rep.result.get("rank") or rep.result["interval"][1]
    return Report("catalecticant lower bound + rank upper bound", {"border_rank": None, "interval": [lower, hi]},
                  cert)


def decompose(F: HomogeneousForm, seed: int = 0, tol: float = 1e-8) -> tuple[str, WaringDecomposition]:
    _check_form(F)
    if F.is_monomial():
        (alpha,) = F.terms
        if sum(1 for a in alpha if a) > 1:
            return "monomial roots of unity", monomial_decomposition(alpha, tol)
    ev = essential_variables(F)
    if ev.m <= 2:
        return "sylvester", binary_decompose(F, tol, seed)
    if F.degree == 2:
        return "quadric", quadric_decompose(F)
    return catalecticant_or_bcmt(F, tol, seed)


def catalecticant_or_bcmt(F: HomogeneousForm, tol: float, seed: int) -> tuple[str, WaringDecomposition]:
    try:
        return "catalecticant method", catalecticant_decompose(F, tol, seed)
    except (MethodInapplicable, ConvergenceError) as exc:
        log.info("catalecticant method: %s", exc)
    return "bcmt", bcmt_decompose(F, tol=tol, seed=seed)


def verify(F: HomogeneousForm, dec: WaringDecomposition, tol: float) -> float:
    """Independent residual check; raises on failure."""
    if dec.exact:
        if dec.to_form() != F:
            raise ConvergenceError("exact decomposition does not reproduce the input", 0, float("inf"))
        return 0.0
    _, rel = numeric_residual(F, dec.coefficients, dec.points())
    if not rel <= tol:
        raise ConvergenceError("decomposition failed re-verification", 0, rel)
    return rel


# -- argument handling ---------------------------------------------------------

def _s_range(text: str) -> range:
    try:
        a, b = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("expected a:b") from None
    if a < 1 or b < a:
        raise argparse.ArgumentTypeError("need 1 <= a <= b")
    return range(a, b + 1)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _prime(text: str) -> int:
    p = int(text)
    if p < 3 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
        raise argparse.ArgumentTypeError(f"{text} is not an odd prime")
    if p >= 3_037_000_000:
        raise argparse.ArgumentTypeError("primes must stay below 3.037e9 for int64 elimination")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report on stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--prime", type=_prime, action="append", help="prime for modular rank (repeatable)")
    common.add_argument("--trials", type=_positive, default=3)
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="waring", description="Waring ranks, decompositions and secant dimensions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("rank", "Waring rank with a certificate"), ("border-rank", "border rank"),
                       ("decompose", "verified minimal decomposition"),
                       ("apolar", "apolar ideal generators and Hilbert function")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("form", help='e.g. "2x0^4 - 4x0^3x1 + 17x1^4"')
    p = sub.add_parser("hilbert", parents=[common], help="Hilbert function of generic fat points")
    p.add_argument("--fatpoints", nargs="+", type=int, required=True, metavar="N D M",
                   help="n, d, then one multiplicity per point")
    p = sub.add_parser("secant-dim", parents=[common], help="dimension and defect of a secant variety")
    p.add_argument("spec", help="veronese:n,d | segre:n1xn2 | segre-veronese:n1,..;d1,.. | grass:k,n | "
                                "chow:n;d1,.. | powers:n,k,d | tangential:n,d")
    p.add_argument("s", type=_positive)
    p = sub.add_parser("defect-scan", parents=[common], help="secant defects over a range of s")
    p.add_argument("spec")
    p.add_argument("--s-range", type=_s_range, required=True)
    p.add_argument("--csv", action="store_true")
    p = sub.add_parser("bounds", parents=[common], help="upper bounds for forms of degree d in n+1 variables")
    p.add_argument("n", type=_positive)
    p.add_argument("d", type=int)
    p = sub.add_parser("generic-rank", parents=[common], help="smallest s filling the ambient space")
    p.add_argument("spec")
    return parser


# -- command bodies --------------------------------------------------------------

def _form_report(args, F: HomogeneousForm) -> Report:
    if args.command == "rank":
        return analyze_rank(F, args.seed, args.tol)
    if args.command == "border-rank":
        return analyze_border_rank(F, args.seed, args.tol)
    if args.command == "decompose":
        method, dec = decompose(F, args.seed, args.tol)
        res = verify(F, dec, args.tol)
        return Report(method, {"rank": dec.rank, "decomposition": str(dec)}, dec.to_dict(), res, dec)
    hf = hilbert_function(F)
    return Report("catalecticant ranks", {
        "hilbert_function": list(hf.values), "series": hf.series(), "length": hf.length,
        "minimal_generator_degrees": {str(k): v for k, v in sorted(minimal_generator_degrees(F).items())},
    }, {"essential_variables": essential_variables(F).m})


def _hilbert(args) -> Report:
    vals = args.fatpoints
    if len(vals) < 3:
        raise DomainError("--fatpoints needs n, d and at least one multiplicity")
    n, d, mults = vals[0], vals[1], vals[2:]
    if n < 1 or d < 1 or min(mults) < 1:
        raise DomainError("n, d and multiplicities must be positive")
    primes = args.prime or list(SECANT_PRIMES[:1])
    best = 0
    for p in primes:
        for t in range(args.trials):
            rng = np.random.default_rng([args.seed, n, d, t, p])
            best = max(best, fat_point_hf(n, d, FatPointScheme.generic(n, mults, rng, p), p))
    space = math.comb(n + d, n)
    conditions = sum(math.comb(m - 1 + n, n) for m in mults)
    return Report("fat point interpolation", {
        "hilbert_function": best, "expected": min(space, conditions),
        "ideal_dimension": space - best, "superabundance": min(space, conditions) - best,
    }, {"space_dimension": space, "conditions": conditions})


def _secant(args) -> Report:
    spec = parse_spec(args.spec)
    primes = args.prime or list(SECANT_PRIMES)
    rep = secant_dim(spec, args.s, args.trials, primes, args.seed)
    return Report("terracini tangent spans", {"expected": rep.expected, "actual": rep.actual,
                                               "defect": rep.defect}, rep.to_dict())


def _scan(args) -> tuple[Report, list]:
    spec = parse_spec(args.spec)
    primes = args.prime or list(SECANT_PRIMES)
    reps = defect_scan(spec, list(args.s_range), args.trials, primes, args.seed)
    rows = [r.to_dict() for r in reps]
    defective = [r.s for r in reps if r.defect]
    return Report("terracini tangent spans", {"defective_s": defective, "rows": rows}), reps


def _bounds(args) -> Report:
    n, d = args.n, args.d
    ub = upper_bounds(n, d)
    res = {"generic_rank": ah_generic_rank(n, d), "upper_bounds": ub, "best_upper": min(ub.values())}
    known = max_rank_known(n, d)
    if known is not None:
        res["max_rank"] = known
    return Report("closed-form bounds", res)


def _generic(args) -> Report:
    spec = parse_spec(args.spec)
    primes = args.prime or list(SECANT_PRIMES)
    rep = generic_rank(spec, args.trials, primes, args.seed)
    return Report("terracini tangent spans", {"generic_rank": rep.rank}, rep.to_dict())


def _human(report: Report, args) -> str:
    lines = [f"method: {report.method}"]
    for k, v in report.result.items():
        if k == "rows":
            continue
        lines.append(f"{k}: {v}")
    if report.residual is not None:
        lines.append(f"residual: {report.residual:.3e}")
    if args.command == "defect-scan":
        for r in report.result["rows"]:
            lines.append(f"s={r['s']}: expected {r['expected']}, actual {r['actual']}, defect {r['defect']}")
    return "\n".join(lines)


def _scan_csv(reps) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["spec", "s", "expected", "actual", "defect", "per_prime", "known_defect", "known_status"])
    for r in reps:
        w.writerow([r.spec, r.s, r.expected, r.actual, r.defect, ";".join(map(str, r.per_prime)),
                    "" if r.known is None or r.known.defect is None else r.known.defect,
                    "" if r.known is None else r.known.status])
    return buf.getvalue()


def _input_text(args) -> str:
    if args.command == "hilbert":
        return " ".join(map(str, args.fatpoints))
    if args.command == "bounds":
        return f"{args.n} {args.d}"
    if args.command == "secant-dim":
        return f"{args.spec} {args.s}"
    return getattr(args, "form", None) or args.spec


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=err,
                        format="%(levelname)s %(message)s")
    text = _input_text(args)
    reps = None
    try:
        if args.command in ("rank", "border-rank", "decompose", "apolar"):
            report = _form_report(args, parse_form(args.form))
        elif args.command == "hilbert":
            report = _hilbert(args)
        elif args.command == "secant-dim":
            report = _secant(args)
        elif args.command == "defect-scan":
            report, reps = _scan(args)
        elif args.command == "bounds":
            report = _bounds(args)
        else:
            report = _generic(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        if args.json:
            print(json.dumps({"input": text, "error": "parse", "position": exc.position}), file=out)
        return EXIT_PARSE
    except ConvergenceError as exc:
        print(f"no convergence: {exc}", file=err)
        return EXIT_CONVERGENCE
    except (MethodInapplicable, DomainError) as exc:
        print(f"method inapplicable: {exc}", file=err)
        return EXIT_INAPPLICABLE

    if args.command == "defect-scan" and args.csv:
        out.write(_scan_csv(reps))
        return 0
    if args.json:
        payload = {
            "input": text, "method": report.method, "result": report.result,
            "certificate": report.certificate, "seed": args.seed,
            "prime": args.prime or (list(SECANT_PRIMES) if args.command in
                                    ("secant-dim", "defect-scan", "generic-rank") else None),
            "residual": report.residual,
        }
        print(json.dumps(payload, indent=2, sort_keys=True, default=str), file=out)
    else:
        print(_human(report, args), file=out)
    return 0


def main() -> None:
    sys.exit(run())
