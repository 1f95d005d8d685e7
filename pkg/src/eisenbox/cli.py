"""Command line interface: ``eisenbox <verb> [action] [flags]``.

Exit codes: 0 success, 2 input error, 3 mathematical failure.  Failures
are reported as a JSON object on stdout (``"type": "error"``) and a one
line message on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .dfinite import (
    DFiniteError,
    PRecurrence,
    algebraic_to_ode,
    expand as rec_expand,
    ode_to_recurrence,
    padic_profile,
    prime_count_profile,
)
from .eisenstein import (
    DenominatorProfile,
    certify,
    certify_multi,
    series_root,
    transcendence_evidence,
    verify,
    verify_multi,
    weakly_eisenstein_check,
)
from .exactnum import UnfactoredResidue, rational_str
from .frontend import (
    SCHEMA,
    ParseError,
    SchemaError,
    format_ode,
    format_poly,
    format_recurrence,
    parse_ode,
    parse_poly_vars,
    parse_seed,
    parse_univariate,
    parse_y_poly,
    to_json,
)
from .graded import graded_puiseux, graded_root_lift, psi_lambda, support_cone
from .puiseux import (
    AlgebraicSeries,
    ExtensionRequired,
    hensel_lift,
    puiseux_branches,
    seed_from_poly,
)
from .series import MPoly, PuiseuxSeries, TSeries, WeightVector
from .weierstrass import divide, prepare

MAX_CAP = 2000
MAX_VARS = 6


class InputError(ValueError):
    pass


# -- argument helpers ------------------------------------------------------------------------


def _rationals(text: str, what: str) -> list[Fraction]:
    try:
        return [Fraction(v.strip()) for v in text.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{what}: expected comma separated rationals, got {text!r}") from exc


def _guard(args, cap: int, nvars: int = 1):
    if args.allow_large:
        return
    if cap > MAX_CAP:
        raise InputError(f"cap {cap} exceeds {MAX_CAP}; pass --allow-large to override")
    if nvars > MAX_VARS:
        raise InputError(f"{nvars} variables exceed {MAX_VARS}; pass --allow-large to override")
    if cap < 0:
        raise InputError("cap must be nonnegative")


def _poly(args) -> MPoly:
    if not args.poly:
        raise InputError("--poly is required")
    P = parse_y_poly(args.poly)
    _guard(args, args.order, P.nvars - 1)
    return P


def _names(P: MPoly) -> list[str]:
    nx = P.nvars - 1
    return ["x"] if nx == 1 else [f"x{i + 1}" for i in range(nx)]


def _univariate_seed(args, default="0") -> PuiseuxSeries:
    seed = parse_seed(args.seed if args.seed is not None else default, 1)
    return seed_from_poly(seed)


def _constant_seed(args, nx: int) -> Fraction:
    seed = parse_seed(args.seed if args.seed is not None else "0", nx)
    if not seed.is_constant():
        raise InputError("several-variable seeds must be rational constants")
    return seed.constant_term()


def _coefficients(args, count: int) -> list[Fraction]:
    """Coefficient stream from --poly/--seed or --ode/--init (univariate)."""
    if args.poly:
        P = parse_y_poly(args.poly)
        if P.nvars != 2:
            raise InputError("a coefficient stream needs a polynomial in x and y")
        return AlgebraicSeries(P, _univariate_seed(args)).coefficients(count)
    if getattr(args, "ode", None):
        rec = ode_to_recurrence(parse_ode(args.ode), _rationals(args.init or "", "--init"), args.start)
        return rec_expand(rec, count)
    raise InputError("give --poly (with --seed) or --ode (with --init)")


# -- verbs ---------------------------------------------------------------------------------


def cmd_parse(args):
    if not args.poly:
        raise InputError("--poly is required")
    if "y" in args.poly:
        P = parse_y_poly(args.poly)
        names = _names(P) + ["y"]
    else:
        P, names = parse_poly_vars(args.poly)
    return {"type": "Parsed", "vars": names, "canonical": format_poly(P, names)}


def cmd_expand(args):
    P = _poly(args)
    nx = P.nvars - 1
    if nx == 1:
        coeffs = AlgebraicSeries(P, _univariate_seed(args)).coefficients(args.order + 1)
        return TSeries(1, args.order, {(k,): c for k, c in enumerate(coeffs)})
    return series_root(P, _constant_seed(args, nx), args.order)


def cmd_puiseux(args):
    P = _poly(args)
    if P.nvars != 2:
        raise InputError("puiseux works with one x-variable")
    if args.seed is not None:
        return hensel_lift(P, _univariate_seed(args), args.order)
    branches, reports = puiseux_branches(P, args.order)
    payload = {
        "type": "PuiseuxBranches",
        "branches": [to_json(b) for b in branches],
        "extension_reports": [
            {
                "exponent": rational_str(r.exponent),
                "degree": r.degree,
                "minpolys": [[rational_str(c) for c in m] for m in r.minpolys],
                "message": r.describe(),
            }
            for r in reports
        ],
    }
    if reports:
        raise _MathFailure(ExtensionRequired(branches, reports), payload)
    return payload


def cmd_eisenstein(args):
    action = args.action or "certify"
    if action == "certify":
        P = _poly(args)
        nx = P.nvars - 1
        if nx == 1:
            return certify(P, _univariate_seed(args), args.order)
        return certify_multi(P, _constant_seed(args, nx), args.order)
    if action == "verify":
        if args.a is None:
            raise InputError("--a is required for verify")
        P = _poly(args) if args.poly else None
        if P is not None and P.nvars > 2:
            res = verify_multi(series_root(P, _constant_seed(args, P.nvars - 1), args.order), args.a)
        else:
            res = verify(_coefficients(args, args.order + 1), args.a)
        idx = list(res.index) if isinstance(res.index, tuple) else res.index
        return {
            "type": "VerifyResult",
            "a": args.a,
            "ok": res.ok,
            "index": idx,
            "witness": None if res.witness is None else rational_str(res.witness),
            "checked_to": args.order,
        }
    if action == "search":
        _guard(args, args.order)
        profile = DenominatorProfile.from_coefficients(_coefficients(args, args.order + 1))
        out = transcendence_evidence(profile, args.bound)
        rep = weakly_eisenstein_check(profile)
        out["growth_points"] = list(rep.growth_points)
        out["linear_fit"] = None if rep.linear_fit is None else list(rep.linear_fit)
        return {"type": "SearchReport", **out}
    raise InputError(f"unknown eisenstein action {action!r}")


def _omega(args, n: int) -> WeightVector:
    if not args.omega:
        return WeightVector(tuple([Fraction(1)] * n))
    w = _rationals(args.omega, "--omega")
    if len(w) != n:
        raise InputError(f"--omega needs {n} weights")
    return WeightVector(tuple(w))


def cmd_graded(args):
    action = args.action or "lift"
    if action == "psi":
        w = _rationals(args.omega or "", "--omega")
        beta = [int(b) for b in _rationals(args.beta or "", "--beta")]
        m = psi_lambda(Fraction(args.lam), [int(v) for v in w], beta)
        return {
            "type": "MonomialMap",
            "lambda": rational_str(m.lam),
            "matrix": [[rational_str(v) for v in r] for r in m.matrix],
            "det": rational_str(m.det()),
            "chi": rational_str(m.chi()),
            "inverse": [[rational_str(v) for v in r] for r in m.inverse()],
        }
    P = _poly(args)
    nx = P.nvars - 1
    w = _omega(args, nx)
    if action == "lift":
        if args.q and args.q > 1:
            gs = graded_puiseux(P, w, args.q, args.order)
            return {"type": "GradedBranches", "branches": [to_json(g) for g in gs]}
        seed = parse_seed(args.seed, nx) if args.seed else None
        return graded_root_lift(P, w, seed, args.order)
    if action == "cone":
        seed = parse_seed(args.seed, nx) if args.seed else None
        g = graded_root_lift(P, w, seed, args.order)
        direction = _rationals(args.direction, "--direction") if args.direction else list(range(1, nx + 1))
        cone, lam = support_cone(g, direction, args.depth)
        out = to_json(cone)
        out["lambda"] = None if lam is None else rational_str(lam)
        out["strongly_convex"] = cone.is_strongly_convex()
        return out
    raise InputError(f"unknown graded action {action!r}")


def _recurrence(args) -> PRecurrence:
    init = _rationals(args.init or "", "--init")
    if args.rec:
        coeffs = []
        for part in args.rec.split(";"):
            poly = parse_univariate(part, "l")
            if any(c.denominator != 1 for c in poly):
                raise InputError("recurrence coefficients must be integer polynomials")
            coeffs.append(tuple(int(c) for c in poly))
        return PRecurrence(tuple(coeffs), tuple(init), args.start or 0)
    if args.ode:
        return ode_to_recurrence(parse_ode(args.ode), init, args.start)
    raise InputError("give --ode or --rec")


def cmd_dfinite(args):
    action = args.action or "expand"
    if action == "alg2ode":
        P = _poly(args)
        if P.nvars != 2:
            raise InputError("alg2ode works with one x-variable")
        seed = None if args.seed is None else _constant_seed(args, 1)
        ode = algebraic_to_ode(P, seed)
        return {"type": "LinearODE", "coeffs": [list(a) for a in ode.coeffs], "text": format_ode(ode)}
    if action == "ode2rec":
        if not args.ode:
            raise InputError("--ode is required")
        rec = ode_to_recurrence(parse_ode(args.ode), _rationals(args.init or "", "--init"), args.start)
        out = to_json(rec)
        out["text"] = format_recurrence(rec)
        return out
    _guard(args, args.order)
    count = args.order + 1
    if action == "expand":
        coeffs = rec_expand(_recurrence(args), count)
        return {"type": "Coefficients", "coeffs": [rational_str(c) for c in coeffs]}
    coeffs = _coefficients(args, count) if args.poly else rec_expand(_recurrence(args), count)
    if action == "primes":
        primes = [int(p) for p in _rationals(args.primes or "", "--primes")]
        return prime_count_profile(coeffs, primes)
    if action == "padic":
        if not args.p:
            raise InputError("--p is required")
        prof = padic_profile(coeffs, args.p)
        return {
            "type": "PadicProfile",
            "p": prof.p,
            "valuations": [None if v == float("inf") else v for v in prof.valuations],
            "slope": rational_str(prof.slope),
            "offset": prof.offset,
        }
    raise InputError(f"unknown dfinite action {action!r}")


def _series_arg(text: str, names: list[str], cap: int) -> TSeries:
    from .frontend import parse_poly

    return TSeries.from_poly(parse_poly(text, names), cap)


def cmd_weierstrass(args):
    action = args.action or "divide"
    if not args.f:
        raise InputError("--f is required")
    from .frontend import parse_poly_vars as ppv

    texts = [args.f] + ([args.g] if args.g else [])
    names = sorted({v for t in texts for v in ppv(t)[1]}, key=lambda v: int(v[1:]) if v[1:] else 0)
    if any(not v.startswith("x") for v in names):
        raise InputError("use the variables x1, x2, ...; the last one is distinguished")
    nvars = max(int(v[1:]) if v[1:] else 1 for v in names)
    names = ["x"] if names == ["x"] else [f"x{i + 1}" for i in range(nvars)]
    _guard(args, args.order, len(names))
    f = _series_arg(args.f, names, args.order)
    if action == "prepare":
        W, u = prepare(f, args.order)
        return {
            "type": "Preparation",
            "d": W.d,
            "distinguished": to_json(W.to_series(args.order)),
            "unit": to_json(u),
        }
    if action == "divide":
        if not args.g:
            raise InputError("--g is required")
        g = _series_arg(args.g, names, args.order)
        q, r = divide(g, f, args.order)
        return {"type": "Division", "q": to_json(q), "r": to_json(r)}
    raise InputError(f"unknown weierstrass action {action!r}")


# -- rendering ----------------------------------------------------------------------------


class _MathFailure(Exception):
    def __init__(self, exc, payload):
        self.exc = exc
        self.payload = payload


def _payload(result) -> dict:
    if isinstance(result, dict):
        return {"schema": SCHEMA, **result}
    return to_json(result)


def _table(obj, indent: str = "") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        if "terms" in obj and isinstance(obj["terms"], list):
            for k, v in obj.items():
                if k not in ("terms", "schema"):
                    lines.append(f"{indent}{k:<14} {_cell(v)}")
            lines.append(f"{indent}{'exponent':<14} coefficient")
            for t in obj["terms"]:
                e = t.get("e")
                if e is None:
                    e = rational_str(Fraction(t["k"], obj.get("ram", 1)))
                lines.append(f"{indent}{_cell(e):<14} {t['c']}")
            return lines
        for k, v in obj.items():
            if k == "schema":
                continue
            if isinstance(v, (dict, list)) and v and any(isinstance(x, dict) for x in (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{indent}{k}:")
                items = v.items() if isinstance(v, dict) else enumerate(v)
                for key, item in items:
                    lines.append(f"{indent}  [{key}]")
                    lines.extend(_table(item, indent + "    "))
            else:
                lines.append(f"{indent}{k:<14} {_cell(v)}")
        return lines
    return [f"{indent}{_cell(obj)}"]


def _cell(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_cell(x) for x in v) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, dict) and "nvars" in v and "terms" in v:
        n = v["nvars"]
        poly = MPoly(n, {tuple(t["e"]): Fraction(t["c"]) for t in v["terms"]})
        names = ["x"] if n == 1 else [f"x{i + 1}" for i in range(n)]
        text = format_poly(poly, names)
        return text + (f" + O(deg > {v['cap']})" if "cap" in v and v.get("type") == "TSeries" else "")
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_cell(x)}" for k, x in v.items()) + "}"
    return str(v)


def _emit(payload: dict, fmt: str, out):
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write("\n".join(_table(payload)) + "\n")


# -- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--order", "--cap", dest="order", type=int, default=20,
                        help="truncation order / cap (default 20)")
    common.add_argument("--poly", help="polynomial in x (or x1..xn) and y")
    common.add_argument("--seed", help="seed expression pinning a root")
    common.add_argument("--omega", help="weights a/b,c/d,...")
    common.add_argument("--allow-large", action="store_true", help="lift the size guards")

    p = argparse.ArgumentParser(prog="eisenbox", description="Exact algebraic series and Eisenstein denominators.")
    p.add_argument("--version", action="version", version=f"eisenbox {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)

    sub.add_parser("parse", parents=[common], help="echo the canonical form of --poly")
    sub.add_parser("expand", parents=[common], help="power series root pinned by --seed")
    sub.add_parser("puiseux", parents=[common], help="rational Puiseux branches, or a Newton lift with --seed")

    e = sub.add_parser("eisenstein", parents=[common], help="certify | verify | search")
    e.add_argument("action", nargs="?", choices=("certify", "verify", "search"))
    e.add_argument("--a", type=int, help="candidate constant for verify")
    e.add_argument("--bound", type=int, default=50, help="largest candidate for search")
    e.add_argument("--ode", help="ODE in x and f, f', ... (search/verify streams)")
    e.add_argument("--init", help="initial values for --ode")
    e.add_argument("--start", type=int, default=None, help="first index where the recurrence holds (default: from the ODE, else 0)")

    g = sub.add_parser("graded", parents=[common], help="lift | cone | psi")
    g.add_argument("action", nargs="?", choices=("lift", "cone", "psi"))
    g.add_argument("--q", type=int, default=1, help="ramification x_i -> x_i^(1/q)")
    g.add_argument("--direction", help="Laurent expansion weights, e.g. 1,2")
    g.add_argument("--depth", type=int, default=12, help="Laurent expansion depth")
    g.add_argument("--beta", help="exponent vector for psi")
    g.add_argument("--lambda", dest="lam", default="1", help="lambda for psi")

    d = sub.add_parser("dfinite", parents=[common], help="expand | ode2rec | alg2ode | primes | padic")
    d.add_argument("action", nargs="?", choices=("expand", "ode2rec", "alg2ode", "primes", "padic"))
    d.add_argument("--ode", help="ODE in x and f, f', f'', ...")
    d.add_argument("--rec", help="recurrence coefficients p_0;p_1;... as polynomials in l")
    d.add_argument("--init", help="initial values f_0,f_1,...")
    d.add_argument("--start", type=int, default=None, help="first index where the recurrence holds (default: from the ODE, else 0)")
    d.add_argument("--count", type=int, help="number of coefficients (overrides --order)")
    d.add_argument("--p", type=int, help="prime for padic")
    d.add_argument("--primes", help="primes whose envelopes go into the primes report")

    w = sub.add_parser("weierstrass", parents=[common], help="prepare | divide")
    w.add_argument("action", nargs="?", choices=("prepare", "divide"))
    w.add_argument("--f", help="divisor, regular in the last variable")
    w.add_argument("--g", help="dividend")
    return p


VERBS = {
    "parse": cmd_parse,
    "expand": cmd_expand,
    "puiseux": cmd_puiseux,
    "eisenstein": cmd_eisenstein,
    "graded": cmd_graded,
    "dfinite": cmd_dfinite,
    "weierstrass": cmd_weierstrass,
}


def _error(kind: str, message: str, code: int, fmt: str, out, extra=None) -> int:
    payload = {"schema": SCHEMA, "type": "error", "kind": kind, "message": message, "exit": code}
    if extra:
        payload["detail"] = extra
    _emit(payload, fmt, out)
    print(f"eisenbox: {message}", file=sys.stderr)
    return code


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if getattr(args, "count", None) is not None:
        args.order = args.count - 1
    fmt = args.format
    try:
        _guard(args, args.order)
        result = VERBS[args.verb](args)
    except _MathFailure as f:
        return _error(type(f.exc).__name__, str(f.exc), 3, fmt, out, f.payload)
    except (ParseError, SchemaError, InputError) as exc:
        return _error(type(exc).__name__, str(exc), 2, fmt, out)
    except (ArithmeticError, UnfactoredResidue, DFiniteError) as exc:
        return _error(type(exc).__name__, str(exc), 3, fmt, out)
    except (ValueError, TypeError) as exc:
        return _error(type(exc).__name__, str(exc), 2, fmt, out)
    _emit(_payload(result), fmt, out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
