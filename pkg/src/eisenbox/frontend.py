"""Text grammar for polynomial input and the versioned JSON output schema.

Grammar::

    expr   := ["+"|"-"] term (("+"|"-") term)*
    term   := factor ("*" factor)*
    factor := base ("^" nat)?
    base   := nat | nat "/" nat | var | "(" expr ")"
    var    := "x" | "x" digits | "y" | "t"

There is no division operator; ``a/b`` is only a rational literal.
Printed output lists terms in descending graded lexicographic order.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .exactnum import rational_str
from .series import MPoly

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*'*)|(?P<op>[-+*/^()=−·]))"
)


class ParseError(ValueError):
    """Syntax or semantic error with the 0-based character offset."""

    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


# -- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: int


@dataclass(frozen=True)
class Var:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    arg: "Expr"
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    pos: int


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int
    pos: int


Expr = Union[Num, Var, Neg, BinOp, Pow]

_VAR_RE = re.compile(r"^(x\d*|y|t|f'*)$")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        kind = m.lastgroup
        val = m.group(kind)
        start = m.start(kind)
        if kind == "op":
            val = {"−": "-", "·": "*"}.get(val, val)
        toks.append((kind, val, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, allow_f: bool = False):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.allow_f = allow_f

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, pos=None):
        raise ParseError(msg, self.text, self.peek()[2] if pos is None else pos)

    def expect_op(self, op):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            self.error(f"expected {op!r}")
        self.take()

    def parse(self) -> Expr:
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            self.error(f"unexpected {val!r}")
        return node

    def expr(self) -> Expr:
        kind, val, pos = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            node = self.term()
            if val == "-":
                node = Neg(node, pos)
        else:
            node = self.term()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                node = BinOp(val, node, self.term(), pos)
            else:
                return node

    def term(self) -> Expr:
        node = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                node = BinOp("*", node, self.factor(), pos)
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                self.error("missing '*' (implicit multiplication is not supported)")
            else:
                return node

    def factor(self) -> Expr:
        base = self.base()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, epos = self.peek()
            if kind == "num":
                self.take()
                nk, nv, npos = self.peek()
                if nk == "op" and nv == "/":
                    self.error("fractional exponent", epos)
                return Pow(base, int(val), pos)
            if kind == "op" and val == "-":
                self.error("negative exponent", epos)
            if kind == "op" and val == "(":
                inner = self.base()
                value = _constant_value(inner)
                if value is None:
                    self.error("exponent must be a natural number literal", epos)
                if value.denominator != 1:
                    self.error("fractional exponent", epos)
                if value < 0:
                    self.error("negative exponent", epos)
                return Pow(base, int(value), pos)
            self.error("exponent must be a natural number literal", epos)
        return base

    def base(self) -> Expr:
        kind, val, pos = self.take()
        if kind == "num":
            nk, nv, npos = self.peek()
            if nk == "op" and nv == "/":
                self.take()
                dk, dv, dpos = self.peek()
                if dk != "num":
                    self.error("rational literal needs a natural denominator (no division operator)")
                self.take()
                if int(dv) == 0:
                    self.error("zero denominator", dpos)
                return Num(Fraction(int(val), int(dv)), pos)
            return Num(Fraction(int(val)), pos)
        if kind == "name":
            if not _VAR_RE.match(val) or (val.startswith("f") and not self.allow_f):
                raise ParseError(f"unknown variable {val!r}", self.text, pos)
            return Var(val, pos)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "end":
            raise ParseError("unexpected end of input", self.text, pos)
        raise ParseError(f"unexpected {val!r}", self.text, pos)


def _constant_value(node: Expr) -> Fraction | None:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Neg):
        v = _constant_value(node.arg)
        return None if v is None else -v
    if isinstance(node, BinOp):
        a, b = _constant_value(node.left), _constant_value(node.right)
        if a is None or b is None:
            return None
        return {"+": a + b, "-": a - b, "*": a * b}[node.op]
    if isinstance(node, Pow):
        v = _constant_value(node.base)
        return None if v is None else v**node.exponent
    return None


def parse_expr(text: str, allow_f: bool = False) -> Expr:
    return _Parser(text, allow_f).parse()


def variables_of(node: Expr) -> list[tuple[str, int]]:
    if isinstance(node, Var):
        return [(node.name, node.pos)]
    if isinstance(node, Num):
        return []
    if isinstance(node, Neg):
        return variables_of(node.arg)
    if isinstance(node, Pow):
        return variables_of(node.base)
    return variables_of(node.left) + variables_of(node.right)


def _var_sort_key(name: str):
    if name == "x":
        return (0, 0, "")
    if name.startswith("x"):
        return (0, int(name[1:]), "")
    if name == "t":
        return (1, 0, "")
    if name == "y":
        return (3, 0, "")
    return (2, name.count("'"), name)


def default_var_order(names) -> list[str]:
    return sorted(set(names), key=_var_sort_key)


def evaluate(node: Expr, names: Sequence[str]) -> MPoly:
    n = len(names)
    index = {v: i for i, v in enumerate(names)}

    def go(nd):
        if isinstance(nd, Num):
            return MPoly.const(n, nd.value)
        if isinstance(nd, Var):
            return MPoly.var(n, index[nd.name])
        if isinstance(nd, Neg):
            return -go(nd.arg)
        if isinstance(nd, Pow):
            return go(nd.base) ** nd.exponent
        a, b = go(nd.left), go(nd.right)
        if nd.op == "+":
            return a + b
        if nd.op == "-":
            return a - b
        return a * b

    return go(node)


def parse_poly_vars(text: str, expected_vars: Sequence[str] | None = None) -> tuple[MPoly, list[str]]:
    """Parse and return the polynomial together with its variable order."""
    node = parse_expr(text)
    used = variables_of(node)
    if expected_vars is None:
        names = default_var_order(v for v, _ in used)
    else:
        names = list(expected_vars)
        for v, pos in used:
            if v not in names:
                raise ParseError(f"unknown variable {v!r} (expected one of {names})", text, pos)
    return evaluate(node, names), names


def parse_poly(text: str, expected_vars: Sequence[str] | None = None) -> MPoly:
    """Parse ``text`` into an MPoly.

    Without ``expected_vars`` the variables are ordered x (or x1, x2, ...),
    then t, then y, so that y is the distinguished last variable.
    """
    return parse_poly_vars(text, expected_vars)[0]


def bivariate_names(nx: int) -> list[str]:
    """Variable names for an MPoly-in-y over ``nx`` x-variables."""
    if nx == 1:
        return ["x", "y"]
    return [f"x{i + 1}" for i in range(nx)] + ["y"]


def x_names(nx: int) -> list[str]:
    return ["x"] if nx == 1 else [f"x{i + 1}" for i in range(nx)]


def parse_y_poly(text: str) -> MPoly:
    """Parse a polynomial in y over x-variables; y is made the last variable.

    ``x`` alone gives the univariate case; ``x1..xn`` the multivariate one
    (all of x1..x_max are kept even when some do not occur).
    """
    node = parse_expr(text)
    used = {v for v, _ in variables_of(node)}
    for v, pos in variables_of(node):
        if v == "t":
            raise ParseError("t is not allowed in a polynomial in x and y", text, pos)
    if "x" in used and any(v.startswith("x") and v != "x" for v in used):
        raise ParseError("cannot mix x with x1, x2, ...", text, 0)
    indexed = [int(v[1:]) for v in used if v.startswith("x") and v != "x"]
    if indexed:
        names = [f"x{i}" for i in range(1, max(indexed) + 1)] + ["y"]
    else:
        names = ["x", "y"]
    return evaluate(node, names)


def parse_seed(text: str, nx: int = 1) -> MPoly:
    """A seed is a polynomial in the x-variables only."""
    return parse_poly(text, x_names(nx))


# -- printing ---------------------------------------------------------------


def _monomial_str(e, names) -> str:
    parts = []
    for k, v in zip(e, names):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_poly(p: MPoly, names: Sequence[str] | None = None) -> str:
    """Canonical text form, terms in descending graded lexicographic order."""
    if names is None:
        names = x_names(p.nvars) if p.nvars != 2 else ["x", "y"]
        if p.nvars == 1:
            names = ["x"]
    if p.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(p.sorted_terms()):
        mono = _monomial_str(e, names)
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{rational_str(mag)}*{mono}"
        else:
            body = rational_str(mag)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


# -- ODE and recurrence text ---------------------------------------------------


def parse_ode(text: str):
    """``"2*(1+x)*f' - f = 0"`` -> LinearODE (linear, homogeneous in f, f', f'', ...)."""
    from .dfinite import LinearODE

    if text.count("=") > 1:
        raise ParseError("at most one '=' allowed", text, text.rfind("="))
    if "=" in text:
        lhs, rhs = text.split("=")
        body = f"{lhs}-({rhs})" if rhs.strip() else lhs
    else:
        body = text
    node = parse_expr(body, allow_f=True)
    used = variables_of(node)
    for v, pos in used:
        if v not in ("x",) and not v.startswith("f"):
            raise ParseError(f"unknown variable {v!r} in an ODE (use x and f, f', f'', ...)", text, pos)
    order = max((v.count("'") for v, _ in used if v.startswith("f")), default=-1)
    if order < 0:
        raise ParseError("the equation does not mention f", text, 0)
    names = ["x"] + ["f" + "'" * i for i in range(order + 1)]
    p = evaluate(node, names)
    coeffs = [dict() for _ in range(order + 1)]
    for e, c in p.terms.items():
        fdeg = sum(e[1:])
        if fdeg != 1:
            raise ParseError("the ODE must be linear and homogeneous in f", text, 0)
        i = e[1:].index(1)
        coeffs[i][e[0]] = c
    den = math.lcm(1, *(c.denominator for row in coeffs for c in row.values()))
    dense = []
    for row in coeffs:
        top = max(row, default=-1)
        dense.append(tuple(int(row.get(k, 0) * den) for k in range(top + 1)))
    return LinearODE(tuple(dense))


def parse_univariate(text: str, var: str = "l") -> list[Fraction]:
    """Ascending coefficients of a polynomial in one variable named ``var``."""
    swapped = re.sub(rf"\b{re.escape(var)}\b", "x", text)
    p = parse_poly(swapped, ["x"])
    top = p.degree(0) if not p.is_zero() else 0
    return [p.coeff((k,)) for k in range(top + 1)]


def format_univariate(coeffs: Sequence, var: str) -> str:
    return format_poly(MPoly(1, {(k,): c for k, c in enumerate(coeffs) if c}), [var])


def format_ode(ode) -> str:
    """``(2*x + 2)*f' - f = 0`` style text, highest derivative first."""
    out = []
    for i in reversed(range(len(ode.coeffs))):
        a = ode.coeffs[i]
        if not any(a):
            continue
        fname = "f" + "'" * i
        nz = [k for k, c in enumerate(a) if c]
        if len(nz) == 1:
            k = nz[0]
            c = a[k]
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            mag = abs(c)
            body = "*".join(p for p in (str(mag) if mag != 1 else "", mono, fname) if p)
            neg = c < 0
        else:
            body = f"({format_univariate(a, 'x')})*{fname}"
            neg = False
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) + " = 0"


def format_recurrence(rec) -> str:
    parts = []
    for j, p in enumerate(rec.coeffs):
        if not any(p):
            continue
        idx = "l" if j == 0 else f"l+{j}"
        parts.append(f"({format_univariate(p, 'l')})*f[{idx}]")
    return " + ".join(parts) + f" = 0  (l >= {rec.start})"


# -- JSON schema ------------------------------------------------------------------

SCHEMA = "eisenbox/1"


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def _rat(q) -> str:
    if q == float("inf"):
        return "inf"
    return rational_str(q)


def _unrat(v, path: str):
    if not isinstance(v, str):
        raise SchemaError(path, f"expected a rational string, got {type(v).__name__}")
    if v == "inf":
        return float("inf")
    if not re.fullmatch(r"-?\d+(/\d+)?", v):
        raise SchemaError(path, f"malformed rational {v!r}")
    q = Fraction(v)
    return q


def _get(obj, key, path):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    if key not in obj:
        raise SchemaError(f"{path}.{key}", "missing")
    return obj[key]


def _int(v, path):
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(path, "expected an integer")
    return v


def _list(v, path):
    if not isinstance(v, list):
        raise SchemaError(path, "expected a list")
    return v


def _terms_out(terms) -> list:
    return [{"e": list(e), "c": _rat(c)} for e, c in sorted(terms.items(), key=lambda t: (sum(t[0]), t[0]))]


def _terms_in(v, path, nvars):
    out = {}
    for i, t in enumerate(_list(v, path)):
        p = f"{path}[{i}]"
        e = _list(_get(t, "e", p), f"{p}.e")
        if len(e) != nvars or not all(isinstance(k, int) and not isinstance(k, bool) for k in e):
            raise SchemaError(f"{p}.e", f"expected {nvars} integers")
        out[tuple(e)] = _unrat(_get(t, "c", p), f"{p}.c")
    return out


def _mpoly_out(p: MPoly) -> dict:
    return {"nvars": p.nvars, "terms": _terms_out(p.terms)}


def _mpoly_in(v, path) -> MPoly:
    n = _int(_get(v, "nvars", path), f"{path}.nvars")
    return MPoly(n, _terms_in(_get(v, "terms", path), f"{path}.terms", n))


def to_json(value) -> dict:
    """Versioned JSON object for a result value; rationals become ``"num/den"`` strings."""
    from .dfinite import GrowthReport, PRecurrence
    from .eisenstein import EisensteinCertificate
    from .graded import Cone, GradedSeries
    from .series import PuiseuxSeries, TSeries

    head = {"schema": SCHEMA}
    if isinstance(value, TSeries):
        return {**head, "type": "TSeries", "nvars": value.nvars, "cap": value.cap,
                "terms": _terms_out(value.terms)}
    if isinstance(value, MPoly):
        return {**head, "type": "MPoly", **_mpoly_out(value)}
    if isinstance(value, PuiseuxSeries):
        return {**head, "type": "PuiseuxSeries", "ram": value.ram, "cap": value.cap,
                "terms": [{"k": k, "c": _rat(c)} for k, c in value.coeffs.items()]}
    if isinstance(value, GradedSeries):
        return {**head, "type": "GradedSeries",
                "omega": [_rat(w) for w in value.omega.omega],
                "lo": _rat(value.lo), "a": _mpoly_out(value.a),
                "pieces": [{"l": _rat(l), "num": _mpoly_out(p), "den_exp": value.exponent(l)}
                           for l, p in value.pieces.items()],
                "cap": _rat(value.cap), "ram": value.ram}
    if isinstance(value, EisensteinCertificate):
        return {**head, "type": "EisensteinCertificate", "a_raw": value.a_raw, "e": _rat(value.e),
                "s_min": _rat(value.s_min), "lambda": _rat(value.lam), "a_final": value.a_final,
                "verified_to": value.verified_to, "c": value.c}
    if isinstance(value, PRecurrence):
        return {**head, "type": "PRecurrence", "order": value.order,
                "coeffs": [list(p) for p in value.coeffs], "start": value.start,
                "n0": value.n0, "init": [_rat(v) for v in value.init]}
    if isinstance(value, Cone):
        return {**head, "type": "Cone", "generators": [list(g) for g in value.generators],
                "translate": list(value.translate)}
    if isinstance(value, GrowthReport):
        return {**head, "type": "GrowthReport", "s": list(value.s), "K": round(value.K, 12),
                "K_at": value.K_at,
                "envelopes": {str(p): _rat(m) for p, m in sorted(value.envelopes.items())}}
    raise TypeError(f"no JSON schema for {type(value).__name__}")


def from_json(obj: dict):
    """Inverse of :func:`to_json`; schema problems raise :class:`SchemaError` with a JSON path."""
    from .dfinite import GrowthReport, PRecurrence
    from .eisenstein import EisensteinCertificate
    from .graded import Cone, GradedSeries
    from .series import PuiseuxSeries, TSeries, WeightVector

    if _get(obj, "schema", "$") != SCHEMA:
        raise SchemaError("$.schema", f"expected {SCHEMA!r}")
    kind = _get(obj, "type", "$")
    try:
        if kind == "TSeries":
            n = _int(_get(obj, "nvars", "$"), "$.nvars")
            return TSeries(n, _int(_get(obj, "cap", "$"), "$.cap"), _terms_in(_get(obj, "terms", "$"), "$.terms", n))
        if kind == "MPoly":
            return _mpoly_in(obj, "$")
        if kind == "PuiseuxSeries":
            coeffs = {}
            for i, t in enumerate(_list(_get(obj, "terms", "$"), "$.terms")):
                coeffs[_int(_get(t, "k", f"$.terms[{i}]"), f"$.terms[{i}].k")] = _unrat(
                    _get(t, "c", f"$.terms[{i}]"), f"$.terms[{i}].c")
            return PuiseuxSeries(_int(_get(obj, "ram", "$"), "$.ram"), coeffs, _int(_get(obj, "cap", "$"), "$.cap"))
        if kind == "GradedSeries":
            omega = [_unrat(w, f"$.omega[{i}]") for i, w in enumerate(_list(_get(obj, "omega", "$"), "$.omega"))]
            pieces = {}
            for i, t in enumerate(_list(_get(obj, "pieces", "$"), "$.pieces")):
                p = f"$.pieces[{i}]"
                pieces[_unrat(_get(t, "l", p), f"{p}.l")] = _mpoly_in(_get(t, "num", p), f"{p}.num")
            return GradedSeries(WeightVector(tuple(omega)), _unrat(_get(obj, "lo", "$"), "$.lo"),
                                _mpoly_in(_get(obj, "a", "$"), "$.a"), pieces,
                                _unrat(_get(obj, "cap", "$"), "$.cap"), _int(obj.get("ram", 1), "$.ram"))
        if kind == "EisensteinCertificate":
            return EisensteinCertificate(
                _int(_get(obj, "a_raw", "$"), "$.a_raw"), _unrat(_get(obj, "e", "$"), "$.e"),
                _unrat(_get(obj, "s_min", "$"), "$.s_min"), _unrat(_get(obj, "lambda", "$"), "$.lambda"),
                _int(_get(obj, "a_final", "$"), "$.a_final"), _int(_get(obj, "verified_to", "$"), "$.verified_to"),
                _int(obj.get("c", 1), "$.c"))
        if kind == "PRecurrence":
            coeffs = []
            for j, p in enumerate(_list(_get(obj, "coeffs", "$"), "$.coeffs")):
                coeffs.append(tuple(_int(v, f"$.coeffs[{j}][{k}]") for k, v in enumerate(_list(p, f"$.coeffs[{j}]"))))
            init = [_unrat(v, f"$.init[{i}]") for i, v in enumerate(_list(_get(obj, "init", "$"), "$.init"))]
            return PRecurrence(tuple(coeffs), tuple(init), _int(_get(obj, "start", "$"), "$.start"),
                               _int(_get(obj, "n0", "$"), "$.n0"))
        if kind == "Cone":
            gens = [tuple(_int(v, f"$.generators[{i}][{k}]") for k, v in enumerate(_list(g, f"$.generators[{i}]")))
                    for i, g in enumerate(_list(_get(obj, "generators", "$"), "$.generators"))]
            tr = tuple(_int(v, f"$.translate[{k}]") for k, v in enumerate(_list(_get(obj, "translate", "$"), "$.translate")))
            return Cone(tuple(gens), tr)
        if kind == "GrowthReport":
            s = tuple(_int(v, f"$.s[{i}]") for i, v in enumerate(_list(_get(obj, "s", "$"), "$.s")))
            ratios = tuple(0.0 if l < 2 else v / (l * math.log(l)) for l, v in enumerate(s))
            env = {int(p): _unrat(m, f"$.envelopes.{p}") for p, m in _get(obj, "envelopes", "$").items()}
            return GrowthReport(s, ratios, float(_get(obj, "K", "$")), _int(_get(obj, "K_at", "$"), "$.K_at"), env)
    except SchemaError:
        raise
    except (ValueError, ArithmeticError, AssertionError) as exc:
        raise SchemaError("$", str(exc)) from exc
    raise SchemaError("$.type", f"unknown type {kind!r}")
