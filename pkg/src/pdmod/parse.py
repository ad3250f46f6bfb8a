"""Text and JSON formats for linear PD systems.

DSL, one equation per line after a header::

    n=3 m=1 params=a
    y[0,0,2] = 0
    y[1,0,1] - y[0,1,0] = 0
    a*y2[0,1,0] + (a+1)/2*y1[1,0,0] = 0

``#`` starts a comment.  ``y[...]`` is unknown 1; ``yK[...]`` is unknown K.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from ._expr import parse_expression
from .arith import Field, Poly, RationalFunction
from .errors import ParseError
from .jets import Jet, LinearEquation, PDSystem, jet_key, mu_bracket

_UNKNOWN = re.compile(r"^y(\d*)$")


class _Lin:
    """Linear form in jets plus a scalar part, used only while parsing."""

    __slots__ = ("terms", "scalar")

    def __init__(self, terms=None, scalar=0):
        self.terms = terms or {}
        self.scalar = scalar

    @staticmethod
    def lift(x):
        return x if isinstance(x, _Lin) else _Lin({}, x)

    def is_scalar(self):
        return not self.terms

    def __add__(self, other):
        other = _Lin.lift(other)
        t = dict(self.terms)
        for j, c in other.terms.items():
            t[j] = t[j] + c if j in t else c
        return _Lin({j: c for j, c in t.items() if c}, self.scalar + other.scalar)

    __radd__ = __add__

    def __neg__(self):
        return _Lin({j: -c for j, c in self.terms.items()}, -self.scalar)

    def __sub__(self, other):
        return self + (-_Lin.lift(other))

    def __rsub__(self, other):
        return _Lin.lift(other) + (-self)

    def __mul__(self, other):
        other = _Lin.lift(other)
        if self.terms and other.terms:
            raise ParseError("product of two jet expressions is not linear")
        if self.terms:
            s = other.scalar
            return _Lin({j: c * s for j, c in self.terms.items() if c * s}, 0)
        if other.terms:
            s = self.scalar
            return _Lin({j: c * s for j, c in other.terms.items() if c * s}, 0)
        return _Lin({}, self.scalar * other.scalar)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _Lin.lift(other)
        if other.terms:
            raise ParseError("division by a jet expression")
        if not other.scalar:
            raise ParseError("division by zero")
        inv = 1 / other.scalar
        return _Lin({j: c * inv for j, c in self.terms.items()}, self.scalar * inv)

    def __rtruediv__(self, other):
        return _Lin.lift(other) / self

    def __pow__(self, k):
        if self.terms:
            if k == 1:
                return self
            raise ParseError("power of a jet expression is not linear")
        return _Lin({}, self.scalar ** k)


def _header(line, lineno):
    opts = {}
    for part in line.split():
        if "=" not in part:
            raise ParseError(f"malformed header entry {part!r}", lineno)
        key, value = part.split("=", 1)
        opts[key.strip()] = value.strip()
    try:
        n = int(opts.pop("n"))
        m = int(opts.pop("m", "1"))
    except KeyError:
        raise ParseError("header must declare n", lineno) from None
    except ValueError:
        raise ParseError("n and m must be integers", lineno) from None
    params = tuple(p for p in opts.pop("params", "").split(",") if p)
    if opts:
        raise ParseError(f"unknown header keys {sorted(opts)}", lineno)
    if n < 1 or m < 1:
        raise ParseError("n and m must be positive", lineno)
    return n, m, params


def _check_params(params, lineno=None):
    for p in params:
        if not re.match(r"^[A-Za-z_][A-Za-z0-9_]*$", p) or _UNKNOWN.match(p) or re.match(r"^x\d+$", p):
            raise ParseError(f"invalid parameter name {p!r}", lineno)


def parse_equation(text, n, m, field, lineno=None):
    params = field.gens

    def atom(name, indices):
        u = _UNKNOWN.match(name)
        if u and indices is not None:
            k = int(u.group(1) or 1)
            if not 1 <= k <= m:
                raise ParseError(f"unknown index {k} out of range 1..{m}")
            if len(indices) != n:
                raise ParseError(f"multi-index {list(indices)} must have {n} entries")
            return _Lin({Jet(k, tuple(indices)): field.one}, 0)
        if indices is not None:
            raise ParseError(f"{name!r} cannot be indexed")
        if name in params:
            return _Lin({}, field.var(name))
        raise ParseError(f"unknown name {name!r}")

    if "=" in text:
        lhs, rhs = text.split("=", 1)
        if "=" in rhs:
            raise ParseError("more than one '='", lineno, len(lhs) + len(rhs.split("=")[0]) + 2)
        left = _Lin.lift(parse_expression(lhs, atom, lineno))
        try:
            right = _Lin.lift(parse_expression(rhs, atom, lineno))
        except ParseError as exc:
            if exc.column is not None:
                raise ParseError(exc.message, lineno, exc.column + len(lhs) + 1) from None
            raise
        value = left - right
    else:
        value = _Lin.lift(parse_expression(text, atom, lineno))
    if value.scalar:
        raise ParseError("equation has a term without a jet (only homogeneous linear equations)", lineno)
    return LinearEquation({j: field(c) for j, c in value.terms.items()}, field)


def parse_system(text):
    """Parse the DSL into a :class:`PDSystem`."""
    header = None
    eqs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            header = _header(line, lineno)
            n, m, params = header
            _check_params(params, lineno)
            field = Field(params)
            continue
        eq = parse_equation(line, n, m, field, lineno)
        if not eq:
            raise ParseError("equation is identically zero", lineno)
        eqs.append(eq)
    if header is None:
        raise ParseError("missing header line 'n=... m=...'")
    if not eqs:
        raise ParseError("system has no equations")
    return PDSystem(n, m, eqs, field, params=params)


def parse_json(data):
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    try:
        n = int(data["n"])
        m = int(data.get("m", 1))
        params = tuple(data.get("params", []))
        rows = data["equations"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed system object: {exc}") from None
    _check_params(params)
    field = Field(params)
    eqs = []
    for i, row in enumerate(rows, start=1):
        terms = {}
        for t in row:
            try:
                k = int(t.get("k", 1))
                mu = tuple(int(x) for x in t["mu"])
                c = str(t.get("c", "1"))
            except (KeyError, TypeError, ValueError, AttributeError) as exc:
                raise ParseError(f"malformed term in equation {i}: {exc}") from None
            if len(mu) != n or not 1 <= k <= m or min(mu, default=0) < 0:
                raise ParseError(f"jet (k={k}, mu={list(mu)}) does not fit n={n}, m={m}", i)
            value = _parse_coeff(c, field, i)
            j = Jet(k, mu)
            terms[j] = terms[j] + value if j in terms else value
        eq = LinearEquation(terms, field)
        if eq:
            eqs.append(eq)
    if not eqs:
        raise ParseError("system has no equations")
    return PDSystem(n, m, eqs, field, params=params)


def _parse_coeff(text, field, line=None):
    if not field.gens:
        value = parse_expression(text, _no_names, line)
        if not isinstance(value, Fraction):
            raise ParseError(f"bad coefficient {text!r}", line)
        return value
    return field(RationalFunction.parse(text, field.gens))


def _no_names(name, indices):
    raise ParseError(f"unknown name {name!r}")


def load_system(text):
    """Parse either format, sniffing JSON by a leading brace."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_system(text)


# serialization -------------------------------------------------------------------


def coeff_text(c):
    return str(c)


def system_to_dsl(s):
    head = f"n={s.n} m={s.m}"
    if s.field.gens:
        head += " params=" + ",".join(s.field.gens)
    lines = [head]
    for e in s.equations:
        lines.append(equation_to_dsl(e, s.m) + " = 0")
    return "\n".join(lines) + "\n"


def equation_to_dsl(e, m=1):
    parts = []
    for j in sorted(e.terms, key=jet_key, reverse=True):
        c = e.terms[j]
        name = ("y" if m == 1 else f"y{j.k}") + mu_bracket(j.mu)
        if c == 1:
            parts.append(f"+ {name}")
        elif c == -1:
            parts.append(f"- {name}")
        elif isinstance(c, Fraction):
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {abs(c)}*{name}")
        else:
            sign, text = ("-", str(-c)) if str(c).startswith("-") else ("+", str(c))
            if not text.replace("*", "").replace("^", "").isalnum():
                text = f"({text})"
            parts.append(f"{sign} {text}*{name}")
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def equation_to_json(e):
    return [
        {"k": j.k, "mu": list(j.mu), "c": coeff_text(e.terms[j])}
        for j in sorted(e.terms, key=jet_key, reverse=True)
    ]


def system_to_json(s):
    return {
        "n": s.n,
        "m": s.m,
        "params": list(s.field.gens),
        "equations": [equation_to_json(e) for e in s.equations],
    }
