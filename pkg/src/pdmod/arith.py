"""Exact arithmetic: multivariate polynomials over Q and their fractions.

Rationals are :class:`fractions.Fraction`.  Polynomials carry the names of
their indeterminates (``gens``); the canonical term order is degree reverse
lexicographic with the *last* generator largest, i.e. ``x_n > ... > x_1`` for
``gens = ("x1", ..., "xn")``.  Named parameters are just further generators.

All values are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import FieldMismatch, NotExactDivision, SpecializationError, ZeroDenominator

Exponent = tuple


def term_key(e):
    """Sort key of an exponent vector: larger key means larger term."""
    return (sum(e), tuple(-x for x in e))


class Poly:
    """Polynomial with Fraction coefficients in the indeterminates ``gens``."""

    __slots__ = ("gens", "_terms", "_hash")

    def __init__(self, gens, terms=None):
        self.gens = tuple(gens)
        n = len(self.gens)
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {n} generators")
                c = c if isinstance(c, Fraction) else Fraction(c)
                if c:
                    clean[e] = c
        self._terms = clean
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, value, gens):
        gens = tuple(gens)
        return cls(gens, {(0,) * len(gens): value})

    @classmethod
    def var(cls, name, gens):
        gens = tuple(gens)
        if name not in gens:
            raise ValueError(f"unknown indeterminate {name!r}")
        e = tuple(1 if g == name else 0 for g in gens)
        return cls(gens, {e: 1})

    @classmethod
    def monomial(cls, exponent, gens, coeff=1):
        return cls(gens, {tuple(exponent): coeff})

    @classmethod
    def parse(cls, text, gens):
        from ._expr import parse_polynomial

        return parse_polynomial(text, tuple(gens))

    # inspection ---------------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * len(self.gens), Fraction(0))

    def sorted_terms(self):
        """Terms in decreasing term order."""
        return sorted(self._terms.items(), key=lambda t: term_key(t[0]), reverse=True)

    def leading_exponent(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms, key=term_key)

    def leading_coeff(self):
        if not self._terms:
            return Fraction(0)
        return self._terms[self.leading_exponent()]

    def total_degree(self):
        return max((sum(e) for e in self._terms), default=-1)

    def degree(self, name):
        i = self.gens.index(name)
        return max((e[i] for e in self._terms), default=-1)

    def used_gens(self):
        return tuple(g for i, g in enumerate(self.gens) if any(e[i] for e in self._terms))

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.gens != self.gens:
                raise FieldMismatch(f"generators {self.gens} vs {other.gens}")
            return other
        if isinstance(other, (int, Rational)):
            return Poly.const(Fraction(other), self.gens)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        t = dict(self._terms)
        for e, c in other._terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.gens, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.gens, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            c = Fraction(other)
            return Poly(self.gens, {e: v * c for e, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        t = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.gens, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = Poly.const(1, self.gens)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDenominator("division by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, Poly):
            return RationalFunction(self, other)
        if isinstance(other, RationalFunction):
            return RationalFunction(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Rational)):
            return RationalFunction(Poly.const(other, self.gens), self)
        return NotImplemented

    def exquo(self, other):
        """Exact quotient; raises :class:`NotExactDivision` if ``other`` does not divide."""
        other = self._coerce(other)
        if not other:
            raise ZeroDenominator("division by the zero polynomial")
        lead_e = other.leading_exponent()
        lead_c = other._terms[lead_e]
        rem = self
        quot = {}
        while rem:
            e = rem.leading_exponent()
            diff = tuple(a - b for a, b in zip(e, lead_e))
            if min(diff, default=0) < 0:
                raise NotExactDivision(f"{other} does not divide {self}")
            c = rem._terms[e] / lead_c
            quot[diff] = c
            rem = rem - Poly(self.gens, {diff: c}) * other
        return Poly(self.gens, quot)

    def divides(self, other):
        try:
            other.exquo(self)
        except NotExactDivision:
            return False
        return True

    def monic(self):
        if not self._terms:
            return self
        return self * (1 / self.leading_coeff())

    def primitive(self):
        """Scale to integer coefficients with content 1 and positive leading coefficient."""
        if not self._terms:
            return self
        from math import gcd, lcm

        den = 1
        for c in self._terms.values():
            den = lcm(den, c.denominator)
        num = 0
        for c in self._terms.values():
            num = gcd(num, int(c * den))
        scale = Fraction(den, num)
        if self.leading_coeff() < 0:
            scale = -scale
        return self * scale

    # equality / hashing -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.gens == other.gens and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.gens, frozenset(self._terms.items())))
        return self._hash

    # substitution -------------------------------------------------------
    def subs(self, values):
        """Substitute rational values for some generators (generators are kept)."""
        idx = {self.gens.index(k): Fraction(v) for k, v in values.items() if k in self.gens}
        t = {}
        for e, c in self._terms.items():
            for i, v in idx.items():
                if e[i]:
                    c = c * v ** e[i]
            if not c:
                continue
            e2 = tuple(0 if i in idx else x for i, x in enumerate(e))
            t[e2] = t.get(e2, 0) + c
        return Poly(self.gens, t)

    def compose(self, images):
        """Substitute a polynomial (same target gens) for every generator."""
        if len(images) != len(self.gens):
            raise ValueError("need one image per generator")
        target = images[0].gens if images else ()
        result = Poly(target)
        for e, c in self._terms.items():
            term = Poly.const(c, target)
            for img, k in zip(images, e):
                if k:
                    term = term * img ** k
            result = result + term
        return result

    def reorder(self, gens):
        """Re-express over another generator tuple; unused generators may be dropped."""
        gens = tuple(gens)
        if gens == self.gens:
            return self
        pos = {}
        for i, g in enumerate(self.gens):
            if g in gens:
                pos[i] = gens.index(g)
        t = {}
        for e, c in self._terms.items():
            new = [0] * len(gens)
            for i, k in enumerate(e):
                if k:
                    if i not in pos:
                        raise FieldMismatch(f"{self.gens[i]} is not among {gens}")
                    new[pos[i]] = k
            t[tuple(new)] = c
        return Poly(gens, t)

    def evaluate(self, values):
        return self.subs(dict(zip(self.gens, values))).constant_value()

    # printing -----------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                g if k == 1 else f"{g}^{k}" for g, k in zip(self.gens, e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Poly({str(self)!r}, gens={self.gens})"


# gcd -----------------------------------------------------------------------


@lru_cache(maxsize=None)
def _sympy_ring(gens):
    from sympy import QQ
    from sympy.polys.rings import PolyRing

    return PolyRing(",".join(gens), QQ)


def _to_sympy(p):
    from sympy import QQ

    R = _sympy_ring(p.gens)
    return R.from_dict({e: QQ(c.numerator, c.denominator) for e, c in p.items()})


def _from_sympy(f, gens):
    return Poly(gens, {e: Fraction(int(c.numerator), int(c.denominator)) for e, c in f.items()})


def poly_gcd(p, q):
    """Greatest common divisor, monic under the canonical order; gcd(0, 0) = 0."""
    if p.gens != q.gens:
        raise FieldMismatch(f"generators {p.gens} vs {q.gens}")
    if not p:
        return q.monic()
    if not q:
        return p.monic()
    if p.is_constant() or q.is_constant():
        return Poly.const(1, p.gens)
    if len(p._terms) == 1 and len(q._terms) == 1:
        (e1,), (e2,) = p._terms.keys(), q._terms.keys()
        return Poly.monomial(tuple(min(a, b) for a, b in zip(e1, e2)), p.gens)
    g = _to_sympy(p).gcd(_to_sympy(q))
    return _from_sympy(g, p.gens).monic()


def poly_lcm(p, q):
    if not p or not q:
        return Poly(p.gens)
    return (p * q).exquo(poly_gcd(p, q)).monic()


# rational functions ----------------------------------------------------------


class RationalFunction:
    """Reduced fraction ``num / den`` with ``den`` monic under the canonical order."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly.const(1, num.gens)
        if num.gens != den.gens:
            raise FieldMismatch(f"generators {num.gens} vs {den.gens}")
        if not den:
            raise ZeroDenominator("zero denominator")
        if not num:
            num, den = num, Poly.const(1, num.gens)
        elif den.is_constant():
            num, den = num * (1 / den.constant_value()), Poly.const(1, num.gens)
        else:
            g = poly_gcd(num, den)
            if not g.is_constant():
                num, den = num.exquo(g), den.exquo(g)
            lc = den.leading_coeff()
            if lc != 1:
                num, den = num * (1 / lc), den * (1 / lc)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def gens(self):
        return self.num.gens

    @classmethod
    def parse(cls, text, gens):
        from ._expr import parse_rational_function

        return parse_rational_function(text, tuple(gens))

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.gens != self.gens:
                raise FieldMismatch(f"generators {self.gens} vs {other.gens}")
            return other
        if isinstance(other, Poly):
            if other.gens != self.gens:
                raise FieldMismatch(f"generators {self.gens} vs {other.gens}")
            return RationalFunction(other)
        if isinstance(other, (int, Rational)):
            return RationalFunction(Poly.const(Fraction(other), self.gens))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return _raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            if other == 0:
                return _raw(Poly(self.gens), Poly.const(1, self.gens))
            return _raw(self.num * Fraction(other), self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return _raw(Poly(self.gens), Poly.const(1, self.gens))
        if self.den.is_constant() and other.den.is_constant():
            # both polynomial: product is already reduced
            return _raw(self.num * other.num, self.den)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDenominator("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return _raw(self.num ** k, self.den ** k)

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.constant_value()

    def is_polynomial(self):
        return self.den.is_constant()

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.gens == other.gens and self.num == other.num and self.den == other.den
        if isinstance(other, Poly):
            return self.den.is_constant() and self.num == other
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def subs(self, values):
        den = self.den.subs(values)
        if not den:
            raise SpecializationError(f"denominator {self.den} vanishes at {values}")
        return RationalFunction(self.num.subs(values), den)

    def reorder(self, gens):
        return RationalFunction(self.num.reorder(gens), self.den.reorder(gens))

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        num = str(self.num)
        if len(self.num.items()) > 1:
            num = f"({num})"
        return f"{num}/({self.den})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r}, gens={self.gens})"


def _raw(num, den):
    """Build without re-normalizing (caller guarantees the invariants)."""
    r = RationalFunction.__new__(RationalFunction)
    r.num = num
    r.den = den
    r._hash = None
    return r


def ratfn_normalize(num, den):
    """Reduced fraction ``num/den``; raises :class:`ZeroDenominator` if ``den`` is zero."""
    return RationalFunction(num, den)


def clear_denominators(row):
    """Scale a row of rational functions by the lcm of its denominators.

    Returns ``(polys, common)`` with ``polys[i] == row[i] * common``.
    """
    row = list(row)
    if not row:
        raise ValueError("empty row")
    gens = _gens_of(row)
    common = Poly.const(1, gens)
    for x in row:
        if isinstance(x, RationalFunction) and not x.den.is_constant():
            common = poly_lcm(common, x.den)
    out = []
    for x in row:
        if isinstance(x, RationalFunction):
            out.append(x.num * common.exquo(x.den))
        elif isinstance(x, Poly):
            out.append(x * common)
        else:
            out.append(Poly.const(Fraction(x), gens) * common)
    return out, common


def _gens_of(values):
    for x in values:
        if isinstance(x, (Poly, RationalFunction)):
            return x.gens
    return ()


# coefficient fields -----------------------------------------------------------


class Field:
    """The coefficient field Q(gens); elements are Fraction when ``gens`` is empty."""

    __slots__ = ("gens",)

    def __init__(self, gens=()):
        self.gens = tuple(gens)

    @property
    def is_rational(self):
        return not self.gens

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        if isinstance(value, str):
            if self.gens:
                return RationalFunction.parse(value, self.gens)
            return Fraction(value)
        if isinstance(value, (RationalFunction, Poly)):
            if not self.gens:
                if value.is_constant():
                    return value.constant_value()
                raise FieldMismatch(f"{value} is not a rational number")
            if value.gens != self.gens:
                value = value.reorder(self.gens)
            if isinstance(value, Poly):
                return RationalFunction(value)
            return value
        if isinstance(value, (int, Rational)):
            v = Fraction(value)
            if not self.gens:
                return v
            return _raw(Poly.const(v, self.gens), Poly.const(1, self.gens))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def var(self, name):
        return RationalFunction(Poly.var(name, self.gens))

    def poly_ring_gens(self):
        return self.gens

    def __eq__(self, other):
        return isinstance(other, Field) and other.gens == self.gens

    def __hash__(self):
        return hash(("Field", self.gens))

    def __repr__(self):
        return "QQ" if not self.gens else f"QQ({','.join(self.gens)})"


QQ = Field()


def is_zero(x):
    return not x


def coeff_str(c):
    """Compact text for a field element, parenthesized when it is a sum."""
    s = str(c)
    if isinstance(c, RationalFunction):
        if not c.den.is_constant() or len(c.num.items()) > 1:
            return f"({s})" if not s.startswith("(") or not c.den.is_constant() else s
    return s
