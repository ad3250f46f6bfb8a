"""Submodule computations in A^m, A = F[chi], backed by sympy's Groebner bases.

A module element is a :class:`LinearEquation` read as ``sum c * chi^mu e_k``.
Submodules are encoded as ideals in ``F[e_1..e_m, chi]`` together with all
products ``e_a e_b``; the e-degree-one part of a Groebner basis of that ideal
is a Groebner basis of the module.

``local`` inverts the first ``local`` indeterminates: coefficients then live
in ``Q(params, chi_1..chi_local)`` and only the remaining chi are
polynomial variables.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy
from sympy import QQ
from sympy.polys.orderings import ProductOrder, grevlex

from .arith import Field, Poly, RationalFunction
from .errors import ZeroDivisorInput
from .jets import Jet, LinearEquation, jet_key


class Ring:
    """Bookkeeping for one polynomial ring ``F[e, chi'']``."""

    def __init__(self, n, m, params=(), local=0):
        self.n = n
        self.m = m
        self.params = tuple(params)
        self.local = local
        self.xs = sympy.symbols(" ".join(f"x{i}" for i in range(1, n + 1)), seq=True)
        self.es = sympy.symbols(" ".join(f"__e{k}" for k in range(0, m + 1)), seq=True)
        self.t = sympy.Symbol("__t")
        self.ps = tuple(sympy.Symbol(p) for p in self.params)
        self.coeff_names = self.params + tuple(f"x{i}" for i in range(1, local + 1))
        self.field = Field(self.coeff_names)
        self.domain = _domain(self.coeff_names)
        self.vars = tuple(self.xs[local:])

    # conversion ------------------------------------------------------------
    def coeff_expr(self, c):
        if isinstance(c, Poly):
            return _poly_expr(c)
        if isinstance(c, Fraction) or isinstance(c, int):
            return sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        num, den = c.num, c.den
        return _poly_expr(num) / _poly_expr(den)

    def to_expr(self, eq, e_index=None):
        """Expression of a module element; unknown k maps to e_k (or e_index[k])."""
        out = 0
        for j, c in eq.terms.items():
            mono = sympy.Mul(*[x ** k for x, k in zip(self.xs, j.mu) if k])
            e = self.es[j.k] if e_index is None else e_index[j.k]
            out += self.coeff_expr(c) * mono * e
        return out

    def from_native(self, p, gens, e_pos):
        """Read a sympy Poly over ``gens`` back as a LinearEquation.

        ``e_pos`` maps generator positions of e-variables to unknown indices.
        """
        xpos = {i: self.xs.index(g) + 1 for i, g in enumerate(gens) if g in self.xs}
        terms = {}
        for monom, c in p.as_dict(native=True).items():
            k = None
            mu = [0] * self.n
            for i, power in enumerate(monom):
                if not power:
                    continue
                if i in e_pos:
                    if k is not None or power > 1:
                        return None
                    k = e_pos[i]
                elif i in xpos:
                    mu[xpos[i] - 1] += power
                else:
                    return None
            if k is None:
                return None
            coeff = self._coeff_from_native(c)
            jet = Jet(k, tuple(mu))
            terms[jet] = terms[jet] + coeff if jet in terms else coeff
        return LinearEquation(terms, self.field)

    def _coeff_from_native(self, c):
        if not self.coeff_names:
            return Fraction(int(c.numerator), int(c.denominator))
        num = _poly_from_ring(c.numer, self.coeff_names)
        den = _poly_from_ring(c.denom, self.coeff_names)
        return RationalFunction(num, den)

    def lift(self, eq):
        """Coerce an equation's coefficients into this ring's coefficient field."""
        if eq.field == self.field:
            return eq
        return LinearEquation({j: self.field(c) for j, c in eq.terms.items()}, self.field)

    # core ---------------------------------------------------------------------
    def _products(self, indices):
        es = [self.es[i] for i in indices]
        return [a * b for i, a in enumerate(es) for b in es[i:]]

    def gb(self, eqs):
        """Reduced Groebner basis of the submodule generated by ``eqs``."""
        eqs = [e for e in eqs if e]
        if not eqs:
            return []
        gens = tuple(self.es[1:]) + self.vars
        polys = [self.to_expr(e) for e in eqs] + self._products(range(1, self.m + 1))
        G = sympy.groebner(polys, *gens, order="grevlex", domain=self.domain)
        e_pos = {i: i + 1 for i in range(self.m)}
        out = []
        for p in G.polys:
            eq = self.from_native(p, gens, e_pos)
            if eq is not None and eq:
                out.append(eq)
        return _sorted(out)

    def reduce(self, eq, basis):
        """Remainder of ``eq`` modulo a Groebner basis (as returned by :meth:`gb`)."""
        if not eq:
            return eq
        if not basis:
            return self.lift(eq)
        gens = tuple(self.es[1:]) + self.vars
        polys = [self.to_expr(b) for b in basis] + self._products(range(1, self.m + 1))
        _, r = sympy.reduced(self.to_expr(eq), polys, *gens, order="grevlex", domain=self.domain)
        if r == 0:
            return LinearEquation({}, self.field)
        p = sympy.Poly(r, *gens, domain=self.domain)
        return self.from_native(p, gens, {i: i + 1 for i in range(self.m)})

    def contains(self, basis, eq):
        return not self.reduce(eq, basis)

    def same(self, b1, b2):
        return all(self.contains(b2, e) for e in b1) and all(self.contains(b1, e) for e in b2)

    def saturate(self, eqs, h):
        """Generators of ``M : h^infinity`` (one elimination with an extra variable)."""
        h_expr = self.coeff_expr(h)
        gens = (self.t,) + tuple(self.es[1:]) + self.vars
        polys = [self.to_expr(e) for e in eqs if e]
        polys += [(1 - self.t * h_expr) * self.es[k] for k in range(1, self.m + 1)]
        polys += self._products(range(1, self.m + 1))
        order = ProductOrder((grevlex, lambda mon: mon[:1]), (grevlex, lambda mon: mon[1:]))
        G = sympy.groebner(polys, *gens, order=order, domain=self.domain)
        e_pos = {i + 1: i + 1 for i in range(self.m)}
        out = []
        for p in G.polys:
            if p.degree(self.t) > 0:
                continue
            eq = self.from_native(p, gens, e_pos)
            if eq is not None and eq:
                out.append(eq)
        return self.gb(out)

    def annihilator(self, eqs, g):
        """Generators of ``{a in F[chi] : a g in M}`` as polynomials (Poly in x1..xn)."""
        if not g:
            return [LinearEquation({Jet(1, (0,) * self.n): self.field.one}, self.field)]
        gens = tuple(self.es[1:]) + (self.es[0],) + self.vars
        polys = [self.es[0] + self.to_expr(g)]
        polys += [self.to_expr(e) for e in eqs if e]
        polys += self._products(range(0, self.m + 1))
        m = self.m
        order = ProductOrder((grevlex, lambda mon: mon[:m]), (grevlex, lambda mon: mon[m:]))
        G = sympy.groebner(polys, *gens, order=order, domain=self.domain)
        out = []
        for p in G.polys:
            if any(p.degree(self.es[k]) > 0 for k in range(1, m + 1)):
                continue
            eq = self.from_native(p, gens, {m: 1})
            if eq is None or not eq:
                continue
            out.append(eq)
        return out

    def xnames(self):
        return tuple(str(x) for x in self.vars)


@lru_cache(maxsize=None)
def _domain(names):
    if not names:
        return QQ
    return QQ.frac_field(*sympy.symbols(" ".join(names), seq=True))


def _poly_expr(p):
    syms = sympy.symbols(" ".join(p.gens), seq=True) if p.gens else ()
    out = 0
    for e, c in p.items():
        out += sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s ** k for s, k in zip(syms, e) if k])
    return out


def _poly_from_ring(f, names):
    return Poly(names, {tuple(e): Fraction(int(c.numerator), int(c.denominator)) for e, c in f.items()})


def _sorted(eqs):
    return sorted(eqs, key=lambda e: jet_key(e.leading_jet), reverse=True)


def ring_for(n, m, params=(), local=0):
    return Ring(n, m, params, local)


def ideal_quotient(gens, f, n, params=()):
    """Generators of ``(gens) : f`` for polynomials ``gens`` and ``f`` in x1..xn."""
    if not f:
        raise ZeroDivisorInput("quotient by the zero polynomial")
    ring = Ring(n, 1, params)
    eqs = [poly_to_equation(g, n, ring.field) for g in gens]
    ann = ring.annihilator(eqs, poly_to_equation(f, n, ring.field))
    return ring.gb(ann)


def poly_to_equation(p, n, field, k=1):
    """Read a polynomial over (params..., x1..xn) as a module element of unknown k."""
    off = len(p.gens) - n
    params = p.gens[:off]
    terms = {}
    if params:
        # group by chi-exponent, coefficient polynomial in the parameters
        groups = {}
        for e, c in p.items():
            groups.setdefault(e[off:], {})[e[:off]] = c
        for mu, t in groups.items():
            coeff = RationalFunction(Poly(params, t))
            terms[Jet(k, tuple(mu))] = field(coeff)
    else:
        for e, c in p.items():
            terms[Jet(k, tuple(e))] = field(c)
    return LinearEquation(terms, field)


def equation_to_poly(eq, gens):
    """Polynomial of a single-unknown element over ``gens`` (params first, then x's)."""
    n = len(next(iter(eq.terms)).mu) if eq.terms else 0
    off = len(gens) - n
    acc = RationalFunction(Poly(gens))
    for j, c in eq.terms.items():
        mono = RationalFunction(Poly.monomial((0,) * off + j.mu, gens))
        if isinstance(c, RationalFunction):
            c = c.reorder(gens)
        acc = acc + mono * c
    if not acc.is_polynomial():
        raise ValueError("element has non-polynomial coefficients")
    return acc.num
