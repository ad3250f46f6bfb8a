"""Multi-indices, jet variables, linear PD systems and their reduction.

A jet ``Jet(k, mu)`` stands for the derivative ``d_mu y^k`` (``k`` is 1-based,
``mu`` has one entry per independent variable).  The same object also reads
as the module element ``chi^mu e_k``.

Jet order: degree first, then degree reverse lexicographic on ``mu`` (at the
first index where two multi-indices differ, the smaller entry wins), then the
unknown index.  This refines the class order, is compatible with
prolongation and agrees with the polynomial order ``x_n > ... > x_1``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, factorial
from typing import NamedTuple

from .arith import Field, Poly, QQ, coeff_str
from .errors import FieldMismatch, NotSolvedForm, ZeroOrder
from .linalg import SparseEchelon

LT, EQ, GT = -1, 0, 1


class Jet(NamedTuple):
    k: int
    mu: tuple

    @property
    def order(self):
        return sum(self.mu)

    def shift(self, i, by=1):
        """Jet moved by ``by`` in direction ``i`` (1-based)."""
        mu = list(self.mu)
        mu[i - 1] += by
        if mu[i - 1] < 0:
            return None
        return Jet(self.k, tuple(mu))

    def __str__(self):
        return jet_name(self)


def class_of(mu):
    """Smallest 1-based index with a nonzero entry."""
    for i, x in enumerate(mu):
        if x:
            return i + 1
    raise ZeroOrder("class of the zero multi-index is undefined")


def jet_key(j):
    return (sum(j.mu), tuple(-x for x in j.mu), j.k)


def compare_jets(u, v):
    ku, kv = jet_key(u), jet_key(v)
    return LT if ku < kv else (GT if ku > kv else EQ)


def multi_indices(n, order):
    """All multi-indices of length ``n`` and exactly ``order``."""
    out = []
    for combo in combinations_with_replacement(range(n), order):
        mu = [0] * n
        for i in combo:
            mu[i] += 1
        out.append(tuple(mu))
    return out


def multi_indices_in(n, order, dirs):
    """Multi-indices of ``order`` supported on the 1-based directions ``dirs``."""
    out = []
    for combo in combinations_with_replacement(dirs, order):
        mu = [0] * n
        for i in combo:
            mu[i - 1] += 1
        out.append(tuple(mu))
    return out


def jet_name(j, m=1):
    idx = "".join(str(i + 1) * x for i, x in enumerate(j.mu))
    head = "y" if m == 1 and j.k == 1 else f"y{j.k}"
    return f"{head}_{idx}" if idx else head


def mu_bracket(mu):
    return "[" + ",".join(str(x) for x in mu) + "]"


class LinearEquation:
    """Finite linear combination of jets with coefficients in a field."""

    __slots__ = ("terms", "field")

    def __init__(self, terms, field=QQ):
        self.field = field
        self.terms = {j: c for j, c in terms.items() if c}

    # inspection
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    @property
    def order(self):
        return max((j.order for j in self.terms), default=-1)

    @property
    def leading_jet(self):
        if not self.terms:
            raise ValueError("zero equation has no leading jet")
        return max(self.terms, key=jet_key)

    @property
    def leading_coeff(self):
        return self.terms[self.leading_jet]

    def jets(self):
        return sorted(self.terms, key=jet_key, reverse=True)

    # algebra
    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for j, c in other.terms.items():
            t[j] = t[j] + c if j in t else c
        return LinearEquation(t, self.field)

    def __neg__(self):
        return LinearEquation({j: -c for j, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return LinearEquation({j: v * c for j, v in self.terms.items()}, self.field)

    def monic(self):
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coeff)

    def prolong(self, i):
        return prolong(self, i)

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __eq__(self, other):
        if not isinstance(other, LinearEquation):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_str(self, m=1):
        if not self.terms:
            return "0"
        parts = []
        for j in self.jets():
            c = self.terms[j]
            name = jet_name(j, m)
            neg = _is_negative(c)
            a = -c if neg else c
            if a == 1:
                body = name
            else:
                body = f"{coeff_str(a)}*{name}"
            parts.append(("-" if neg else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.to_str(m=max((j.k for j in self.terms), default=1))

    def __repr__(self):
        return f"LinearEquation({self})"


def _is_negative(c):
    if isinstance(c, Fraction):
        return c < 0
    num = getattr(c, "num", None)
    if num is not None and num:
        return num.leading_coeff() < 0 and len(num.items()) == 1
    return False


def shift_terms(terms, nu):
    return {Jet(j.k, tuple(a + b for a, b in zip(j.mu, nu))): c for j, c in terms.items()}


def prolong(e, i):
    """Formal derivative of ``e`` in direction ``i`` (constant coefficients)."""
    return LinearEquation({j.shift(i): c for j, c in e.terms.items()}, e.field)


class PDSystem:
    """Linear constant-coefficient system in ``m`` unknowns and ``n`` variables.

    ``active`` lists the directions in which the system is differentiated
    (all of them unless it is a localized system).
    """

    def __init__(self, n, m, equations, field=QQ, active=None, params=()):
        self.n = n
        self.m = m
        self.field = field if isinstance(field, Field) else Field(field)
        self.params = tuple(params)
        self.active = tuple(active) if active is not None else tuple(range(1, n + 1))
        eqs = []
        for e in equations:
            if e.field != self.field:
                raise FieldMismatch(f"equation over {e.field} in a system over {self.field}")
            for j in e.terms:
                if len(j.mu) != n or not 1 <= j.k <= m:
                    raise ValueError(f"jet {j} does not fit n={n}, m={m}")
            if e:
                eqs.append(e)
        self.equations = tuple(eqs)
        self._spaces = {}

    def __len__(self):
        return len(self.equations)

    def __iter__(self):
        return iter(self.equations)

    @property
    def order(self):
        return max((e.order for e in self.equations), default=0)

    def with_equations(self, equations):
        return PDSystem(self.n, self.m, equations, self.field, self.active, self.params)

    def leading_jets(self):
        return [e.leading_jet for e in self.equations]

    def is_solved(self):
        lead = self.leading_jets()
        return len(set(lead)) == len(lead)

    def prolongation_space(self, q):
        """Echelon basis of all prolongations (active directions) of order <= q."""
        if q in self._spaces:
            return self._spaces[q]
        lower = [p for p in self._spaces if p < q]
        if lower:
            start = max(lower)
            space = self._spaces[start].copy()
        else:
            start = -1
            space = SparseEchelon(jet_key)
        for t in range(start + 1, q + 1):
            for e in self.equations:
                d = t - e.order
                if d < 0:
                    continue
                for nu in multi_indices_in(self.n, d, self.active):
                    space.add(shift_terms(e.terms, nu))
        self._spaces[q] = space
        return space

    def jets_of_order(self, s):
        return [Jet(k, mu) for mu in multi_indices_in(self.n, s, self.active) for k in range(1, self.m + 1)]

    def __eq__(self, other):
        if not isinstance(other, PDSystem):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and self.field == other.field
            and self.active == other.active
            and set(self.equations) == set(other.equations)
        )

    def __str__(self):
        return "\n".join(f"{e.to_str(self.m)} = 0" for e in self.equations)

    def __repr__(self):
        return f"PDSystem(n={self.n}, m={self.m}, {len(self.equations)} equations over {self.field})"


def reduce(e, s, order=None):
    """Normal form of ``e`` modulo all prolongations of ``s`` up to ``order(e)``."""
    if not s.is_solved():
        raise NotSolvedForm("system has repeated leading jets")
    if not e:
        return e
    q = e.order if order is None else order
    space = s.prolongation_space(q)
    return LinearEquation(space.reduce(e.terms), e.field)


def autoreduce(s):
    """Gaussian elimination on the equations, pivoting on leading jets."""
    space = SparseEchelon(jet_key)
    for e in s.equations:
        space.add(e.terms)
    eqs = [LinearEquation(r, s.field) for r in space.sorted_rows()]
    return s.with_equations(eqs)


def space_to_system(s, space):
    return s.with_equations([LinearEquation(r, s.field) for r in space.sorted_rows()])


# coordinate changes -------------------------------------------------------------


def _linear_power(row, k, n):
    """Expand (sum_l row[l] chi_l)^k as {exponent: coeff}."""
    out = {}
    support = [l for l in range(n) if row[l]]
    for combo in combinations_with_replacement(support, k):
        e = [0] * n
        for l in combo:
            e[l] += 1
        coeff = Fraction(factorial(k))
        for l in support:
            coeff = coeff / factorial(e[l]) * row[l] ** e[l]
        t = tuple(e)
        out[t] = out.get(t, 0) + coeff
    return out


def change_coordinates(s, a):
    """Substitute chi_j -> sum_l a[j][l] chi_l in every equation.

    ``a`` is an invertible n x n rational matrix.  The map is applied jet by
    jet, so it is a ring automorphism acting on each unknown's polynomial.
    """
    n = s.n
    cache = {}

    def image(mu):
        if mu in cache:
            return cache[mu]
        acc = {(0,) * n: Fraction(1)}
        for j, k in enumerate(mu):
            if not k:
                continue
            p = _linear_power(a[j], k, n)
            nxt = {}
            for e1, c1 in acc.items():
                for e2, c2 in p.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    nxt[e] = nxt.get(e, 0) + c1 * c2
            acc = {e: c for e, c in nxt.items() if c}
        cache[mu] = acc
        return acc

    eqs = []
    for e in s.equations:
        t = {}
        for j, c in e.terms.items():
            for mu, w in image(j.mu).items():
                jj = Jet(j.k, mu)
                t[jj] = t[jj] + c * w if jj in t else c * w
        eqs.append(LinearEquation(t, s.field))
    return s.with_equations(eqs)


def change_equation(e, a, n):
    s = PDSystem(n, max((j.k for j in e.terms), default=1), [e], e.field)
    out = change_coordinates(s, a).equations
    return out[0] if out else LinearEquation({}, e.field)


def count_multi_indices(n_vars, order):
    """Number of monomials of degree ``order`` in ``n_vars`` variables."""
    if n_vars == 0:
        return 1 if order == 0 else 0
    return comb(order + n_vars - 1, n_vars - 1)


# module view -------------------------------------------------------------------


def equation_to_vector(e, gens, n):
    """Read an equation as an element of A^m: {k: Poly in chi}."""
    vec = {}
    width = len(gens)
    off = width - n
    for j, c in e.terms.items():
        exp = (0,) * off + j.mu
        coeff = c if isinstance(c, Fraction) else c
        vec.setdefault(j.k, {})[exp] = coeff
    return {k: Poly(gens, t) for k, t in vec.items()}


def vector_to_equation(vec, n, field=QQ):
    """Inverse of :func:`equation_to_vector` for rational coefficients."""
    t = {}
    for k, p in vec.items():
        for e, c in p.items():
            mu = tuple(e[len(e) - n:])
            t[Jet(k, mu)] = field(c)
    return LinearEquation(t, field)


def specialize(s, values):
    """Substitute rational values for some parameters; the field drops them."""
    from .arith import RationalFunction

    unknown = [k for k in values if k not in s.field.gens]
    if unknown:
        raise ValueError(f"not a declared parameter: {', '.join(unknown)}")
    keep = tuple(g for g in s.field.gens if g not in values)
    field = Field(keep)
    eqs = []
    for e in s.equations:
        t = {}
        for j, c in e.terms.items():
            v = c.subs(values) if isinstance(c, RationalFunction) else c
            if isinstance(v, RationalFunction):
                v = RationalFunction(v.num.reorder(keep), v.den.reorder(keep)) if keep else v.constant_value()
            t[j] = field(v)
        eqs.append(LinearEquation(t, field))
    return PDSystem(s.n, s.m, eqs, field, s.active, keep)
