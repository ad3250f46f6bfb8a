"""Inverse systems: finite-dimensional spaces of sections and their derivations.

A section is a linear functional on the module M; on jets it reads
``E = sum a^mu f_mu`` with ``f_mu`` the value on ``y_mu``.  For a system of
finite type M is spanned by the parametric jets, so a section is a vector of
values on that basis.  The derivation ``d_i`` acts by the downward shift
``(d_i E)_mu = E_(mu + 1_i)`` (Macaulay's sign, see ``DERIVATION_SIGN``).

Matrices use the column convention: ``X[i]`` is multiplication by chi_i on M
in the parametric basis (column u holds the normal form of u shifted by 1_i)
and ``D[i] = X[i]^T`` is the action of d_i on sections in the dual basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product

import sympy

from .analysis import LocalizedSystem, _param_factors
from .arith import Field, Poly, RationalFunction, clear_denominators
from .errors import InfiniteDimensional, NonRationalEigenvalue, NotInvariant
from .groebner import Ring
from .involution import InvolutiveSystem, characters
from .jets import Jet, PDSystem, jet_key, multi_indices, multi_indices_in
from .linalg import SparseEchelon, identity, matmul, matvec, nullspace, rref, transpose

# +1: Macaulay's convention (downward shift); -1 would give the Spencer operator.
DERIVATION_SIGN = 1


# sections ---------------------------------------------------------------------


def a_name(j, m=1):
    idx = ",".join(str(i + 1) for i, x in enumerate(j.mu) for _ in range(x))
    head = "a" if m == 1 else f"a{j.k}"
    return f"{head}^({idx})" if idx else f"{head}^0"


def mu_key(j, m=1):
    idx = "(" + ",".join(str(i + 1) for i, x in enumerate(j.mu) for _ in range(x)) + ")"
    return idx if m == 1 else f"{j.k}:{idx}"


@dataclass(frozen=True)
class ModularEquation:
    """Values of a section on every jet of order <= ``order`` (zeros omitted)."""

    coeffs: dict
    order: int
    field: Field = dc_field(default_factory=Field)
    n: int = 0
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {j: c for j, c in self.coeffs.items() if c and j.order <= self.order})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, ModularEquation):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, frozenset(self.coeffs.items())))

    def __add__(self, other):
        order = min(self.order, other.order)
        out = {j: c for j, c in self.coeffs.items() if j.order <= order}
        for j, c in other.coeffs.items():
            if j.order <= order:
                out[j] = out[j] + c if j in out else c
        return ModularEquation(out, order, self.field, self.n, self.m)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return ModularEquation({j: v * c for j, v in self.coeffs.items()}, self.order, self.field, self.n, self.m)

    def truncate(self, q):
        return ModularEquation(self.coeffs, min(q, self.order), self.field, self.n, self.m)

    def value(self, terms):
        """Contract against a jet combination (an equation)."""
        acc = self.field.zero
        for j, c in terms.items():
            if j.order > self.order:
                raise ValueError(f"jet {j} is beyond the known order {self.order}")
            v = self.coeffs.get(j)
            if v:
                acc = acc + c * v
        return acc

    def terms(self):
        return sorted(self.coeffs.items(), key=lambda kv: jet_key(kv[0]))

    def to_json(self):
        return {"terms": {mu_key(j, self.m): str(c) for j, c in self.terms()}, "order": self.order}

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for j, c in self.terms():
            name = a_name(j, self.m)
            if c == 1:
                parts.append(f"+ {name}")
            elif c == -1:
                parts.append(f"- {name}")
            elif isinstance(c, Fraction) and c < 0:
                parts.append(f"- {-c}*{name}")
            elif isinstance(c, Fraction):
                parts.append(f"+ {c}*{name}")
            else:
                sign, text = ("-", str(-c)) if str(c).startswith("-") else ("+", str(c))
                if not text.replace("*", "").replace("^", "").isalnum():
                    text = f"({text})"
                parts.append(f"{sign} {text}*{name}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"ModularEquation({self})"


def derivate(E, i):
    """d_i E: the value at mu is the value of E at mu + 1_i."""
    out = {}
    for j, c in E.coeffs.items():
        if j.mu[i - 1] > 0:
            out[j.shift(i, -1)] = c * DERIVATION_SIGN
    return ModularEquation(out, E.order - 1, E.field, E.n, E.m)


def derivate_by(E, gamma):
    for i, k in enumerate(gamma, start=1):
        for _ in range(k):
            E = derivate(E, i)
    return E


# dual space -----------------------------------------------------------------------


@dataclass(frozen=True)
class MaximalPoint:
    values: tuple
    directions: tuple

    def __str__(self):
        parts = []
        for i, c in sorted(zip(self.directions, self.values), reverse=True):
            if c:
                parts.append(f"d_{i} - {_paren(c)}" if not _negative(c) else f"d_{i} + {_paren(-c)}")
            else:
                parts.append(f"d_{i}")
        return "(" + ", ".join(parts) + ")"

    def to_json(self):
        return {"c": [str(c) for c in self.values], "directions": list(self.directions)}


def _paren(c):
    s = str(c)
    return s if all(ch not in s for ch in "+- ") or s.startswith("(") else f"({s})"


def _negative(c):
    if isinstance(c, Fraction):
        return c < 0
    return False


@dataclass(frozen=True)
class DualSpace:
    field: Field
    basis: tuple  # parametric jets, ascending
    directions: tuple  # active directions
    X: tuple  # multiplication matrices on M, one per direction
    D: tuple  # derivation matrices on sections, one per direction
    origin: object
    order: int
    n: int
    m: int

    @property
    def dim(self):
        return len(self.basis)

    @property
    def Dmat(self):
        return self.D

    def index(self, jet):
        return self.basis.index(jet)

    def zero(self):
        return [self.field.zero] * self.dim

    def unit(self, k):
        v = self.zero()
        v[k] = self.field.one
        return v

    def act(self, i, vec):
        """d_i on a section given by its coordinates."""
        return matvec(self.D[self.directions.index(i)], vec)

    def normal_form(self, terms):
        return _nf(self.origin, terms)

    def section(self, vec, order=None):
        """Modular equation of a coordinate vector, listing values up to ``order``."""
        order = self.order if order is None else order
        coeffs = {}
        for s in range(order + 1):
            for mu in multi_indices_in(self.n, s, self.directions):
                for k in range(1, self.m + 1):
                    j = Jet(k, mu)
                    nf = self.normal_form({j: self.field.one})
                    acc = self.field.zero
                    for b, c in nf.items():
                        if b in self._pos and vec[self._pos[b]]:
                            acc = acc + c * vec[self._pos[b]]
                    if acc:
                        coeffs[j] = acc
        return ModularEquation(coeffs, order, self.field, self.n, self.m)

    def coords(self, E):
        """Coordinates of a section from its values on the parametric jets."""
        return [E.coeffs.get(j, self.field.zero) for j in self.basis]

    @property
    def _pos(self):
        return {j: k for k, j in enumerate(self.basis)}


def _nf(src, terms):
    return src.normal_form(terms)


def _source(src):
    if isinstance(src, LocalizedSystem):
        if not src.finite_type or src.completed is None:
            raise InfiniteDimensional(f"localized system at split {src.split} is not of finite type")
        return src.completed
    if isinstance(src, InvolutiveSystem):
        return src
    raise TypeError("build_dual expects an involutive or a localized system")


def build_dual(src):
    inv = _source(src)
    n, m, active = inv.n, inv.m, inv.active
    # finite type: every jet of the top order is principal
    pri = inv.principal_jets()
    if any(j not in pri for j in inv.system.jets_of_order(inv.order)) and inv.order > 0:
        raise InfiniteDimensional("the symbol does not vanish at the involution order")
    if inv.order == 0 and any(j not in pri for j in inv.system.jets_of_order(1)):
        raise InfiniteDimensional("the symbol does not vanish")
    basis = tuple(j for j in inv.parametric_jets() if j.order < max(inv.order, 1))
    field = inv.field
    pos = {j: k for k, j in enumerate(basis)}
    X, D = [], []
    for i in active:
        mat = [[field.zero] * len(basis) for _ in basis]
        for u_idx, u in enumerate(basis):
            nf = inv.normal_form({u.shift(i): field.one})
            for v, c in nf.items():
                if v not in pos:
                    raise InfiniteDimensional(f"normal form leaves the parametric basis at {v}")
                mat[pos[v]][u_idx] = c
        X.append(tuple(tuple(r) for r in mat))
        D.append(tuple(tuple(r) for r in transpose(mat)) if basis else ())
    return DualSpace(field, basis, active, tuple(X), tuple(D), inv, inv.order, n, m)


def commutes(R):
    for a in range(len(R.D)):
        for b in range(a + 1, len(R.D)):
            A, B = [list(r) for r in R.D[a]], [list(r) for r in R.D[b]]
            if matmul(A, B) != matmul(B, A):
                return False
    return True


# eigen-analysis ----------------------------------------------------------------------


def _sym_domain(field):
    from .groebner import _domain

    return _domain(field.gens)


def _to_sympy(c, field):
    if isinstance(c, Fraction):
        return sympy.Rational(c.numerator, c.denominator)
    return sympy.sympify(f"({c.num})/({c.den})".replace("^", "**"))


def _from_sympy(expr, field):
    expr = sympy.together(sympy.sympify(expr))
    num, den = sympy.fraction(expr)
    if not field.gens:
        return Fraction(int(num), 1) / Fraction(int(den), 1) if den != 1 else Fraction(sympy.Rational(num).p, sympy.Rational(num).q)
    syms = sympy.symbols(" ".join(field.gens), seq=True)
    pn = _sympy_poly(num, syms, field.gens)
    pd = _sympy_poly(den, syms, field.gens)
    return field(RationalFunction(pn, pd))


def _sympy_poly(expr, syms, gens):
    p = sympy.Poly(expr, *syms, domain="QQ")
    return Poly(gens, {tuple(e): Fraction(int(c.p), int(c.q)) for e, c in p.terms()})


def _restrict(X, B):
    """Matrix of X on the invariant subspace spanned by the columns B."""
    k = len(B)
    if not k:
        return []
    cols = []
    for b in B:
        img = matvec(X, b)
        cols.append(_coords_in(B, img))
    return transpose(cols)


def _coords_in(B, v):
    """Coordinates of v in the span of the vectors B (exact solve)."""
    mat = transpose([list(b) for b in B])
    aug = [row + [x] for row, x in zip(mat, v)]
    rows, pivots = rref(aug, len(B) + 1)
    if len(B) in pivots:
        raise NotInvariant("vector is not in the span")
    out = [v[0] * 0] * len(B)
    for row, p in zip(rows, pivots):
        out[p] = row[len(B)]
    return out


def _eigenvalues(A, field):
    """Roots in F of the characteristic polynomial of A (with multiplicities)."""
    lam = sympy.Symbol("__lam")
    mat = sympy.Matrix([[_to_sympy(c, field) for c in row] for row in A])
    cp = mat.charpoly(lam).as_expr()
    dom = _sym_domain(field)
    poly = sympy.Poly(sympy.together(cp), lam, domain=dom)
    roots = []
    for fac, mult in poly.factor_list()[1]:
        if fac.degree() > 1:
            shown = str(fac.as_expr()).replace("__lam", "lambda")
            raise NonRationalEigenvalue(f"irreducible factor {shown} of degree {fac.degree()}")
        a, b = fac.all_coeffs()
        roots.append((_from_sympy(-dom.to_sympy(b) / dom.to_sympy(a), field), mult))
    return roots


def _kernel(mats, dim, field):
    rows = [list(r) for M in mats for r in M]
    if not rows:
        return [[field.one if i == j else field.zero for j in range(dim)] for i in range(dim)]
    return nullspace(rows, dim)


def _shifted(M, c, field):
    n = len(M)
    return [[M[r][k] - (c if r == k else field.zero) for k in range(n)] for r in range(n)]


def _power(M, k):
    out = identity(len(M), M[0][0] * 0 + 1, M[0][0] * 0)
    for _ in range(k):
        out = matmul(out, M)
    return out


def _primary_decomposition(R):
    """List of (values, basis of the generalized eigenspace on M)."""
    field = R.field
    dim = R.dim
    if not dim:
        return []
    parts = [((), [[field.one if i == j else field.zero for j in range(dim)] for i in range(dim)])]
    for X in R.X:
        X = [list(r) for r in X]
        nxt = []
        for vals, B in parts:
            A = _restrict(X, B)
            for c, mult in _eigenvalues(A, field):
                N = _power(_shifted(A, c, field), mult)
                ker = nullspace(N, len(B))
                W = [_combine(B, k) for k in ker]
                nxt.append((vals + (c,), W))
        parts = nxt
    return parts


def _combine(B, coeffs):
    out = None
    for c, b in zip(coeffs, B):
        if c:
            term = [c * x for x in b]
            out = term if out is None else [p + q for p, q in zip(out, term)]
    return out if out is not None else [B[0][0] * 0] * len(B[0])


def _sort_points(parts):
    return sorted(parts, key=lambda p: tuple(str(v) for v in p[0]))


def maximal_points(R):
    return [MaximalPoint(vals, R.directions) for vals, _ in _sort_points(_primary_decomposition(R))]


def primary_components(R):
    """Generalized eigenspaces on M, keyed by maximal point, as coordinate vectors."""
    return [(MaximalPoint(v, R.directions), B) for v, B in _sort_points(_primary_decomposition(R))]


def socle(R, p):
    """Basis of soc_p(M) = common kernel of chi_i - c_i on M (coordinates in the parametric basis)."""
    mats = [_shifted([list(r) for r in X], c, R.field) for X, c in zip(R.X, p.values)]
    return nullspace([r for M in mats for r in M], R.dim) if R.dim else []


def socle_jets(R, p):
    """Socle basis vectors written as jet combinations."""
    return [{R.basis[k]: c for k, c in enumerate(v) if c} for v in socle(R, p)]


def radical_image(R, p):
    """Spanning vectors of m_p R = sum of the images of d_i - c_i."""
    out = []
    for D, c in zip(R.D, p.values):
        M = _shifted([list(r) for r in D], c, R.field)
        out.extend(list(col) for col in transpose(M))
    return out


def top_component(R, p):
    """Basis of a complement of m_p R in R, chosen greedily from the highest basis section."""
    if not R.dim:
        return []
    span = SparseEchelon(key=lambda k: k)
    for v in radical_image(R, p):
        span.add({k: x for k, x in enumerate(v) if x})
    chosen = []
    for k in reversed(range(R.dim)):
        if span.add({k: R.field.one}) is not None:
            chosen.append(R.unit(k))
    chosen.reverse()
    if len(chosen) != len(socle(R, p)):
        raise AssertionError("top and socle dimensions differ")
    return chosen


# generators ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Generators:
    count: int
    vectors: tuple
    sections: tuple
    points: tuple
    socle_dims: tuple
    depth: int
    branch_conditions: tuple = ()


def closure(R, vectors):
    """Echelon basis of the span of all derivates of ``vectors`` and the number of rounds used."""
    ech = SparseEchelon(key=lambda k: -k)
    frontier = []
    for v in vectors:
        if ech.add({k: x for k, x in enumerate(v) if x}) is not None:
            frontier.append(list(v))
    rounds = 0
    while frontier and len(ech) < R.dim:
        nxt = []
        for v in frontier:
            for i in R.directions:
                w = R.act(i, v)
                if ech.add({k: x for k, x in enumerate(w) if x}) is not None:
                    nxt.append(w)
        if nxt:
            rounds += 1
        frontier = nxt
    return ech, rounds


def generation_check(R, vectors):
    """True iff the derivates of the given sections span R."""
    vectors = [_as_vector(R, v) for v in vectors]
    ech, _ = closure(R, vectors)
    return len(ech) == R.dim


def derivate_depth(R, vectors):
    vectors = [_as_vector(R, v) for v in vectors]
    ech, rounds = closure(R, vectors)
    return rounds


def _as_vector(R, v):
    if isinstance(v, ModularEquation):
        return R.coords(v)
    return list(v)


def min_generators(R, order=None):
    comps = primary_components(R)
    tops = []
    socles = []
    for p, B in comps:
        tops.append(top_component(R, p))
        socles.append(len(socle(R, p)))
    g = max((len(t) for t in tops), default=0)
    vectors = []
    for j in range(g):
        acc = R.zero()
        for t in tops:
            if len(t) > j:
                acc = [x + y for x, y in zip(acc, t[j])]
        vectors.append(acc)
    if not generation_check(R, vectors):
        vectors = _projected_lifts(R, comps, tops, g)
    if not generation_check(R, vectors):
        raise AssertionError("generator lifts failed the Nakayama check")
    sections = tuple(R.section(v, order) for v in vectors)
    return Generators(
        g,
        tuple(tuple(v) for v in vectors),
        sections,
        tuple(p for p, _ in comps),
        tuple(socles),
        derivate_depth(R, vectors) if vectors else 0,
        _point_conditions(R, [p for p, _ in comps]),
    )


def _projected_lifts(R, comps, tops, g):
    """Project each top vector onto its primary component of R before summing."""
    field = R.field
    # primary components of R are the generalized eigenspaces of the D family
    dual_parts = []
    for p, _ in comps:
        mats = [_power(_shifted([list(r) for r in D], c, field), R.dim) for D, c in zip(R.D, p.values)]
        dual_parts.append(nullspace([r for M in mats for r in M], R.dim))
    all_basis = [v for part in dual_parts for v in part]
    vectors = []
    for j in range(g):
        acc = R.zero()
        for idx, t in enumerate(tops):
            if len(t) <= j:
                continue
            coords = _coords_in(all_basis, t[j])
            start = sum(len(part) for part in dual_parts[:idx])
            piece = _combine(dual_parts[idx], coords[start:start + len(dual_parts[idx])])
            acc = [x + y for x, y in zip(acc, piece)]
        vectors.append(acc)
    return vectors


def _point_conditions(R, points):
    """Parameter conditions keeping distinct maximal points apart."""
    params = tuple(g for g in R.field.gens if not (g.startswith("x") and g[1:].isdigit()))
    if not params:
        return ()
    out = set()
    for a in range(len(points)):
        for b in range(a + 1, len(points)):
            for u, v in zip(points[a].values, points[b].values):
                d = u - v
                if not d:
                    continue
                num = d.num if isinstance(d, RationalFunction) else None
                if num is None:
                    continue
                for f in _param_factors(num, params):
                    f = sympy.Poly(f).monic().as_expr()
                    out.add(f"{f} != 0")
    return tuple(sorted(out))


# truncated section spaces ---------------------------------------------------------------


@dataclass(frozen=True)
class SectionSpace:
    """R_q: sections of a system restricted to jets of order <= q."""

    n: int
    m: int
    q: int
    field: Field
    jets: tuple  # all jets of order <= q, ascending
    equations: tuple  # echelon rows of the order-q equations (dicts)
    parametric: tuple
    vectors: tuple  # one section per parametric jet: {jet: value}

    @property
    def dim(self):
        return len(self.vectors)

    def contains(self, section):
        for row in self.equations:
            acc = self.field.zero
            for j, c in row.items():
                v = section.get(j)
                if v:
                    acc = acc + c * v
            if acc:
                return False
        return True

    def as_modular(self, k):
        return ModularEquation(dict(self.vectors[k]), self.q, self.field, self.n, self.m)


def section_space(system, q):
    """Sections of order q of the module presented by ``system`` (input coordinates)."""
    s = system.system if isinstance(system, InvolutiveSystem) and not system.changed() else system
    if isinstance(s, InvolutiveSystem):
        raise ValueError("pass the input system; the involutive one uses changed coordinates")
    ring = Ring(s.n, s.m, s.field.gens)
    gb = ring.gb(list(s.equations))
    full = PDSystem(s.n, s.m, gb, s.field, params=s.params)
    space = full.prolongation_space(q)
    jets = tuple(sorted((Jet(k, mu) for t in range(q + 1) for mu in multi_indices(s.n, t) for k in range(1, s.m + 1)), key=jet_key))
    piv = space.pivots()
    par = tuple(j for j in jets if j not in piv)
    vectors = []
    for v in par:
        vec = {}
        for u in jets:
            nf = space.reduce({u: s.field.one})
            c = nf.get(v)
            if c:
                vec[u] = c
        vectors.append(vec)
    rows = tuple(dict(r) for r in space.sorted_rows())
    return SectionSpace(s.n, s.m, q, s.field, jets, rows, par, tuple(vectors))


@dataclass(frozen=True)
class Sum:
    dim: int


@dataclass(frozen=True)
class ProperSubspace:
    defect: int


def subsystem_sum(R1, R2, R):
    """Whether two subsystems span R.

    Accepts either :class:`SectionSpace` objects (each must be a subsystem of
    R at the same order) or coordinate vectors inside a :class:`DualSpace`
    (each span must be closed under the derivations).
    """
    if isinstance(R, SectionSpace):
        vecs = []
        for part in (R1, R2):
            for v in part.vectors:
                if not R.contains(v):
                    raise NotInvariant("a section of the subsystem is not a section of the system")
                vecs.append(v)
        ech = SparseEchelon(key=jet_key)
        for v in vecs:
            ech.add(v)
        rank = len(ech)
        return Sum(rank) if rank == R.dim else ProperSubspace(R.dim - rank)
    vecs = []
    for part in (R1, R2):
        part = [list(v) for v in part]
        ech = SparseEchelon(key=lambda k: -k)
        for v in part:
            ech.add({k: x for k, x in enumerate(v) if x})
        for v in part:
            for i in R.directions:
                w = R.act(i, v)
                if ech.reduce({k: x for k, x in enumerate(w) if x}):
                    raise NotInvariant(f"subspace is not closed under d_{i}")
        vecs.extend(part)
    ech = SparseEchelon(key=lambda k: -k)
    for v in vecs:
        ech.add({k: x for k, x in enumerate(v) if x})
    rank = len(ech)
    return Sum(rank) if rank == R.dim else ProperSubspace(R.dim - rank)


# delocalization ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Delocalization:
    equations: tuple  # (alpha', ModularEquation) pairs
    delta: int
    tau: int
    qprime: int
    cleared: ModularEquation
    denominator: object


def _local_values(R, vec, order):
    """Values of a localized section on the active jets up to ``order``."""
    return R.section(vec, order)


def delocalize(R, vec, q, order=None, degrees=None):
    """n-dimensional modular equations E_alpha' from a localized section.

    ``R`` is the dual space of the localized system, ``vec`` the section's
    coordinates, ``q`` the order of the original involutive system.  The
    equations are returned for every alpha' of total degree in ``degrees``
    (default: just q'), each listing terms of induced order <= ``order``
    (default q' + q + 1).
    """
    inv = R.origin
    n = R.n
    cut = n - len(R.directions)
    tau = derivate_depth(R, [vec])
    # values along the active jets; the order bound covers every term used below
    probe = R.section(vec, max(R.order, 1))
    polys, common = clear_denominators(list(probe.coeffs.values())) if probe.coeffs else ([], None)
    delta = _delta(probe, polys, cut)
    qprime = q + delta + tau
    if degrees is None:
        degrees = (qprime,)
    top = max(degrees)
    order = qprime + q + 1 if order is None else order
    local = R.section(vec, order)
    jets = list(local.coeffs)
    polys, common = clear_denominators([local.coeffs[j] for j in jets]) if jets else ([], None)
    target = Field(tuple(g for g in R.field.gens[: len(R.field.gens) - cut]))
    expanded = {}
    for j, p in zip(jets, polys):
        off = len(p.gens) - cut
        for e, c in p.items():
            lam = tuple(e[off:])
            params = e[:off]
            coeff = target(RationalFunction(Poly(target.gens, {params: c}))) if target.gens else c
            expanded.setdefault(j, []).append((lam, coeff))
    out = []
    for d in sorted(set(degrees)):
        for alpha in multi_indices(cut, d):
            coeffs = {}
            for j, items in expanded.items():
                mu2 = j.mu[cut:]
                for lam, c in items:
                    mu1 = tuple(a - b for a, b in zip(alpha, lam))
                    if min(mu1, default=0) < 0:
                        continue
                    jj = Jet(j.k, mu1 + tuple(mu2))
                    coeffs[jj] = coeffs[jj] + c if jj in coeffs else c
            if coeffs:
                out.append((alpha, ModularEquation(coeffs, order, target, n, R.m)))
    cleared = ModularEquation(dict(zip(jets, polys)), order, R.field, n, R.m)
    return Delocalization(tuple(out), delta, tau, qprime, cleared, common)


def _delta(probe, polys, cut):
    best = None
    for j, p in zip(probe.coeffs, polys):
        off = len(p.gens) - cut
        for e in p.terms:
            d = sum(e[off:]) - j.order
            best = d if best is None else max(best, d)
    return 0 if best is None else best


def alpha_name(alpha):
    return "".join(str(i + 1) * k for i, k in enumerate(alpha))


def is_section(system, E, upto=None):
    """Check a modular equation against the system and its prolongations."""
    upto = E.order if upto is None else upto
    ring = Ring(system.n, system.m, system.field.gens)
    gb = ring.gb(list(system.equations))
    full = PDSystem(system.n, system.m, gb, system.field, params=system.params)
    space = full.prolongation_space(upto)
    for row in space.rows.values():
        acc = E.field.zero
        for j, c in row.items():
            v = E.coeffs.get(j)
            if v:
                acc = acc + c * v
        if acc:
            return False
    return True


def derivate_generation_check(Es, q, system):
    """True iff the derivates of ``Es`` restricted to order q span all order-q sections."""
    R = section_space(system, q)
    if not Es:
        return R.dim == 0
    ech = SparseEchelon(key=jet_key)
    for E in Es:
        n = len(next(iter(E.coeffs)).mu) if E.coeffs else system.n
        for t in range(E.order + 1):
            for gamma in multi_indices(n, t):
                F = derivate_by(E, gamma)
                if F.order < q and F.coeffs:
                    # values above F.order are unknown; only complete restrictions count
                    continue
                vec = {j: c for j, c in F.coeffs.items() if j.order <= q}
                if not vec:
                    continue
                if not R.contains(vec):
                    return False
                ech.add(vec)
    for v in R.vectors:
        if ech.reduce(v):
            return False
    return True
