"""Partial localization, contraction, purity, torsion chains, parametrization.

Splitting chi = (chi', chi'') with chi' = (chi_1, ..., chi_{n-r}), the
localized system replaces every jet y_(mu', mu'') by chi^mu' y_(0, mu'') and
works over Q(params, chi').  The kernel of M -> Q(chi') (x) M is computed as a
saturation: if G is a Groebner basis of the localized module with
polynomial (cleared) elements and h is the product of the cleared
denominators, then the kernel is (I + G) : h^infinity.

All computations run in the working coordinates of the involutive system;
elements reported back to the caller are mapped to the input coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import sympy

from .arith import Field, Poly, RationalFunction, clear_denominators, poly_lcm
from .errors import NonFullClasses, NotInvolutive, ZeroDivisorInput
from .groebner import Ring, equation_to_poly, poly_to_equation
from .involution import InvolutiveSystem, characters, complete
from .jets import Jet, LinearEquation, PDSystem, autoreduce, change_equation, jet_key
from .linalg import SparseEchelon


def _xs(n):
    return tuple(f"x{i}" for i in range(1, n + 1))


def _check(inv):
    if not isinstance(inv, InvolutiveSystem):
        raise NotInvolutive("expected the output of complete()")


# localization ------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalizedSystem:
    split: int
    field: Field
    active: tuple
    system: PDSystem
    denominators: tuple
    finite_type: bool
    completed: InvolutiveSystem | None = None

    def __str__(self):
        return str(self.system)


def localize_equation(e, n, r, field):
    """Substitute y_(mu', mu'') -> chi^mu' y_(0, mu'') with chi' the first n - r variables."""
    cut = n - r
    gens = field.gens
    off = len(gens) - cut
    terms = {}
    for j, c in e.terms.items():
        mu1, mu2 = j.mu[:cut], j.mu[cut:]
        mono = RationalFunction(Poly.monomial((0,) * off + tuple(mu1), gens)) if cut else None
        value = field(c)
        if mono is not None and any(mu1):
            value = value * mono
        jj = Jet(j.k, (0,) * cut + tuple(mu2))
        terms[jj] = terms[jj] + value if jj in terms else value
    return LinearEquation(terms, field)


def local_field(params, n, r):
    return Field(tuple(params) + _xs(n)[: n - r])


def localize(inv, r=None, max_rounds=50):
    """Localized, reduced system over Q(params, chi_1..chi_{n-r})."""
    _check(inv)
    n = inv.n
    cd = characters(inv)[1]
    if r is None:
        r = cd
    if not 0 <= r <= n:
        raise ValueError(f"split {r} outside 0..{n}")
    if r == n:
        return LocalizedSystem(n, inv.field, inv.active, inv.system, (), cd == n, inv if cd == n else None)
    field = local_field(inv.field.gens, n, r)
    active = tuple(range(n - r + 1, n + 1))
    eqs = [localize_equation(e, n, r, field) for e in inv.system.equations]
    sys0 = autoreduce(PDSystem(n, inv.m, eqs, field, active, inv.system.params))
    finite = r <= cd
    completed = None
    out = sys0
    if finite:
        completed = complete(sys0, seed=inv.seed, max_rounds=max_rounds, allow_changes=False)
        out = completed.system
    dens = _row_denominators(out)
    return LocalizedSystem(r, field, active, out, dens, finite, completed)


def _row_denominators(s):
    out = []
    for e in s.equations:
        _, common = clear_denominators(list(e.terms.values()))
        if not common.is_constant() and common not in out:
            out.append(common)
    return tuple(out)


# contraction -----------------------------------------------------------------------


def delocalize_equation(eq, n, r, target):
    """Clear denominators of a localized element and read it back over ``target``.

    Returns ``(equation, common_denominator)``.
    """
    cut = n - r
    jets = list(eq.terms)
    polys, common = clear_denominators([eq.terms[j] for j in jets])
    params = target.gens
    terms = {}
    for j, p in zip(jets, polys):
        p = p.reorder(p.gens)  # gens: params + chi'
        off = len(p.gens) - cut
        groups = {}
        for e, c in p.items():
            groups.setdefault(e[off:], {})[e[:off]] = c
        for mu1, t in groups.items():
            mu = tuple(a + b for a, b in zip(tuple(mu1) + (0,) * r, j.mu))
            jj = Jet(j.k, mu)
            coeff = target(RationalFunction(Poly(params, t))) if params else target(t.get((), Fraction(0)))
            terms[jj] = terms[jj] + coeff if jj in terms else coeff
    return LinearEquation(terms, target), common


def _ring(inv_or_sys, local=0):
    s = inv_or_sys.system if isinstance(inv_or_sys, InvolutiveSystem) else inv_or_sys
    return Ring(s.n, s.m, s.field.gens, local)


def localization_kernel(system, r):
    """Groebner basis of the preimage in A^m of the kernel of M -> Q(chi') (x) M.

    Returns ``(kernel_basis, module_basis, denominators)``.
    """
    n = system.n
    base = _ring(system)
    gb_i = base.gb(list(system.equations))
    if r >= n:
        return gb_i, gb_i, ()
    loc = _ring(system, local=n - r)
    g_loc = loc.gb([loc.lift(e) for e in system.equations])
    cleared = []
    h = Poly.const(1, loc.coeff_names)
    dens = []
    for g in g_loc:
        eq, common = delocalize_equation(g, n, r, base.field)
        cleared.append(eq)
        if not common.is_constant():
            dens.append(common)
            h = poly_lcm(h, common)
    if h.is_constant():
        kernel = base.gb(gb_i + cleared)
    else:
        kernel = base.saturate(gb_i + cleared, h)
    return kernel, gb_i, tuple(dens)


@dataclass(frozen=True)
class Contraction:
    split: int
    system: PDSystem
    witnesses: tuple
    denominators: tuple
    working_witnesses: tuple = ()


def _to_input(inv, eq):
    if not inv.changed():
        return eq
    return change_equation(eq, inv.inverse_change(), inv.n)


def contract(inv, r=None):
    """Equations of the kernel of M -> Q(chi') (x) M, as a system over the input field."""
    _check(inv)
    cd = characters(inv)[1]
    if r is None:
        r = cd
    if cd < r:
        raise NonFullClasses(f"codimension {cd} < split {r}: the localized system is not of finite type")
    kernel, gb_i, dens = localization_kernel(inv.system, r)
    ring = _ring(inv)
    new = [g for g in kernel if not ring.contains(gb_i, g)]
    new = _simplify_witnesses(ring, new, gb_i)
    system = inv.system.with_equations(kernel)
    return Contraction(r, system, tuple(_to_input(inv, w) for w in new), dens, tuple(new))


def _simplify_witnesses(ring, eqs, gb_i):
    """Reduce each witness modulo the module and drop duplicates."""
    out = []
    for g in eqs:
        red = ring.reduce(g, gb_i)
        if red:
            red = red.monic()
            if red not in out:
                out.append(red)
    return sorted(out, key=lambda e: jet_key(e.leading_jet))


@dataclass(frozen=True)
class Pure:
    codim: int

    @property
    def pure(self):
        return True


@dataclass(frozen=True)
class Impure:
    codim: int
    witnesses: tuple
    working_witnesses: tuple = ()

    @property
    def pure(self):
        return False


def purity_test(inv):
    _check(inv)
    r = characters(inv)[1]
    if r >= inv.n:
        return Pure(r)
    c = contract(inv, r)
    if c.witnesses:
        return Impure(r, c.witnesses, c.working_witnesses)
    return Pure(r)


def pure_part(inv):
    """System of M / t_r(M) with r the codimension (the contraction)."""
    return contract(inv).system


# element codimension -------------------------------------------------------------


def ideal_codim(eqs, n, field, seed=0):
    """Codimension of A / (eqs) for single-unknown equations; n+1 for the unit ideal."""
    eqs = [e for e in eqs if e]
    if not eqs:
        return 0
    s = PDSystem(n, 1, eqs, field)
    for e in autoreduce(s).equations:
        if e.order == 0:
            return n + 1
    inv = complete(s, seed=seed)
    return characters(inv)[1]


def element_codim(system, g, seed=0):
    """cd(D g): codimension of A / ann(g) for g in M = A^m / (system)."""
    ring = _ring(system)
    ann = ring.annihilator(list(system.equations), g)
    return ideal_codim(ann, system.n, ring.field, seed)


# torsion chain ---------------------------------------------------------------------


@dataclass(frozen=True)
class ChainLevel:
    r: int
    generators: tuple
    codims: tuple
    elements: tuple
    gap_with_next: bool
    is_whole_module: bool = False
    is_zero: bool = False


@dataclass(frozen=True)
class TorsionChainReport:
    codim: int
    levels: tuple

    def level(self, r):
        for lv in self.levels:
            if lv.r == r:
                return lv
        raise KeyError(r)


def torsion_chain(inv, seed=0):
    """Nested kernels t_r(M) of M -> Q(chi_1..chi_{n-r}) (x) M for r = 0..n-1.

    For r below the codimension t_r(M) = M.  Each level lists generators
    (modulo the presentation), their codimensions, small probe elements
    (unknowns and first-order jets) lying in t_r but not in t_{r+1}, and
    whether t_r coincides with t_{r+1}.
    """
    _check(inv)
    s = inv.system
    n, m = s.n, s.m
    cd = characters(inv)[1]
    ring = _ring(inv)
    gb_i = ring.gb(list(s.equations))
    unit = [LinearEquation({Jet(k, (0,) * n): ring.field.one}, ring.field) for k in range(1, m + 1)]
    kernels = {}
    for r in range(n + 1):
        if r < cd:
            kernels[r] = ring.gb(unit)
        elif r == n:
            kernels[r] = gb_i
        else:
            kernels[r] = localization_kernel(s, r)[0]
    probes = list(unit)
    for k in range(1, m + 1):
        for i in inv.active:
            mu = tuple(1 if t == i - 1 else 0 for t in range(n))
            probes.append(LinearEquation({Jet(k, mu): ring.field.one}, ring.field))
    probes = [p for p in probes if not ring.contains(gb_i, p)]
    levels = []
    codim_cache = {}

    def cod(g):
        key = frozenset(g.terms.items())
        if key not in codim_cache:
            codim_cache[key] = element_codim(s, g, seed)
        return codim_cache[key]

    for r in range(n):
        k_r, k_next = kernels[r], kernels[r + 1]
        gens = _simplify_witnesses(ring, [g for g in k_r if not ring.contains(gb_i, g)], gb_i)
        gap = ring.same(k_r, k_next)
        elements = []
        for p in probes:
            if ring.contains(k_r, p) and not ring.contains(k_next, p):
                elements.append((_to_input(inv, p), cod(p)))
        levels.append(
            ChainLevel(
                r=r,
                generators=tuple(_to_input(inv, g) for g in gens),
                codims=tuple(cod(g) for g in gens),
                elements=tuple(elements),
                gap_with_next=gap,
                is_whole_module=r < cd or ring.same(k_r, ring.gb(unit)),
                is_zero=not gens,
            )
        )
    return TorsionChainReport(cd, tuple(levels))


# ideals ----------------------------------------------------------------------------


def ideal_quotient(gens, f, n=None):
    """Generators of a : (f) for polynomials in x1..xn (parameters first, if any)."""
    if not f:
        raise ZeroDivisorInput("quotient by the zero polynomial")
    n = n if n is not None else _count_x(f.gens)
    params = f.gens[: len(f.gens) - n]
    ring = Ring(n, 1, params)
    eqs = [poly_to_equation(g, n, ring.field) for g in gens]
    ann = ring.annihilator(eqs, poly_to_equation(f, n, ring.field))
    return [equation_to_poly(e, f.gens) for e in ring.gb(ann)]


def _count_x(gens):
    return sum(1 for g in gens if g.startswith("x") and g[1:].isdigit())


def ideal_system(gens, n=None):
    """Single-unknown PD system of an ideal given by polynomials."""
    n = n if n is not None else _count_x(gens[0].gens)
    params = gens[0].gens[: len(gens[0].gens) - n]
    field = Field(params)
    return PDSystem(n, 1, [poly_to_equation(g, n, field) for g in gens], field, params=params)


@dataclass(frozen=True)
class Unmixed:
    codim: int


@dataclass(frozen=True)
class Mixed:
    codim: int
    S: Poly
    P: Poly


def unmixedness_test(gens, seed=0):
    """Unmixed(r) or Mixed(S, P) with S in Q[chi'] and P not in a, S P in a."""
    s = ideal_system(gens)
    n = s.n
    inv = complete(s, seed=seed)
    verdict = purity_test(inv)
    if verdict.pure:
        return Unmixed(verdict.codim)
    r = verdict.codim
    work = verdict.working_witnesses[0]
    ring = _ring(inv)
    ann = ring.annihilator(list(inv.system.equations), work)
    S_work = _eliminate_to_first(ann, n, n - r, ring)
    gens_all = gens[0].gens
    S_eq = _to_input(inv, poly_to_equation(S_work, n, ring.field))
    P = equation_to_poly(verdict.witnesses[0], gens_all)
    S = equation_to_poly(S_eq, gens_all)
    return Mixed(r, S.primitive() if not s.field.gens else S, P.primitive() if not s.field.gens else P)


def _eliminate_to_first(eqs, n, keep, ring):
    """A nonzero element of (eqs) involving only x1..x_keep (smallest degree)."""
    from sympy.polys.orderings import ProductOrder, grevlex

    xs = ring.xs
    elim = xs[keep:]
    kept = xs[:keep]
    polys = [ring.to_expr(e, e_index={1: 1}) for e in eqs]
    order = ProductOrder((grevlex, lambda mon: mon[: len(elim)]), (grevlex, lambda mon: mon[len(elim):]))
    G = sympy.groebner(polys, *(tuple(elim) + tuple(kept)), order=order, domain=ring.domain)
    best = None
    for p in G.polys:
        if any(p.degree(x) > 0 for x in elim):
            continue
        if best is None or p.total_degree() < best.total_degree():
            best = p
    if best is None:
        raise ValueError("no element of the ideal lies in the localized variables")
    gens_all = ring.params + _xs(n)
    terms = {}
    names = [str(g) for g in best.gens]
    for monom, c in best.as_dict(native=True).items():
        mu = [0] * n
        for nm, k in zip(names, monom):
            mu[int(nm[1:]) - 1] += k
        coeff = ring._coeff_from_native(c)
        terms[tuple(mu)] = coeff
    eq = LinearEquation({Jet(1, mu): c for mu, c in terms.items()}, ring.field)
    return equation_to_poly(eq, gens_all)


# parametrization ---------------------------------------------------------------------


@dataclass(frozen=True)
class Parametrization:
    rows: tuple  # one vector (per unknown) for each free unknown
    free: tuple
    branch_conditions: tuple = ()
    gens: tuple = ()

    def column(self, k):
        """Expression of unknown k as a combination of the free functions."""
        return tuple(v[k - 1] for v in self.rows)


@dataclass(frozen=True)
class SimplificationDetected:
    witness: LinearEquation
    killer: Poly
    branch_conditions: tuple = ()


def _matrix_entries(s, gens):
    """Rows of the presentation matrix as rational functions over ``gens``."""
    n = s.n
    off = len(gens) - n
    rows = []
    for e in s.equations:
        row = {}
        for j, c in e.terms.items():
            mono = RationalFunction(Poly.monomial((0,) * off + j.mu, gens))
            if isinstance(c, RationalFunction):
                c = c.reorder(gens)
            val = mono * c
            row[j.k] = row[j.k] + val if j.k in row else val
        rows.append({k: v for k, v in row.items() if v})
    return rows


def parametrize(s, seed=0):
    """Kernel of the presentation over Q(params, chi) with polynomial rows.

    Detects torsion first (the kernel of M -> Q(chi) (x) M); a nonzero
    element there is reported with a polynomial that kills it.
    """
    n, m = s.n, s.m
    params = s.field.gens
    gens = params + _xs(n)
    kernel, gb_i, dens = localization_kernel(s, 0)
    ring = _ring(s)
    witnesses = _simplify_witnesses(ring, [g for g in kernel if not ring.contains(gb_i, g)], gb_i)
    if witnesses:
        w = witnesses[0]
        ann = ring.gb(ring.annihilator(list(s.equations), w))
        killer = min((equation_to_poly(a, gens) for a in ann), key=lambda p: (p.total_degree(), len(p.items())))
        return SimplificationDetected(w, killer.monic())
    rows = _matrix_entries(s, gens)
    ech = SparseEchelon(key=lambda k: k)
    for row in rows:
        ech.add(row)
    pivots = ech.pivots()
    free = [k for k in range(1, m + 1) if k not in pivots]
    one = RationalFunction(Poly.const(1, gens))
    vectors = []
    for f in free:
        vec = [RationalFunction(Poly(gens))] * m
        vec[f - 1] = one
        for p, row in ech.rows.items():
            if f in row:
                vec[p - 1] = -row[f]
        polys, _ = clear_denominators(vec)
        polys = _primitive(polys, f)
        vectors.append(tuple(polys))
    conditions = _branch_conditions(ech.pivot_values, vectors, params, n)
    return Parametrization(tuple(vectors), tuple(free), conditions, gens)


def _primitive(polys, f):
    from .arith import poly_gcd

    g = Poly(polys[0].gens)
    for p in polys:
        g = poly_gcd(g, p)
    if not g.is_constant():
        polys = [p.exquo(g) for p in polys]
    lead = polys[f - 1]
    if lead:
        c = lead.leading_coeff()
        polys = [p * (1 / c) for p in polys]
    return polys


def _param_factors(p, params):
    """Irreducible factors of ``p`` that involve parameters only."""
    if not params or p.is_constant():
        return []
    expr = sympy.sympify(str(p).replace("^", "**"))
    out = []
    for fac, _ in sympy.factor_list(expr)[1]:
        if fac.free_symbols and {str(s) for s in fac.free_symbols} <= set(params):
            out.append(fac)
    return out


def _branch_conditions(pivot_values, vectors, params, n):
    if not params:
        return ()
    found = []
    for v in pivot_values:
        if isinstance(v, RationalFunction):
            for part in (v.num, v.den):
                found.extend(_param_factors(part, params))
    if n == 1 and vectors:
        # a common root of all entries of a column signals a possible simplification
        x = sympy.Symbol("x1")
        for vec in vectors:
            entries = [sympy.sympify(str(p).replace("^", "**")) for p in vec if p]
            common = None
            for i in range(len(entries)):
                for j in range(i + 1, len(entries)):
                    res = sympy.resultant(entries[i], entries[j], x)
                    if res == 0:
                        continue
                    facs = {f for f, _ in sympy.factor_list(res)[1] if f.free_symbols}
                    common = facs if common is None else common & facs
            if common:
                found.extend(sorted(common, key=str))
    out = []
    for f in found:
        f = sympy.Poly(f).monic().as_expr() if f.free_symbols else f
        text = f"{f} != 0"
        if text not in out:
            out.append(text)
    return tuple(sorted(out))


def check_parametrization(s, par):
    """True iff every equation vanishes identically on every parametrizing vector."""
    rows = _matrix_entries(s, par.gens)
    for row in rows:
        for vec in par.rows:
            acc = RationalFunction(Poly(par.gens))
            for k, c in row.items():
                acc = acc + c * RationalFunction(vec[k - 1])
            if acc:
                return False
    return True
