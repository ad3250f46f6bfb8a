"""Involution by classes: test, completion, characters, Hilbert dimensions.

An involutive system of order ``q`` is stored as the reduced echelon basis of
all consequences of order ``<= q`` (lower-order equations and their
prolongations included), so parametric jets can be read off directly.
Classes are taken relative to the active directions: in a localized system
differentiated along ``(d_{n-r+1}, ..., d_n)`` the first active direction has
relative class 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .arith import Poly, RationalFunction, clear_denominators
from .errors import MaxRoundsExceeded, NonGenericSeed, NotInvolutive
from .jets import (
    Jet,
    LinearEquation,
    PDSystem,
    autoreduce,
    change_coordinates,
    class_of,
    count_multi_indices,
    jet_key,
    prolong,
    shift_terms,
    space_to_system,
)
from .linalg import SparseEchelon, identity, inverse, matmul

COORD_TRIES = 5
COORD_RANGE = 3


def multiplicative_vars(cls, n, lower_order=False):
    """Multiplicative directions of an equation of class ``cls``: d_1 .. d_cls."""
    if lower_order:
        return set()
    if not 1 <= cls <= n:
        raise ValueError(f"class {cls} outside 1..{n}")
    return set(range(1, cls + 1))


def relative_class(s, mu):
    """Class of ``mu`` counted among the active directions of ``s``."""
    return s.active.index(class_of(mu)) + 1


def _multiplicative(s, e, q):
    if e.order < q:
        return ()
    if e.order == 0:
        return s.active
    c = class_of(e.leading_jet.mu)
    return tuple(d for d in s.active if d <= c)


def _nonmultiplicative(s, e, q):
    if e.order < q:
        return s.active
    if e.order == 0:
        return ()
    c = class_of(e.leading_jet.mu)
    return tuple(d for d in s.active if d > c)


@dataclass(frozen=True)
class Verdict:
    involutive: bool
    obstructions: tuple = ()

    def __bool__(self):
        return self.involutive


def involution_test(s):
    """Check that nonmultiplicative prolongations lie in the span of the multiplicative ones."""
    s = autoreduce(s)
    q = s.order
    span = SparseEchelon(jet_key)
    for e in s.equations:
        span.add(e.terms)
        for d in _multiplicative(s, e, q):
            span.add(prolong(e, d).terms)
    found = []
    for e in s.equations:
        for d in _nonmultiplicative(s, e, q):
            nf = span.reduce(prolong(e, d).terms)
            if nf:
                found.append(LinearEquation(nf, s.field))
    if found:
        return Verdict(False, tuple(found))
    return Verdict(True)


def class_profile(s):
    """Counts of top-order leading jets per relative class, highest class first."""
    q = s.order
    counts = [0] * len(s.active)
    for e in s.equations:
        if e.order == q:
            counts[relative_class(s, e.leading_jet.mu) - 1] += 1
    return tuple(reversed(counts))


@dataclass(frozen=True)
class InvolutiveSystem:
    """Completed system with its class data.

    ``system`` is expressed in the working coordinates obtained from the input
    by ``change`` (chi_j -> sum_l change[j][l] chi_l); ``change`` is the
    identity when no regularizing change was needed.
    """

    system: PDSystem
    order: int
    change: tuple
    seed: int = 0
    rounds: int = 0
    log: tuple = dc_field(default=(), compare=False)

    @property
    def n(self):
        return self.system.n

    @property
    def m(self):
        return self.system.m

    @property
    def field(self):
        return self.system.field

    @property
    def active(self):
        return self.system.active

    @property
    def equations(self):
        return self.system.equations

    def top_equations(self):
        return [e for e in self.system.equations if e.order == self.order]

    def classes(self):
        """Relative class of every top-order equation, in storage order."""
        return [relative_class(self.system, e.leading_jet.mu) for e in self.top_equations()]

    def class_counts(self):
        """Number of top-order equations of each class, indexed from class 1."""
        counts = [0] * len(self.active)
        for c in self.classes():
            counts[c - 1] += 1
        return tuple(counts)

    def multiplicative(self, e):
        return set(_multiplicative(self.system, e, self.order))

    def changed(self):
        return any(
            self.change[i][j] != (1 if i == j else 0)
            for i in range(len(self.change))
            for j in range(len(self.change))
        )

    def inverse_change(self):
        return tuple(tuple(r) for r in inverse([list(r) for r in self.change]))

    def principal_jets(self):
        return {e.leading_jet for e in self.system.equations}

    def parametric_jets(self, up_to=None):
        """Parametric jets of order <= up_to (default: the system order), ascending."""
        top = self.order if up_to is None else up_to
        if top > self.order:
            raise ValueError("parametric jets above the system order need prolongation")
        pri = self.principal_jets()
        out = []
        for s in range(top + 1):
            out.extend(j for j in self.system.jets_of_order(s) if j not in pri)
        return sorted(out, key=jet_key)

    def echelon(self):
        return self.system.prolongation_space(self.order)

    def normal_form(self, terms, order=None):
        """Reduce a jet combination modulo the system (prolonged to the needed order)."""
        q = max((j.order for j in terms), default=0) if order is None else order
        q = max(q, self.order)
        return self.system.prolongation_space(q).reduce(terms)


def _random_change(rng, n, active):
    a = identity(n)
    for i, j in ((i, j) for i in active for j in active if j > i):
        a[i - 1][j - 1] = Fraction(rng.randint(-COORD_RANGE, COORD_RANGE))
    return a


def _closure(s, q):
    return space_to_system(s, s.prolongation_space(q))


def complete(s, seed=0, max_rounds=50, allow_changes=True, max_order=None):
    """Complete ``s`` to an involutive system.

    Integrability conditions (obstructions whose normal form drops in order)
    are added and the system re-reduced.  When every obstruction is of order
    q + 1, seeded unipotent integer coordinate changes are tried first and
    kept only if they strictly increase the top-order class profile;
    otherwise the system is prolonged to order q + 1.
    """
    n = s.n
    rng = random.Random(seed)
    total = identity(n)
    cur = autoreduce(s)
    # work at order >= 1 so that every top-order equation has a class
    q = max(cur.order, 1)
    cur = _closure(cur, q)
    log = []
    rejected = False
    for rnd in range(1, max_rounds + 1):
        verdict = involution_test(cur)
        if verdict.involutive:
            log.append(f"round {rnd}: involutive at order {q}")
            return InvolutiveSystem(cur, q, _freeze(total), seed, rnd, tuple(log))
        low = [e for e in verdict.obstructions if e.order <= q]
        if low:
            log.append(f"round {rnd}: {len(low)} integrability condition(s) of order <= {q}")
            cur = _closure(autoreduce(cur.with_equations(cur.equations + tuple(low))), q)
            continue
        if allow_changes:
            base = class_profile(cur)
            accepted = None
            for _ in range(COORD_TRIES):
                a = _random_change(rng, n, cur.active)
                trial = _closure(autoreduce(change_coordinates(cur, a)), q)
                if class_profile(trial) > base:
                    accepted = (a, trial)
                    break
            if accepted:
                a, cur = accepted
                total = matmul(total, a)
                log.append(f"round {rnd}: coordinate change {_freeze(a)}")
                continue
            rejected = True
        q += 1
        if max_order is not None and q > max_order:
            raise MaxRoundsExceeded(f"completion needs order {q} > max order {max_order}")
        log.append(f"round {rnd}: prolonged to order {q}")
        cur = _closure(cur, q)
    if rejected and allow_changes:
        raise NonGenericSeed(f"no involutive form within {max_rounds} rounds (seed {seed}); retry with another seed")
    raise MaxRoundsExceeded(f"no involutive form within {max_rounds} rounds")


def _freeze(a):
    return tuple(tuple(Fraction(x) for x in row) for row in a)


def ensure_involutive(inv):
    if not isinstance(inv, InvolutiveSystem):
        raise NotInvolutive("expected the output of complete()")
    if not involution_test(inv.system).involutive:
        raise NotInvolutive("system fails the involution test")
    return inv


def characters(inv):
    """Characters (alpha^1, ..., alpha^d) over the d active directions and the codimension."""
    if not isinstance(inv, InvolutiveSystem):
        raise NotInvolutive("expected the output of complete()")
    d = len(inv.active)
    q = inv.order
    counts = inv.class_counts()
    alpha = []
    for i in range(1, d + 1):
        total = inv.m * count_multi_indices(d - i + 1, q - 1) if q >= 1 else 0
        alpha.append(total - counts[i - 1])
    r = 0
    for a in reversed(alpha):
        if a:
            break
        r += 1
    return tuple(alpha), r


def codim(inv):
    return characters(inv)[1]


def symbol_dim(inv, s):
    """Dimension of the symbol at order ``s``."""
    q = inv.order
    d = len(inv.active)
    m = inv.m
    if s <= q:
        jets = inv.system.jets_of_order(s)
        pri = inv.principal_jets()
        return sum(1 for j in jets if j not in pri)
    t = s - q
    total = m * count_multi_indices(d, s)
    for c in inv.classes():
        total -= count_multi_indices(c, t)
    return total


@dataclass(frozen=True)
class SymbolDims:
    g: tuple
    R: tuple

    @property
    def total(self):
        return self.R[-1] if self.R else 0


def hilbert_dims(inv, up_to):
    g = tuple(symbol_dim(inv, s) for s in range(up_to + 1))
    acc, R = 0, []
    for x in g:
        acc += x
        R.append(acc)
    return SymbolDims(g, tuple(R))


def is_finite_type(inv):
    return codim(inv) == len(inv.active)


def solution_dim(inv):
    """dim R when the system is of finite type, else None."""
    if not is_finite_type(inv):
        return None
    return hilbert_dims(inv, inv.order).total


def full_torsion_test(inv):
    """True iff the number of class-n top-order equations equals m."""
    d = len(inv.active)
    return inv.class_counts()[d - 1] == inv.m if d else False


def characteristic_matrix(inv, gens=None):
    """Rows: top-order equations; entry (tau, k) = sum over |mu| = q of a chi^mu."""
    n = inv.n
    xs = tuple(f"x{i}" for i in range(1, n + 1))
    params = inv.field.gens
    if gens is None:
        gens = params + xs
    off = len(gens) - n
    rows = []
    for e in inv.top_equations():
        row = []
        for k in range(1, inv.m + 1):
            acc = RationalFunction(Poly(gens))
            for j, c in e.terms.items():
                if j.k != k or j.order != inv.order:
                    continue
                mono = Poly.monomial((0,) * off + j.mu, gens)
                if isinstance(c, RationalFunction):
                    c = c.reorder(gens)
                acc = acc + RationalFunction(mono) * c
            row.append(acc)
        polys, _ = clear_denominators(row)
        rows.append(polys)
    return rows


# Spencer form --------------------------------------------------------------------


def spencer_unknowns(inv):
    """Parametric jets of order < q, which become the new unknowns z^1, z^2, ..."""
    return [j for j in inv.parametric_jets() if j.order < inv.order]


def spencer_form(inv):
    """First-order system with no zero-order equations defining the same module.

    Unknowns are the parametric jets of order < q.  For every unknown z_mu and
    active direction i the jet mu + 1_i is rewritten through the normal form:
    principal jets via the system, parametric jets of order < q as another
    unknown, parametric jets of order q as d_c z_{lambda - 1_c} with c the
    class (that representation itself is tautological and skipped).
    """
    q = inv.order
    zs = spencer_unknowns(inv)
    index = {j: i + 1 for i, j in enumerate(zs)}
    pri = inv.principal_jets()
    space = inv.echelon()
    n = inv.n
    zero_mu = (0,) * n
    field = inv.field

    def as_z(terms):
        out = {}
        for j, c in terms.items():
            if j.order < q:
                z = Jet(index[j], zero_mu)
            else:
                cls = class_of(j.mu)
                z = Jet(index[j.shift(cls, -1)], _unit(n, cls))
            out[z] = out[z] + c if z in out else c
        return out

    eqs = []
    for mu_jet in zs:
        for i in inv.active:
            lam = mu_jet.shift(i)
            lhs = {Jet(index[mu_jet], _unit(n, i)): field.one}
            if lam in pri:
                # the normal form of a principal jet is its expression in parametric jets
                rhs = as_z(space.reduce({lam: field.one}))
            elif lam.order < q:
                rhs = {Jet(index[lam], zero_mu): field.one}
            else:
                cls = class_of(lam.mu)
                if i == cls:
                    continue
                rhs = {Jet(index[lam.shift(cls, -1)], _unit(n, cls)): field.one}
            t = dict(lhs)
            for z, c in rhs.items():
                t[z] = t[z] - c if z in t else -c
            eq = LinearEquation(t, field)
            if eq:
                eqs.append(eq)
    return PDSystem(n, len(zs), eqs, field, inv.active, inv.system.params)


def _unit(n, i):
    return tuple(1 if k == i - 1 else 0 for k in range(n))
