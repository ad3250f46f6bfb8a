"""Independent reference computations used to cross-check the library.

These avoid the involutive machinery: dimensions come from the dense rank of
a plain prolongation matrix (sympy), and associated primes of monomial
ideals come from brute-force colon ideals of monomials.
"""

from __future__ import annotations

from itertools import combinations, product

import sympy


def all_monomials(n, order):
    return [e for e in product(range(order + 1), repeat=n) if sum(e) <= order]


def prolongation_rank_dims(equations, n, N):
    """dim of M_s (jets of order <= s modulo consequences) for s = 0..N-1.

    ``equations`` are dicts {exponent tuple: rational} for one unknown.  All
    prolongations up to order N are stacked into a dense matrix; the
    consequences of order <= s are its rows killed by projecting away the
    jets of order > s.  Valid once N exceeds the order where the ideal is
    generated in low degrees (small examples: a few orders above the input).
    """
    cols = sorted(all_monomials(n, N), key=lambda e: (sum(e), e))
    index = {e: i for i, e in enumerate(cols)}
    rows = []
    for eq in equations:
        q = max(sum(e) for e in eq)
        for nu in all_monomials(n, N - q):
            row = [0] * len(cols)
            for e, c in eq.items():
                row[index[tuple(a + b for a, b in zip(e, nu))]] = sympy.Rational(c)
            rows.append(row)
    mat = sympy.Matrix(rows)
    total = mat.rank()
    dims = []
    for s in range(N):
        high = [i for i, e in enumerate(cols) if sum(e) > s]
        low_count = len(cols) - len(high)
        proj_rank = mat[:, high].rank() if high else 0
        in_low = total - proj_rank
        dims.append(low_count - in_low)
    return dims


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _in_monomial_ideal(gens, u):
    return any(_divides(g, u) for g in gens)


def monomial_associated_primes(gens, n, bound=None):
    """Associated primes (as sets of variable indices) of a monomial ideal.

    P_S is associated iff some monomial u outside the ideal has
    (I : u) = P_S; for monomial ideals (I : u) is monomial and it suffices to
    test u up to the lcm of the generators.
    """
    top = [max(g[i] for g in gens) for i in range(n)]
    out = set()
    for u in product(*[range(t + 1) for t in top]):
        if _in_monomial_ideal(gens, u):
            continue
        # I : u is generated by g / gcd(g, u)
        quot = [tuple(max(gi - ui, 0) for gi, ui in zip(g, u)) for g in gens]
        # prime iff every minimal generator is a single variable to the first power
        minimal = [q for q in quot if not any(p != q and _divides(p, q) for p in quot)]
        if all(sum(q) == 1 for q in minimal):
            out.add(frozenset(q.index(1) for q in minimal))
    return out


def is_unmixed_monomial(gens, n):
    primes = monomial_associated_primes(gens, n)
    return len({len(p) for p in primes}) == 1, primes


def groebner_dims(equations, n, up_to):
    """dim of M_s for s = 0..up_to from the leading monomials of a sympy Groebner basis.

    With a degree-compatible order the standard monomials of degree <= s
    form a basis of the jets of order <= s modulo the system.
    """
    xs = sympy.symbols(" ".join(f"x{i}" for i in range(1, n + 1)), seq=True)
    polys = [sum(sympy.Rational(c) * sympy.Mul(*[x**k for x, k in zip(xs, e)]) for e, c in eq.items()) for eq in equations]
    G = sympy.groebner(polys, *xs, order="grevlex")
    leads = [sympy.Poly(g, *xs).monoms(order="grevlex")[0] for g in G.exprs]
    dims = []
    for s in range(up_to + 1):
        dims.append(sum(1 for e in all_monomials(n, s) if not _in_monomial_ideal(leads, e)))
    return dims
