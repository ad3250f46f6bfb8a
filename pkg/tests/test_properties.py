"""Randomized cross-checks of the involutive machinery against independent oracles."""

from __future__ import annotations

import sys
from pathlib import Path

from hypothesis import HealthCheck, given, settings, strategies as st

from pdmod import analysis, involution, parse_system
from pdmod.groebner import Ring
from pdmod.jets import reduce as jet_reduce

sys.path.insert(0, str(Path(__file__).parent))
from oracles import groebner_dims, prolongation_rank_dims  # noqa: E402

exps3 = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)).filter(lambda e: 0 < sum(e) <= 3)
coef = st.integers(-2, 2)


def _system(rows):
    lines = ["n=3"]
    for row in rows:
        lines.append(" + ".join(f"({c})*y[{a},{b},{d}]" for (a, b, d), c in row) + " = 0")
    return "\n".join(lines) + "\n"


rows = st.lists(st.lists(st.tuples(exps3, coef.filter(bool)), min_size=1, max_size=2), min_size=1, max_size=3)
slow = dict(deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])


def _parse(r):
    try:
        return parse_system(_system(r))
    except Exception:
        return None


@settings(max_examples=15, **slow)
@given(rows)
def test_hilbert_dims_match_groebner_count(r):
    s = _parse(r)
    if s is None:
        return
    inv = involution.complete(s)
    eqs = [{j.mu: c for j, c in e.terms.items()} for e in s.equations]
    assert list(involution.hilbert_dims(inv, 5).R) == groebner_dims(eqs, 3, 5)


@settings(max_examples=10, **slow)
@given(rows)
def test_dense_rank_is_an_upper_bound(r):
    # truncated prolongations miss relations that need higher orders, never the reverse
    s = _parse(r)
    if s is None:
        return
    inv = involution.complete(s)
    eqs = [{j.mu: c for j, c in e.terms.items()} for e in s.equations]
    oracle = prolongation_rank_dims(eqs, 3, 5)
    ours = involution.hilbert_dims(inv, 4).R
    assert all(a <= b for a, b in zip(ours, oracle))


@settings(max_examples=15, **slow)
@given(rows, st.integers(0, 5))
def test_completion_is_seed_invariant(r, seed):
    s = _parse(r)
    if s is None:
        return
    a = involution.complete(s)
    b = involution.complete(s, seed=seed)
    assert involution.characters(a) == involution.characters(b)
    assert involution.hilbert_dims(a, 4) == involution.hilbert_dims(b, 4)


@settings(max_examples=15, **slow)
@given(rows)
def test_reduce_is_idempotent_and_ideal_preserved(r):
    s = _parse(r)
    if s is None:
        return
    inv = involution.complete(s)
    ring = Ring(3, 1)
    if not inv.changed():
        assert ring.same(ring.gb(list(s.equations)), ring.gb(list(inv.system.equations)))
    for e in inv.system.equations:
        once = jet_reduce(e.prolong(3), inv.system, inv.order + 1)
        assert jet_reduce(once, inv.system, inv.order + 1) == once


@settings(max_examples=10, **slow)
@given(rows)
def test_contraction_is_idempotent(r):
    s = _parse(r)
    if s is None:
        return
    inv = involution.complete(s)
    c1 = analysis.contract(inv)
    c2 = analysis.contract(involution.complete(c1.system))
    assert not c2.witnesses
