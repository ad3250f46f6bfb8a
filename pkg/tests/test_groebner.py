from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pdmod import Jet, LinearEquation, Poly, parse_system
from pdmod.errors import ZeroDivisorInput
from pdmod.groebner import Ring, equation_to_poly, ideal_quotient, poly_to_equation

G3 = ("x1", "x2", "x3")


def test_gb_of_macaulay_system(system):
    s = system("macaulay")
    ring = Ring(3, 1)
    gb = ring.gb(list(s.equations))
    inv = parse_system("n=3\ny[0,0,2]=0\ny[0,1,1]=0\ny[0,2,0]=0\ny[1,0,1]-y[0,1,0]=0\n")
    assert ring.same(gb, ring.gb(list(inv.equations)))


def test_membership_against_prolongation_span(system):
    # the span of all prolongations up to order 4 is an independent membership oracle
    s = system("two_points")
    ring = Ring(3, 1)
    gb = ring.gb(list(s.equations))
    space = s.prolongation_space(4)
    for mu in [(1, 0, 2), (0, 3, 0), (1, 1, 1), (2, 1, 0), (3, 0, 0), (0, 0, 1)]:
        e = LinearEquation({Jet(1, mu): Fraction(1)})
        assert ring.contains(gb, e) == (not space.reduce(e.terms))


def test_saturation_removes_embedded_part():
    # (x1^2, x1 x2) : x1^inf = (1)
    ring = Ring(2, 1)
    eqs = [LinearEquation({Jet(1, (2, 0)): Fraction(1)}), LinearEquation({Jet(1, (1, 1)): Fraction(1)})]
    sat = ring.saturate(eqs, Poly.parse("x1", ("x1", "x2")))
    assert ring.contains(sat, LinearEquation({Jet(1, (0, 0)): Fraction(1)}))
    sat2 = ring.saturate(eqs, Poly.parse("x2", ("x1", "x2")))
    assert ring.same(sat2, [LinearEquation({Jet(1, (1, 0)): Fraction(1)})])


def test_annihilator_of_module_element():
    # in A^2 / (x2 e1): ann(e1) = (x2) and e2 is free
    ring = Ring(2, 2)
    eqs = [LinearEquation({Jet(1, (0, 1)): Fraction(1)})]
    ann = ring.annihilator(eqs, LinearEquation({Jet(1, (0, 0)): Fraction(1)}))
    assert [str(a) for a in ring.gb(ann)] == ["y_2"]
    ann2 = ring.annihilator(eqs, LinearEquation({Jet(2, (0, 0)): Fraction(1)}))
    assert not any(ann2)


def test_ideal_quotient_and_zero_divisor():
    gens = [Poly.parse("x1^2", G3), Poly.parse("x1*x2", G3)]
    q = ideal_quotient(gens, Poly.parse("x1", G3), 3)
    assert {str(e) for e in q} == {"y_1", "y_2"}
    with pytest.raises(ZeroDivisorInput):
        ideal_quotient(gens, Poly(G3), 3)


def test_parameters_in_coefficients():
    ring = Ring(1, 1, params=("a",))
    s = parse_system("n=1 params=a\ny[2]-a*y[0]=0\ny[1]=0\n")
    gb = ring.gb(list(s.equations))
    # a is a unit of Q(a), so the ideal is the whole ring
    assert ring.contains(gb, LinearEquation({Jet(1, (0,)): ring.field.one}, ring.field))


def test_poly_equation_round_trip():
    from pdmod.arith import Field

    gens = ("a", "x1", "x2")
    p = Poly.parse("a*x1^2 - x2 + 3", gens)
    eq = poly_to_equation(p, 2, Field(("a",)))
    assert equation_to_poly(eq, gens) == p


monomials = st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(any)


@settings(max_examples=25, deadline=None)
@given(st.lists(monomials, min_size=1, max_size=3), monomials)
def test_monomial_membership_is_divisibility(gens, mono):
    ring = Ring(2, 1)
    gb = ring.gb([LinearEquation({Jet(1, g): Fraction(1)}) for g in gens])
    inside = any(all(a <= b for a, b in zip(g, mono)) for g in gens)
    assert ring.contains(gb, LinearEquation({Jet(1, mono): Fraction(1)})) == inside
