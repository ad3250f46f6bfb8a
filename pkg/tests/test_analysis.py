from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from pdmod import Jet, LinearEquation, Poly, analysis, involution, parse_system
from pdmod.errors import NonFullClasses, NotInvolutive, ZeroDivisorInput

sys.path.insert(0, str(Path(__file__).parent))
from oracles import is_unmixed_monomial  # noqa: E402

G3 = ("x1", "x2", "x3")


def test_localize_moves_first_variables_into_the_field(system):
    inv = involution.complete(system("macaulay"))
    L = analysis.localize(inv)
    assert L.split == 2 and L.field.gens == ("x1",)
    assert L.finite_type
    # y_13 - y_2 becomes x1 y_3 - y_2
    assert any(str(e) in ("y_2 - x1*y_3", "-x1*y_3 + y_2") for e in L.system.equations) or L.completed


def test_localize_full_split_returns_system(system):
    inv = involution.complete(system("primary2"))
    L = analysis.localize(inv)
    assert L.split == 2 and L.system is inv.system


def test_localize_requires_completion(system):
    with pytest.raises(NotInvolutive):
        analysis.localize(system("macaulay"))


def test_contract_beyond_codimension_is_rejected(system):
    inv = involution.complete(system("mixed"))
    with pytest.raises(NonFullClasses):
        analysis.contract(inv, 2)


def test_pure_systems(system):
    for name in ("macaulay", "primary3", "oscillator", "divergence"):
        v = analysis.purity_test(involution.complete(system(name)))
        assert v.pure, name


def test_pure_part_of_mixed(system):
    inv = involution.complete(system("mixed"))
    part = analysis.pure_part(inv)
    v = analysis.purity_test(involution.complete(part))
    assert v.pure and v.codim == 1


def test_element_codimension(system):
    s = system("mixed")
    assert analysis.element_codim(s, LinearEquation({Jet(1, (0, 0)): Fraction(1)})) == 1
    assert analysis.element_codim(s, LinearEquation({Jet(1, (0, 1)): Fraction(1)})) == 2
    # y_22 is zero in M, so its annihilator is the unit ideal
    assert analysis.element_codim(s, LinearEquation({Jet(1, (0, 2)): Fraction(1)})) == 3


def test_ideal_quotient():
    gens = [Poly.parse(t, G3) for t in ("x1^2", "x1*x2", "x1*x3", "x2*x3")]
    q = analysis.ideal_quotient(gens, Poly.parse("x1", G3))
    assert set(q) == {Poly.parse(t, G3) for t in ("x1", "x2", "x3")}
    with pytest.raises(ZeroDivisorInput):
        analysis.ideal_quotient(gens, Poly(G3))


def test_parametrize_divergence_in_the_plane():
    s = parse_system("n=2 m=2\ny1[1,0]+y2[0,1]=0\n")
    par = analysis.parametrize(s)
    assert analysis.check_parametrization(s, par)
    (row,) = par.rows
    assert set(map(str, row)) == {"x2", "-x1"} or set(map(str, row)) == {"-x2", "x1"}
    assert par.branch_conditions == ()


def test_parametrize_reports_torsion(system):
    res = analysis.parametrize(system("mixed"))
    assert isinstance(res, analysis.SimplificationDetected)


def test_torsion_chain_levels_of_macaulay(system):
    chain = analysis.torsion_chain(involution.complete(system("macaulay")))
    assert chain.codim == 2
    assert chain.level(0).is_whole_module and chain.level(1).is_whole_module
    # pure of codimension 2: no element has a larger codimension
    assert chain.level(2).is_zero and not chain.level(2).generators
    with pytest.raises(KeyError):
        chain.level(7)


monomial = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)).filter(any)


@settings(max_examples=12, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.lists(monomial, min_size=1, max_size=3, unique=True))
def test_unmixedness_matches_brute_force(exps):
    gens = [Poly.monomial(e, G3) for e in exps]
    res = analysis.unmixedness_test(gens)
    expected, _ = is_unmixed_monomial(exps, 3)
    assert isinstance(res, analysis.Unmixed) == expected
    if isinstance(res, analysis.Mixed):
        from pdmod.groebner import Ring, poly_to_equation

        ring = Ring(3, 1)
        ideal = ring.gb([poly_to_equation(p, 3, ring.field) for p in gens])
        assert ring.contains(ideal, poly_to_equation(res.S * res.P, 3, ring.field))
        assert not ring.contains(ideal, poly_to_equation(res.P, 3, ring.field))
