from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from pdmod import Jet, analysis, dual, involution, parse_system
from pdmod.errors import InfiniteDimensional, NonRationalEigenvalue, NotInvariant


def _dual(system, name):
    return dual.build_dual(involution.complete(system(name)))


def test_section_names_and_printing():
    E = dual.ModularEquation({Jet(1, (1, 1, 0)): Fraction(1), Jet(1, (0, 0, 1)): Fraction(-2)}, 2)
    assert str(E) == "-2*a^(3) + a^(1,2)"
    assert dual.a_name(Jet(1, (0, 0))) == "a^0"
    assert dual.a_name(Jet(2, (1, 0)), m=2) == "a2^(1)"
    assert E.to_json() == {"terms": {"(3)": "-2", "(1,2)": "1"}, "order": 2}
    assert str(dual.ModularEquation({}, 1)) == "0"


def test_modular_equation_arithmetic():
    a = dual.ModularEquation({Jet(1, (1,)): Fraction(1), Jet(1, (2,)): Fraction(1)}, 2)
    b = dual.ModularEquation({Jet(1, (1,)): Fraction(1)}, 1)
    assert not (a - b)  # the sum only knows values up to the smaller order
    assert (a - b).order == 1
    assert a.value({Jet(1, (2,)): Fraction(3)}) == 3
    with pytest.raises(ValueError):
        b.value({Jet(1, (2,)): Fraction(1)})


def test_derivate_shifts_down():
    E = dual.ModularEquation({Jet(1, (1, 1)): Fraction(1), Jet(1, (0, 2)): Fraction(5)}, 2)
    assert dual.derivate(E, 2).coeffs == {Jet(1, (1, 0)): 1, Jet(1, (0, 1)): 5}
    assert dual.derivate_by(E, (1, 1)).coeffs == {Jet(1, (0, 0)): 1}


def test_oscillator_points(system):
    R = _dual(system, "oscillator")
    assert R.dim == 2 and dual.commutes(R)
    pts = dual.maximal_points(R)
    assert sorted(p.values[0] for p in pts) == [-1, 1]
    G = dual.min_generators(R)
    assert G.count == 1


def test_sections_satisfy_the_system(system):
    for name in ("primary2", "primary3", "oscillator"):
        inv = involution.complete(system(name))
        R = dual.build_dual(inv)
        assert R.dim == involution.solution_dim(inv)
        for k in range(R.dim):
            E = R.section(R.unit(k), inv.order + 1)
            assert dual.is_section(inv.system, E, inv.order + 1)
            assert R.coords(E) == R.unit(k)


def test_derivation_matrices_match_derivates(system):
    R = _dual(system, "primary3")
    for k in range(R.dim):
        E = R.section(R.unit(k), 4)
        for i in R.directions:
            lhs = R.section(R.act(i, R.unit(k)), 3)
            assert dual.derivate(E, i) == lhs


def test_irrational_eigenvalue():
    R = dual.build_dual(involution.complete(parse_system("n=1\ny[2]+y[0]=0\n")))
    with pytest.raises(NonRationalEigenvalue):
        dual.maximal_points(R)


def test_infinite_dimensional(system):
    with pytest.raises(InfiniteDimensional):
        _dual(system, "macaulay")
    inv = involution.complete(system("gap"))
    with pytest.raises(InfiniteDimensional):
        dual.build_dual(analysis.localize(inv, 2))
    # a torsion module vanishes after inverting every variable
    mixed = involution.complete(system("mixed"))
    assert dual.build_dual(analysis.localize(mixed, 0)).dim == 0


def test_subsystem_sum_on_coordinates(system):
    R = _dual(system, "primary2")  # basis y, y_1, y_2, y_11
    assert [str(j) for j in R.basis] == ["y", "y_1", "y_2", "y_11"]
    low = [R.unit(0)]
    chain = [R.unit(0), R.unit(1), R.unit(3)]
    res = dual.subsystem_sum(low, chain, R)
    assert isinstance(res, dual.ProperSubspace) and res.defect == 1
    assert isinstance(dual.subsystem_sum(chain, [R.unit(0), R.unit(2)], R), dual.Sum)
    # d_1 of the section dual to y_11 is the one dual to y_1
    with pytest.raises(NotInvariant):
        dual.subsystem_sum(low, [R.unit(3)], R)


def test_subsystem_sum_on_sections():
    q = 2
    R = dual.section_space(parse_system("n=2\ny[0,2]=0\ny[1,1]=0\n"), q)
    R1 = dual.section_space(parse_system("n=2\ny[0,1]=0\n"), q)
    R2 = dual.section_space(parse_system("n=2\ny[1,0]=0\n"), q)
    assert isinstance(dual.subsystem_sum(R1, R1, R), dual.ProperSubspace)
    with pytest.raises(NotInvariant):
        dual.subsystem_sum(R1, R2, R)


def test_family_branch_condition(system):
    R = _dual(system, "family")
    G = dual.min_generators(R)
    assert G.count == 1 and "a != 0" in G.branch_conditions


def _corners(exps):
    """Standard monomials of a zero-dimensional monomial ideal that are maximal for divisibility."""
    top = [max(e[i] for e in exps) for i in range(2)]
    std = [u for u in product(range(top[0] + 1), range(top[1] + 1)) if not any(g[0] <= u[0] and g[1] <= u[1] for g in exps)]
    up = [(1, 0), (0, 1)]
    return [u for u in std if all(tuple(a + b for a, b in zip(u, d)) not in std for d in up)], std


@settings(max_examples=20, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(1, 4), st.integers(1, 4), st.lists(st.tuples(st.integers(1, 3), st.integers(1, 3)), max_size=2))
def test_generator_count_of_monomial_systems(a, b, mixed):
    exps = [(a, 0), (0, b)] + mixed
    text = "n=2\n" + "".join(f"y[{u},{v}]=0\n" for u, v in exps)
    inv = involution.complete(parse_system(text))
    R = dual.build_dual(inv)
    corners, std = _corners(exps)
    assert R.dim == len(std)
    assert dual.commutes(R)
    G = dual.min_generators(R)
    assert G.count == len(corners)
    assert dual.generation_check(R, G.vectors)
