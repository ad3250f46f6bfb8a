from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pdmod.errors import NotSolvedForm, ZeroOrder
from pdmod.jets import (
    EQ,
    GT,
    LT,
    Jet,
    LinearEquation,
    PDSystem,
    autoreduce,
    change_coordinates,
    class_of,
    compare_jets,
    jet_key,
    jet_name,
    multi_indices,
    reduce,
    specialize,
)
from pdmod.parse import parse_system


def test_class_and_names():
    assert class_of((0, 2, 1)) == 2
    with pytest.raises(ZeroOrder):
        class_of((0, 0, 0))
    assert jet_name(Jet(1, (1, 0, 1))) == "y_13"
    assert jet_name(Jet(2, (0, 0)), m=2) == "y2"


def test_jet_order_is_degree_then_reverse_lex():
    y3 = Jet(1, (0, 0, 1))
    y2 = Jet(1, (0, 1, 0))
    assert compare_jets(y3, y2) == GT
    assert compare_jets(Jet(1, (0, 1, 1)), Jet(1, (2, 0, 0))) == GT
    assert compare_jets(Jet(1, (1,)), Jet(2, (1,))) == LT
    assert compare_jets(y3, y3) == EQ


mus = st.lists(st.integers(0, 3), min_size=3, max_size=3).map(tuple)


@given(mus, mus, st.integers(1, 3))
def test_jet_order_compatible_with_prolongation(u, v, i):
    a, b = Jet(1, u), Jet(1, v)
    if jet_key(a) < jet_key(b):
        assert jet_key(a.shift(i)) < jet_key(b.shift(i))


@given(mus, mus)
def test_jet_order_refines_class(u, v):
    # among jets of equal order, a higher class means a larger jet
    if sum(u) == sum(v) and sum(u) > 0 and class_of(u) > class_of(v):
        assert jet_key(Jet(1, u)) > jet_key(Jet(1, v))


def test_multi_indices_count():
    assert len(multi_indices(3, 2)) == 6
    assert len(multi_indices(4, 3)) == 20


def test_reduce_needs_solved_form():
    e = LinearEquation({Jet(1, (1, 0)): Fraction(1)})
    f = LinearEquation({Jet(1, (1, 0)): Fraction(1), Jet(1, (0, 0)): Fraction(1)})
    with pytest.raises(NotSolvedForm):
        reduce(e, PDSystem(2, 1, [e, f]))


def test_reduce_and_autoreduce():
    s = parse_system("n=2\ny[0,2]=0\ny[1,1]-y[0,1]=0\n")
    e = LinearEquation({Jet(1, (1, 2)): Fraction(1)})
    # y_122 = d_2 (y_12) = y_22 = 0
    assert not reduce(e, s)
    dup = s.with_equations(s.equations + (s.equations[0].scale(3),))
    assert len(autoreduce(dup)) == 2


def test_change_coordinates_is_a_ring_map():
    s = parse_system("n=2\ny[1,1]=0\n")
    t = change_coordinates(s, [[Fraction(1), Fraction(1)], [Fraction(0), Fraction(1)]])
    # x1 x2 -> (x1 + x2) x2
    (e,) = t.equations
    assert e.terms == {Jet(1, (1, 1)): 1, Jet(1, (0, 2)): 1}


def test_specialize_drops_parameter():
    s = parse_system("n=1 params=a\ny[1]-a*y[0]=0\n")
    t = specialize(s, {"a": 0})
    assert t.field.gens == ()
    assert [str(e) for e in t.equations] == ["y_1"]
    with pytest.raises(ValueError):
        specialize(s, {"b": 1})
