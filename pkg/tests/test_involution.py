from __future__ import annotations

from fractions import Fraction

import pytest

from pdmod import involution, parse_system
from pdmod.errors import MaxRoundsExceeded, NotInvolutive


def test_involution_test_finds_obstruction(system):
    v = involution.involution_test(system("macaulay"))
    assert not v
    assert v.obstructions
    assert involution.involution_test(system("macaulay_inv"))


def test_complete_is_involutive_and_idempotent(system):
    for name in ("macaulay", "gap", "divergence", "primary3", "cross", "n4"):
        inv = involution.complete(system(name))
        assert involution.involution_test(inv.system)
        again = involution.complete(inv.system)
        assert set(again.system.equations) == set(inv.system.equations)


def test_first_order_characters_of_divergence(system):
    alpha, r = involution.characters(involution.complete(system("divergence")))
    assert alpha == (3, 3, 2, 0) and r == 1
    # every unknown is killed by d_4, so the module is torsion
    assert involution.full_torsion_test(involution.complete(system("divergence")))
    free = parse_system("n=2 m=2\ny1[1,0]-y2[0,1]=0\n")
    assert not involution.full_torsion_test(involution.complete(free))


def test_single_unknown_finite_type(system):
    inv = involution.complete(system("oscillator"))
    assert involution.is_finite_type(inv)
    assert involution.solution_dim(inv) == 2
    inv = involution.complete(system("macaulay"))
    assert involution.solution_dim(inv) is None


def test_coordinate_change_when_delta_regularity_fails(system):
    # y_1 = 0, y_23 = 0: the given coordinates are not regular
    inv = involution.complete(system("cross"), seed=3)
    assert involution.involution_test(inv.system)
    assert involution.characters(inv)[1] == 2
    assert inv.changed()
    if inv.changed():
        inv_change = inv.inverse_change()
        n = inv.n
        prod = [[sum(inv.change[i][k] * inv_change[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        assert prod == [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def test_changes_disabled_may_stall():
    s = parse_system("n=2\ny[1,1]=0\n")
    inv = involution.complete(s, allow_changes=True)
    assert involution.involution_test(inv.system)
    with pytest.raises(MaxRoundsExceeded):
        involution.complete(s, allow_changes=False, max_order=2)


def test_ensure_involutive_rejects_raw_systems(system):
    with pytest.raises(NotInvolutive):
        involution.characters(system("macaulay"))


def test_hilbert_dims_match_symbol_formula(system):
    inv = involution.complete(system("macaulay"))
    dims = involution.hilbert_dims(inv, 4)
    # characters (2,0,0): two free functions of x1 means dim g_s = 2 for s >= 2
    assert dims.g[2:] == (2, 2, 2)


def test_spencer_form_of_second_order_ode(system):
    inv = involution.complete(system("oscillator"))
    sp = involution.spencer_form(inv)
    assert sp.m == 2 and sp.order == 1
    # z1' = z2, z2' = z1
    assert {str(e) for e in sp.equations} == {"y1_1 - y2", "y2_1 - y1"}
    assert involution.solution_dim(involution.complete(sp)) == 2


def test_spencer_form_preserves_solution_dimension(system):
    for name in ("primary2", "primary3", "two_points"):
        inv = involution.complete(system(name))
        sp = involution.complete(involution.spencer_form(inv))
        assert sp.order == 1
        assert not any(e.order == 0 for e in sp.system.equations)
        assert involution.solution_dim(sp) == involution.solution_dim(inv)


def test_characters_decrease_on_first_order_forms(system):
    for name in ("macaulay", "gap", "divergence", "cross", "n4", "primary3"):
        sp = involution.complete(involution.spencer_form(involution.complete(system(name))))
        alpha, _ = involution.characters(sp)
        assert list(alpha) == sorted(alpha, reverse=True), name
