import math

import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, strategies as st

from superspin_lab import liealg as la
from superspin_lab.numkit import bracket
from superspin_lab.superspin import GAMMA

coeffs = st.lists(st.floats(-2, 2, allow_nan=False), min_size=6, max_size=6)


def g(kind, i, side="right"):
    return la.so6_generator(la.GeneratorName(kind, i, side))


def test_displayed_entries():
    k1 = g("K", 1)
    assert k1[0, 3] == 1j and k1[3, 0] == -1j and np.count_nonzero(k1) == 2
    k2l = g("K", 2, "left")
    assert k2l[2, 4] == 1j and k2l[4, 2] == -1j
    assert np.array_equal(g("K", 3, "left"), g("K", 3))
    with pytest.raises(KeyError):
        g("J", 1, "left")
    with pytest.raises(ValueError):
        la.GeneratorName("L", 1, "right")


def test_all_generators_hermitian():
    for m in la.right_sextet() + la.left_sextet() + la.joint_basis("so6") + la.joint_basis("su4"):
        assert np.array_equal(m, m.conj().T)


def test_su4_display_values():
    j3 = la.su4_generator(la.GeneratorName("J", 3, "joint"))
    assert np.array_equal(j3, 0.5 * np.diag([1j, -1j, 1j, -1j]))
    k3 = la.su4_generator(la.GeneratorName("K", 3, "joint"))
    assert (k3[0, 2], k3[2, 0], k3[1, 3], k3[3, 1]) == (-0.5, 0.5, 0.5, -0.5)
    for a in la.su4_display_basis():
        assert np.allclose(a, -a.conj().T) and abs(np.trace(a)) == 0


def test_right_sextet_brackets_by_hand():
    # oracle: the brackets the displayed matrices actually have
    expected = {("K1", "K2"): (-1, "J3"), ("K1", "K3"): (-1, "J2"), ("K2", "K3"): (-1, "J1"),
                ("J1", "J2"): (1, "J3"), ("J1", "J3"): (-1, "J2"), ("J2", "J3"): (1, "J1"),
                ("J1", "K2"): (-1, "K3"), ("J1", "K3"): (1, "K2"), ("J2", "K1"): (-1, "K3"),
                ("J2", "K3"): (1, "K1"), ("J3", "K1"): (-1, "K2"), ("J3", "K2"): (1, "K1")}
    basis = dict(zip(la.JOINT_ORDER, la.right_sextet()))
    for (a, b), (sign, c) in expected.items():
        assert np.array_equal(bracket(basis[a], basis[b]), 1j * sign * basis[c])
    for a, b in (("J1", "K1"), ("J2", "K2"), ("J3", "K3")):
        assert not np.any(bracket(basis[a], basis[b]))


def test_printed_table_cannot_be_realized():
    # the printed table is not a Lie algebra: no matrices can reproduce it
    assert la.printed_table_tensor().jacobi_residual() == pytest.approx(2.0)
    assert not la.bracket_table_check().passed


def test_computed_constants_are_lie():
    sc = la.structure_constants(la.right_sextet())
    assert sc.jacobi_residual() < 1e-12
    assert sc.antisymmetry_residual() == 0


def test_left_rotations_and_commutation():
    jl = la.derive_left_rotations()
    k1, k2, k3 = la.left_boosts()
    assert np.allclose(jl[2], -1j * bracket(k1, k2))
    # boosts share index 2, so the rotations live on indices 3, 4, 5
    assert jl[0][3, 4] == 1j and jl[1][3, 5] == -1j and jl[2][4, 5] == 1j
    for a in la.right_sextet()[:3]:
        for b in jl:
            assert not np.any(bracket(a, b))


def test_right_left_intersection_is_k3():
    inter = la.algebra_intersection(la.right_sextet(), la.left_sextet())
    assert len(inter) == 1
    _, res = la.real_coordinates([g("K", 3)], inter[0])
    assert res < 1e-12


def test_joint_so6_does_not_close():
    basis = la.joint_basis("so6")
    assert la.real_span_dim(basis) == 6
    with pytest.raises(la.ClosureError):
        la.structure_constants(basis)
    gens = basis[:3] + [basis[5]]
    assert len(la.generated_algebra(gens)) == 9


def test_su4_matches_right_sextet_constants():
    a = la.structure_constants(la.joint_basis("su4")).tensor
    b = la.structure_constants(la.right_sextet()).tensor
    assert np.max(np.abs(a - b)) < 1e-12


def test_su4_generated_dimension_is_six():
    b = la.joint_basis("su4")
    assert len(la.generated_algebra(b[:3] + [b[5]])) == 6


@given(coeffs, coeffs)
def test_element_bracket_su4(x, y):
    ex, ey = la.AlgebraElement(x, "su4"), la.AlgebraElement(y, "su4")
    z = la.element_bracket(ex, ey)
    assert np.allclose(z.realize(), -1j * bracket(ex.realize(), ey.realize()), atol=1e-12)
    assert np.allclose(la.element_bracket(ey, ex).coeffs, -z.coeffs, atol=1e-12)


def test_element_validation():
    with pytest.raises(ValueError):
        la.AlgebraElement([1, 2, 3], "su4")
    with pytest.raises(ValueError):
        la.AlgebraElement(np.zeros(6), "so5")
    with pytest.raises(ValueError):
        la.iso_map(la.AlgebraElement(np.zeros(6), "so6"))


@given(coeffs)
def test_realize_hermitian(x):
    for rep in ("so6", "su4"):
        m = la.AlgebraElement(x, rep).realize()
        assert np.allclose(m, m.conj().T, atol=0)


def test_cartan():
    assert la.cartan_decomposition_check().passed


def test_curvature_identity():
    k1, k2, k3 = la.su4_display_basis()[3:]
    assert np.allclose(la.curvature(k1, k2, k2), k1, atol=1e-15)
    assert la.inner(k3, k3) == pytest.approx(1.0)
    assert la.sectional_curvature(k1, k2) == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(la.OutsideSubspaceError):
        la.curvature(la.su4_display_basis()[0], k1, k2)
    with pytest.raises(ValueError):
        la.sectional_curvature(k1, 2 * k1)


@given(st.integers(0, 2**31 - 1))
def test_sectional_curvature_random_planes(seed):
    rng = np.random.default_rng(seed)
    x, y = la.random_k_element(rng), la.random_k_element(rng)
    assert la.sectional_curvature(x, y) == pytest.approx(1.0, abs=1e-9)


def test_covering_two_to_one_on_j3():
    h = la.joint_basis("su4")[2]
    assert np.max(np.abs(sla.expm(2j * math.pi * h) + np.eye(4))) < 1e-12
    gj3 = la.joint_basis("so6")[2]
    assert np.max(np.abs(sla.expm(2j * math.pi * gj3) - np.eye(6))) < 1e-12
    rep = la.covering_check(la.AlgebraElement.basis("J3"))
    assert rep.passed
    assert rep.inputs["first_t_su4_minus_identity"] == pytest.approx(2 * math.pi)
    assert rep.inputs["first_t_su4_identity"] == pytest.approx(4 * math.pi)
    assert la.covering_witness("J3").passed


def test_xi_on_small_rotation():
    x = la.AlgebraElement([0.01, -0.02, 0.03, 0, 0, 0], "su4")
    u = sla.expm(1j * x.realize())
    assert np.allclose(la.xi(u), sla.expm(1j * la.iso_map(x).realize()), atol=1e-12)


def test_spin_generators_and_membership():
    gens = la.spin_generators(GAMMA.matrices)
    # H_J3 = -sigma^{12}: the su4 J3 is a Lorentz rotation generator
    sigma12 = 0.25j * bracket(GAMMA[1], GAMMA[2])
    assert np.allclose(la.joint_basis("su4")[2], -sigma12, atol=1e-15)
    assert np.allclose(gens[(1, 2)], 1j * sigma12)
    rep = la.spin_membership_check()
    assert rep.passed and rep.inputs["ug_spin_intersection_dim"] == 3


def test_boosts_leave_unitary_group():
    gens = la.spin_generators(GAMMA.matrices)
    b = sla.expm(gens[(0, 3)])
    assert np.linalg.norm(b.conj().T @ b - np.eye(4), 2) > 0.1
