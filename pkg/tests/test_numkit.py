import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from superspin_lab.numkit import (DimensionError, NotNearIdentityError, Tolerance, anticommutator,
                                  as_mat, bracket, expm, is_hermitian, logm_near_identity,
                                  nullspace, rank, unitarity_defect)

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)


def complex_mats(n):
    return st.tuples(arrays(float, (n, n), elements=finite),
                     arrays(float, (n, n), elements=finite)).map(lambda t: t[0] + 1j * t[1])


def test_tolerance_rejects_nonpositive():
    with pytest.raises(ValueError):
        Tolerance(abs_eps=0.0)


def test_as_mat_rejects_nan_and_1d():
    with pytest.raises(ValueError):
        as_mat([[np.nan]])
    with pytest.raises(DimensionError):
        as_mat([1.0, 2.0])


def test_bracket_dimension_mismatch():
    with pytest.raises(DimensionError):
        bracket(np.eye(2), np.eye(3))


def test_pauli_bracket():
    sx = np.array([[0, 1], [1, 0]])
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.diag([1, -1])
    assert np.allclose(bracket(sx, sy), 2j * sz, atol=0)
    assert np.allclose(anticommutator(sx, sy), 0, atol=0)


def test_expm_su4_diagonal_half_turn():
    j3 = 0.5 * np.diag([1j, -1j, 1j, -1j])
    assert np.max(np.abs(expm(2 * np.pi * j3) + np.eye(4))) < 1e-12


@given(complex_mats(4))
def test_expm_matches_scipy(x):
    ref = sla.expm(x)
    assert np.max(np.abs(expm(x) - ref)) <= 1e-11 * max(1.0, np.max(np.abs(ref)))


@given(complex_mats(3), st.floats(-1, 1), st.floats(-1, 1))
def test_expm_one_parameter_group(x, s, t):
    x = x / max(1.0, np.linalg.norm(x))
    lhs = expm((s + t) * x)
    rhs = expm(s * x) @ expm(t * x)
    assert np.max(np.abs(lhs - rhs)) < 1e-12


@given(complex_mats(4))
def test_logm_inverts_expm_near_identity(x):
    x = 0.4 * x / max(1e-300, np.linalg.norm(x, 2)) if np.any(x) else x
    u = expm(x)
    if np.linalg.norm(u - np.eye(4), 2) >= 1:
        return
    assert np.max(np.abs(logm_near_identity(u) - sla.logm(u))) < 1e-10


def test_logm_refuses_far_from_identity():
    with pytest.raises(NotNearIdentityError):
        logm_near_identity(-np.eye(2))


def test_rank_and_nullspace():
    m = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]], dtype=complex)
    assert rank(m) == 2
    (v,) = nullspace(m)
    assert np.linalg.norm(m @ v) < 1e-12
    assert abs(np.linalg.norm(v) - 1) < 1e-12


@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**31 - 1))
def test_rank_of_product(r1, n, seed):
    rng = np.random.default_rng(seed)
    r = min(r1, n)
    m = rng.normal(size=(6, r)) @ rng.normal(size=(r, 6))
    assert rank(m) == r
    assert len(nullspace(m)) == 6 - r


def test_hermitian_and_unitary():
    h = np.array([[1, 1j], [-1j, 2]])
    assert is_hermitian(h)
    assert unitarity_defect(expm(1j * h)) < 1e-12
    assert unitarity_defect(np.diag([2.0, 1.0])) == pytest.approx(3.0)
