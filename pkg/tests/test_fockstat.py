import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from superspin_lab import fockstat as fs


def test_single_mode_is_plain_lowering():
    ops = fs.build_fock(1)
    assert np.array_equal(ops.B[0], [[0, 1], [0, 0]])
    # l = 1 is odd, so D = -B^H
    assert np.array_equal(ops.D[0], -ops.B[0].T)


def test_mode_ordering():
    assert fs.mode_list(2) == (fs.ModeIndex(1, 0), fs.ModeIndex(2, 0), fs.ModeIndex(1, 1), fs.ModeIndex(2, 1))
    assert fs.ModeIndex(2, 3).sign == 1 and fs.ModeIndex(1, 0).sign == -1
    with pytest.raises(ValueError):
        fs.ModeIndex(3, 0)


@given(st.integers(1, fs.MAX_MODES))
def test_car_exact(n):
    ops = fs.build_fock(n)
    assert fs.car_residual(ops) == 0
    assert fs.identification_residual(ops) == 0
    assert fs.nilpotency_residual(ops) == 0
    assert fs.vacuum_residual(ops) == 0


def test_car_against_brute_force_oracle():
    # oracle: number operators of a Jordan-Wigner chain count occupations bit by bit
    n = 3
    ops = fs.build_fock(n)
    for j, b in enumerate(ops.B):
        num = b.T @ b
        diag = [(k >> (n - 1 - j)) & 1 for k in range(2 ** n)]
        assert np.array_equal(num, np.diag(diag))


def test_anticommutator_suite_and_exclusion():
    ops = fs.build_fock(4)
    rep = fs.anticommutator_suite(ops)
    assert rep.passed and rep.residual == 0
    assert rep.inputs["signs"]["0,1"] == -1 and rep.inputs["signs"]["1,0"] == 1
    assert fs.exclusion_check(ops).passed


def test_mode_count_bounds():
    with pytest.raises(ValueError):
        fs.build_fock(0)
    with pytest.raises(ValueError):
        fs.build_fock(fs.MAX_MODES + 1)


def test_off_shell_grid_rejected():
    with pytest.raises(ValueError):
        fs.build_fock(2, mass=1.0, impulse_grid=[(1.0, 1.0)])
    with pytest.raises(ValueError):
        fs.build_fock(4, mass=1.0, impulse_grid=[(1.0, 0.0)])
    ops = fs.build_fock(4, mass=2.0, impulse_grid=[(2.0, 0.0), (math.sqrt(5), 1.0)])
    assert ops.impulses[1] == (math.sqrt(5), 1.0)
