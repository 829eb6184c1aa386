"""Finite fermionic Fock space with the particle/antiparticle identification B_l = (-1)^l D_l^H.

Modes are (l, s) pairs; the impulse grid is a list of on-shell (s0, s3) points.
Operators are built with parity strings so that every entry is 0 or +-1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .report import CheckReport

MAX_MODES = 6
_LOWER = np.array([[0, 1], [0, 0]], dtype=float)
_PARITY = np.diag([1.0, -1.0])


@dataclass(frozen=True)
class ModeIndex:
    l: int
    s: int

    def __post_init__(self):
        if self.l not in (1, 2):
            raise ValueError("spin label must be 1 or 2")
        if self.s < 0:
            raise ValueError("impulse index must be non-negative")

    @property
    def sign(self) -> int:
        return -1 if self.l % 2 else 1


@dataclass(frozen=True)
class FockOperators:
    modes: tuple
    impulses: tuple
    B: tuple
    D: tuple
    vacuum: np.ndarray

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    @property
    def dim(self) -> int:
        return self.vacuum.size


def _kron_all(mats):
    out = np.ones((1, 1))
    for m in mats:
        out = np.kron(out, m)
    return out


def lowering(j: int, n: int) -> np.ndarray:
    """Parity string on modes before j, lowering block on mode j."""
    return _kron_all([_PARITY] * j + [_LOWER] + [np.eye(2)] * (n - j - 1))


def mode_list(n_impulses: int) -> tuple:
    return tuple(ModeIndex(l, s) for s in range(n_impulses) for l in (1, 2))


def build_fock(n_modes: int, mass: float = 1.0, impulse_grid=None, tol: float = 1e-10) -> FockOperators:
    """Operators for ``n_modes`` modes; spins alternate within each impulse.

    ``impulse_grid`` needs ceil(n_modes / 2) on-shell points; the default is
    s3 = 0, 1, 2, ... with s0 fixed by the mass shell.
    """
    if not 1 <= n_modes <= MAX_MODES:
        raise ValueError(f"n_modes must be between 1 and {MAX_MODES}")
    n_imp = (n_modes + 1) // 2
    if impulse_grid is None:
        impulse_grid = [(float(np.hypot(mass, k)), float(k)) for k in range(n_imp)]
    grid = [tuple(map(float, p)) for p in impulse_grid]
    if len(grid) < n_imp:
        raise ValueError(f"need {n_imp} impulse points for {n_modes} modes")
    for s0, s3 in grid:
        if abs(s0 * s0 - s3 * s3 - mass * mass) > tol * max(1.0, mass * mass):
            raise ValueError(f"impulse ({s0}, {s3}) is off the mass shell m={mass}")
    modes = mode_list(n_imp)[:n_modes]
    b = tuple(lowering(j, n_modes) for j in range(n_modes))
    d = tuple(md.sign * bj.T for md, bj in zip(modes, b))
    vac = np.zeros(2 ** n_modes)
    vac[0] = 1.0
    return FockOperators(modes, tuple(grid[:n_imp]), b, d, vac)


def _ac(x, y):
    return x @ y + y @ x


def car_residual(ops: FockOperators) -> float:
    eye = np.eye(ops.dim)
    worst = 0.0
    for i, bi in enumerate(ops.B):
        for j, bj in enumerate(ops.B):
            worst = max(worst, np.max(np.abs(_ac(bi, bj.T) - (i == j) * eye)),
                        np.max(np.abs(_ac(bi, bj))))
    return float(worst)


def identification_residual(ops: FockOperators) -> float:
    return float(max(np.max(np.abs(b - m.sign * d.T)) for m, b, d in zip(ops.modes, ops.B, ops.D)))


def vacuum_residual(ops: FockOperators) -> float:
    return float(max(np.max(np.abs(b @ ops.vacuum)) for b in ops.B))


def nilpotency_residual(ops: FockOperators) -> float:
    return float(max(max(np.max(np.abs(b @ b)), np.max(np.abs(b.T @ b.T))) for b in ops.B))


def anticommutator_suite(ops: FockOperators) -> CheckReport:
    """Chain equalities for every mode pair, with the sign (-1)^l of the first mode."""
    chain = 0.0
    vanish = 0.0
    signs = {}
    for i, (mi, bi, di) in enumerate(zip(ops.modes, ops.B, ops.D)):
        for j, (bj, dj) in enumerate(zip(ops.B, ops.D)):
            sg = mi.sign
            signs[f"{i},{j}"] = sg
            # {D_i^H, B_j} = sign {B_i, B_j} = {B_i, D_j^H}
            first = (_ac(di.T, bj), sg * _ac(bi, bj), _ac(bi, dj.T))
            # {B_i^H, D_j} = sign {D_i, D_j} = {D_i, B_j^H}
            second = (_ac(bi.T, dj), sg * _ac(di, dj), _ac(di, bj.T))
            for a, b, c in (first, second):
                chain = max(chain, np.max(np.abs(a - b)), np.max(np.abs(b - c)))
            vanish = max(vanish, np.max(np.abs(_ac(bi, bj))), np.max(np.abs(_ac(di, dj))))
    residual = float(max(chain, vanish, car_residual(ops), identification_residual(ops)))
    return CheckReport.of(
        "fockstat.anticommutator_chain", residual, 0.0,
        {"n_modes": ops.n_modes, "chain_residual": float(chain),
         "bb_dd_residual": float(vanish), "signs": signs},
        "CAR, the identification B = (-1)^l D^H and the anticommutator chain for all pairs",
    )


def exclusion_check(ops: FockOperators) -> CheckReport:
    single = [float(np.linalg.norm(b.T @ ops.vacuum)) for b in ops.B]
    double_same = [float(np.linalg.norm(b.T @ b.T @ ops.vacuum)) for b in ops.B]
    double_diff = [float(np.linalg.norm(bi.T @ bj.T @ ops.vacuum))
                   for i, bi in enumerate(ops.B) for j, bj in enumerate(ops.B) if i != j]
    residual = max(max(double_same), max(abs(x - 1.0) for x in single),
                   max((abs(x - 1.0) for x in double_diff), default=0.0),
                   vacuum_residual(ops), nilpotency_residual(ops))
    return CheckReport.of(
        "fockstat.exclusion", residual, 0.0,
        {"n_modes": ops.n_modes, "single_norms": single, "double_same_norms": double_same},
        "two creations in the same mode give zero; distinct modes give unit states",
    )
