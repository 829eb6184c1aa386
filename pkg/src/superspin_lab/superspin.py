"""Deformed connection, coinvariance constraints and superspinor solutions for a boost along x^3.

Layout of the 2x2 connection block ``E``: rows carry the upper index, columns
the lower one, both ordered (0, 3)::

    E = [[eps^0_0, eps^0_3],
         [eps^3_0, eps^3_3]]

so the coinvariance equations read ``E G(alpha) E^T = diag(1, -1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .numkit import as_mat, anticommutator, rank
from .report import CheckReport

ETA = np.diag([1.0, -1.0, -1.0, -1.0])
ETA2 = np.diag([1.0, -1.0])
BAR_CONVENTIONS = ("plain", "adjoint")
Label = Literal["w1", "w2", "u1", "u2"]


class ConstraintViolationError(ValueError):
    pass


class KappaConvergenceError(RuntimeError):
    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class UnsupportedPhaseError(TypeError):
    pass


# -- gamma matrices ----------------------------------------------------------------

_SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True)
class GammaSet:
    matrices: tuple

    def __getitem__(self, mu):
        return self.matrices[mu]

    def clifford_residual(self) -> float:
        worst = 0.0
        for mu in range(4):
            for nu in range(4):
                target = 2 * ETA[mu, nu] * np.eye(4)
                worst = max(worst, float(np.max(np.abs(
                    anticommutator(self.matrices[mu], self.matrices[nu]) - target))))
        return worst


def gamma_set() -> GammaSet:
    """gamma^0 = diag(1, 1, -1, -1), gamma^i = [[0, -sigma_i], [sigma_i, 0]]."""
    z = np.zeros((2, 2), dtype=complex)
    g0 = np.diag([1, 1, -1, -1]).astype(complex)
    gs = [np.block([[z, -s], [s, z]]) for s in _SIGMA]
    return GammaSet((g0, *gs))


GAMMA = gamma_set()
# i * K acting on spinors; i nabla_mu on a plane wave gives eps_mu + kappa_mu * SPIN_T
SPIN_T = GAMMA[3]
SPIN_K = -SPIN_T


# -- metric and connection block -------------------------------------------------------

@dataclass(frozen=True)
class DeformedMetric:
    alpha: float
    mu_l: int
    g: np.ndarray

    def active_block(self) -> np.ndarray:
        idx = [0, self.mu_l]
        return self.g[np.ix_(idx, idx)]


def deformed_metric(alpha: float, mu_l: int = 3) -> DeformedMetric:
    if mu_l not in (1, 2, 3):
        raise ValueError("active axis must be 1, 2 or 3")
    g = ETA.copy()
    c, s = math.cos(alpha), math.sin(alpha)
    g[0, 0], g[mu_l, mu_l] = c, -c
    g[0, mu_l] = g[mu_l, 0] = s
    return DeformedMetric(float(alpha), mu_l, g)


def metric_block(alpha: float) -> np.ndarray:
    c, s = math.cos(alpha), math.sin(alpha)
    return np.array([[c, s], [s, -c]])


def solve_epsilon(alpha: float) -> np.ndarray:
    """Primary branch: the rotation block by alpha/2, equal to I at alpha = 0."""
    c, s = math.cos(alpha / 2), math.sin(alpha / 2)
    return np.array([[c, s], [-s, c]])


def _eps(e00, e03, e30, e33):
    return np.array([[e00, e03], [e30, e33]], dtype=float)


_R2 = math.sqrt(2) / 2
TABULATED_EPSILON = {
    "0": (0.0, _eps(1, 0, 0, 1)),
    "pi/2": (math.pi / 2, _eps(_R2, _R2, -_R2, _R2)),
    "pi": (math.pi, _eps(0, -1, -1, 0)),
    "3pi/2": (3 * math.pi / 2, _eps(_R2, -_R2, _R2, _R2)),
}


def epsilon_residuals(e: np.ndarray, alpha: float) -> dict[str, float]:
    """Signed residuals (lhs - rhs) of the four normalization/torsion equations and the split."""
    (e00, e03), (e30, e33) = np.asarray(e, dtype=float)
    c, s = math.cos(alpha), math.sin(alpha)
    split_cos = (e00 * e30 - e03 * e33) * c
    split_sin = (e00 * e33 + e30 * e03) * s
    return {
        "norm0": (e00 ** 2 - e03 ** 2) * c + 2 * e00 * e03 * s - 1.0,
        "norm3": (e30 ** 2 - e33 ** 2) * c + 2 * e30 * e33 * s + 1.0,
        "torsion": split_cos + split_sin,
        "split_cos": split_cos,
        "split_sin": split_sin,
    }


def factorization_residual(e: np.ndarray, alpha: float) -> float:
    e = np.asarray(e, dtype=float)
    return float(np.max(np.abs(e @ metric_block(alpha) @ e.T - ETA2)))


def embed_epsilon(e: np.ndarray) -> np.ndarray:
    """4x4 eps^mu_nu: the 2x2 block on axes (0, 3), identity on axes 1 and 2."""
    out = np.eye(4)
    idx = [0, 3]
    out[np.ix_(idx, idx)] = e
    return out


# -- connection coefficients ---------------------------------------------------------------

def kappa_constraint(k0: float, k3: float, alpha: float) -> float:
    return (k0 ** 2 - k3 ** 2) * math.cos(alpha) + 2 * k0 * k3 * math.sin(alpha)


def impulse_from_block(e: np.ndarray, s) -> tuple[float, float]:
    """(eps_0, eps_3) = E^T s."""
    v = np.asarray(e, dtype=float).T @ np.asarray(s, dtype=float)
    return float(v[0]), float(v[1])


@dataclass(frozen=True)
class ConnectionCoefficients:
    alpha: float
    eps: np.ndarray
    kappa0: float
    kappa3: float
    m: float
    s: tuple[float, float]
    source: str = field(default="given", compare=False)

    def __post_init__(self):
        e = np.asarray(self.eps, dtype=float)
        if e.shape != (2, 2):
            raise ValueError("eps must be a 2x2 block")
        if not self.m > 0:
            raise ValueError("mass must be positive")
        object.__setattr__(self, "eps", e)
        object.__setattr__(self, "s", (float(self.s[0]), float(self.s[1])))

    @property
    def kappa(self) -> np.ndarray:
        return np.array([self.kappa0, self.kappa3])

    def mass_term(self) -> float:
        return self.m + self.kappa3

    def rank_residual(self) -> float:
        """(eps_0^2 - eps_3^2) - ((m + kappa_3)^2 - kappa_0^2)."""
        e0, e3 = impulse_entries(self)
        return (e0 ** 2 - e3 ** 2) - (self.mass_term() ** 2 - self.kappa0 ** 2)


def impulse_entries(cc: ConnectionCoefficients) -> tuple[float, float]:
    return impulse_from_block(cc.eps, cc.s)


def klein_gordon_check(cc: ConnectionCoefficients) -> float:
    s0, s3 = cc.s
    return abs(s0 ** 2 - s3 ** 2 - cc.m ** 2)


def _plane_wave_scalar(cc: ConnectionCoefficients) -> float:
    # g^{nu lambda} nabla_nu nabla_lambda e^{-i s x}, kappa terms dropped: -(E^T s)^T G (E^T s)
    v = cc.eps.T @ np.asarray(cc.s)
    return float(-(v @ metric_block(cc.alpha) @ v))


@dataclass(frozen=True)
class CoinvarianceResiduals:
    kappa: float
    norm0: float
    norm3: float
    split_cos: float
    split_sin: float
    wave: float

    def as_tuple(self):
        return (self.kappa, self.norm0, self.norm3, self.split_cos, self.split_sin, self.wave)

    def max_abs(self) -> float:
        return max(abs(x) for x in self.as_tuple())


def coinvariance_residual(cc: ConnectionCoefficients) -> CoinvarianceResiduals:
    er = epsilon_residuals(cc.eps, cc.alpha)
    s0, s3 = cc.s
    flat = -(s0 ** 2 - s3 ** 2)
    return CoinvarianceResiduals(
        kappa_constraint(cc.kappa0, cc.kappa3, cc.alpha),
        er["norm0"], er["norm3"], er["split_cos"], er["split_sin"],
        _plane_wave_scalar(cc) - flat,
    )


# -- kappa solver ---------------------------------------------------------------------------

def _kappa_system(k, alpha, m, target):
    k0, k3 = k
    c, s = math.cos(alpha), math.sin(alpha)
    f = np.array([(k0 ** 2 - k3 ** 2) * c + 2 * k0 * k3 * s,
                  (m + k3) ** 2 - k0 ** 2 - target])
    jac = np.array([[2 * k0 * c + 2 * k3 * s, -2 * k3 * c + 2 * k0 * s],
                    [-2 * k0, 2 * (m + k3)]])
    return f, jac


def _newton(k, alpha, m, target, tol, max_iter=60):
    f, jac = _kappa_system(k, alpha, m, target)
    scale = max(1.0, m * m, abs(target), float(np.dot(k, k)))
    best = (float(np.max(np.abs(f))), k)
    for _ in range(max_iter):
        norm = float(np.max(np.abs(f)))
        best = min(best, (norm, k), key=lambda b: b[0])
        if norm <= tol * scale:
            return k, norm
        try:
            step = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError:
            break
        lam = 1.0
        while lam > 1e-6:
            trial = k + lam * step
            ft, jt = _kappa_system(trial, alpha, m, target)
            if np.max(np.abs(ft)) < norm or lam <= 1e-5:
                break
            lam *= 0.5
        k, f, jac = trial, ft, jt
    norm, k = best
    # stagnation at round-off still counts as converged
    if norm <= 100 * tol * scale:
        return k, norm
    raise KappaConvergenceError(f"Newton failed at alpha={alpha:.6g} (residual {norm:.3g})", norm)


def _check_shell(m, s, tol=1e-10):
    s0, s3 = float(s[0]), float(s[1])
    if not m > 0:
        raise ValueError("mass must be positive")
    if abs(s0 * s0 - s3 * s3 - m * m) > tol * max(1.0, m * m):
        raise ConstraintViolationError(f"impulse ({s0}, {s3}) is off the mass shell m={m}")
    return s0, s3


def _rank_target(alpha, s):
    e0, e3 = impulse_from_block(solve_epsilon(alpha), s)
    return e0 * e0 - e3 * e3


def branch_anchor(j: int, m: float, s) -> np.ndarray:
    """Finite root at alpha = j*pi, where the kappa constraint reduces to kappa0 = +-kappa3.

    The branch sits on kappa0 = -kappa3 for even j and kappa0 = kappa3 for odd j; the
    mass relation is then linear in kappa3.
    """
    sign = -1.0 if j % 2 == 0 else 1.0
    k3 = (_rank_target(j * math.pi, s) - m * m) / (2 * m)
    return np.array([sign * k3, k3])


def solve_kappa_branch(alphas, m: float, s, max_step: float = 0.01,
                       tol: float = 1e-13, min_step: float = 1e-9) -> np.ndarray:
    """Kappa roots continued piecewise in alpha.

    On each segment [j pi, (j+1) pi) the root is continued from ``branch_anchor(j)``
    (so (0, 0) at alpha = 0 and (-m, -m) at alpha = pi). Returns shape (len(alphas), 2).
    """
    _check_shell(m, s)
    alphas = np.asarray(alphas, dtype=float).reshape(-1)
    if np.any(alphas < 0) or not np.all(np.isfinite(alphas)):
        raise ValueError("alphas must be finite and non-negative")
    out = np.zeros((alphas.size, 2))
    seg = np.floor(alphas / math.pi + 1e-12).astype(int)
    for j in np.unique(seg):
        a0 = j * math.pi
        anchor = branch_anchor(int(j), m, s)
        sel = np.nonzero(seg == j)[0]
        sel = sel[np.argsort(alphas[sel], kind="stable")]
        hist = [(a0, anchor)]
        direction = np.array([1.0, -1.0]) if j % 2 == 0 else np.array([1.0, 1.0])
        for idx in sel:
            a_target = max(float(alphas[idx]), a0)
            h = max_step
            while hist[-1][0] < a_target:
                a_prev = hist[-1][0]
                # equal sub-steps of at most h up to the target
                a = a_prev + (a_target - a_prev) / math.ceil((a_target - a_prev) / h)
                try:
                    k = _continue_step(hist, a, m, s, tol, direction)
                except KappaConvergenceError:
                    if h < min_step:
                        raise
                    h *= 0.5
                    continue
                hist = [hist[-1], (a, k)]
                h = min(max_step, 2 * h)
            out[idx] = hist[-1][1]
    return out


def _continue_step(hist, a, m, s, tol, direction):
    target = _rank_target(a, s)
    if len(hist) == 1:
        k0 = hist[0][1]
        if np.allclose(k0, 0.0):
            # Jacobian is singular at the origin; step along the branch line first
            t = (target - m * m) / (2 * m * direction[1])
            guess = t * direction
        else:
            guess = k0
        k, _ = _newton(guess, a, m, target, tol)
        return k
    (a1, k1), (a2, k2) = hist[-2], hist[-1]
    guess = k2 + (k2 - k1) * (a - a2) / (a2 - a1)
    k, _ = _newton(guess, a, m, target, tol)
    # a correction much larger than the predictor step means another root was found
    gap = np.linalg.norm(k - guess)
    if gap > 0.5 * np.linalg.norm(guess - k2) + 1e-8 * max(1.0, np.linalg.norm(k2)):
        raise KappaConvergenceError(f"branch jump at alpha={a:.6g}", float(gap))
    return k


def solve_kappa(alpha: float, m: float, s, **kw) -> tuple[float, float]:
    k = solve_kappa_branch([alpha], m, s, **kw)[0]
    return float(k[0]), float(k[1])


def branch_coefficients(alpha: float, m: float, s, kappa=None) -> ConnectionCoefficients:
    """Coefficients on the primary epsilon branch with kappa from continuation."""
    if kappa is None:
        kappa = solve_kappa(alpha, m, s)
    return ConnectionCoefficients(float(alpha), solve_epsilon(alpha), float(kappa[0]),
                                  float(kappa[1]), m, tuple(s), "branch")


def tabulated_coefficients(key: str, m: float, s) -> ConnectionCoefficients:
    """Tabulated epsilon at 0 or pi, with kappa (0, 0) and (-m, -m)."""
    alpha, e = TABULATED_EPSILON[key]
    kappa = {"0": (0.0, 0.0), "pi": (-m, -m)}
    if key not in kappa:
        raise KeyError(f"no tabulated kappa at {key}")
    k0, k3 = kappa[key]
    return ConnectionCoefficients(alpha, e, k0, k3, m, tuple(s), f"table:{key}")


def pi_reading_residuals(m: float, s) -> dict[str, float]:
    """Both readings of the mass relation at alpha = pi on the (-m, -m) branch."""
    cc = tabulated_coefficients("pi", m, s)
    plus = (m + cc.kappa3) ** 2 - cc.kappa0 ** 2
    minus = (m - cc.kappa3) ** 2 - cc.kappa0 ** 2
    return {"plus_reading": plus + m * m, "minus_reading": minus + m * m}


# -- Dirac matrix and spinors -------------------------------------------------------------

def dirac_matrix(cc: ConnectionCoefficients) -> np.ndarray:
    e0, e3 = impulse_entries(cc)
    k0 = cc.kappa0
    mm = cc.mass_term()
    return np.array([
        [e0 - mm, 0, -e3 - k0, 0],
        [0, e0 - mm, 0, e3 + k0],
        [e3 - k0, 0, -e0 - mm, 0],
        [0, -e3 + k0, 0, -e0 - mm],
    ], dtype=complex)


@dataclass(frozen=True)
class SpinorSolution:
    label: str
    components: np.ndarray
    context: ConnectionCoefficients

    def kernel_residual(self) -> float:
        d = dirac_matrix(self.context)
        v = self.components
        nv = np.linalg.norm(v)
        if nv == 0.0:
            return 0.0
        return float(np.linalg.norm(d @ v) / (np.linalg.norm(d, 2) * nv))


def _spinor_vectors(cc):
    e0, e3 = impulse_entries(cc)
    k0, k3, m = cc.kappa0, cc.kappa3, cc.m
    return {
        "w1": np.array([e0 + m + k3, 0, e3 - k0, 0], dtype=complex),
        "w2": np.array([0, e0 + m + k3, 0, -e3 + k0], dtype=complex),
        "u1": np.array([e3 + k0, 0, e0 - m - k3, 0], dtype=complex),
        "u2": np.array([0, -e3 - k0, 0, e0 - m - k3], dtype=complex),
    }


def spinor_solutions(cc: ConnectionCoefficients, tol: float = 1e-9) -> dict[str, SpinorSolution]:
    scale = max(1.0, cc.m ** 2, float(np.dot(cc.s, cc.s)))
    if abs(cc.rank_residual()) > tol * scale:
        raise ConstraintViolationError(
            f"rank constraint violated at alpha={cc.alpha:.6g} (residual {cc.rank_residual():.3g})")
    return {k: SpinorSolution(k, v, cc) for k, v in _spinor_vectors(cc).items()}


def parallel_residual(w: np.ndarray, u: np.ndarray, spin: int) -> float:
    """Relative 2x2 cross product of the paired nonzero components."""
    i, j = (0, 2) if spin == 1 else (1, 3)
    num = abs(w[i] * u[j] - w[j] * u[i])
    den = max(np.linalg.norm(w) * np.linalg.norm(u), 1e-300)
    return float(num / den)


def bar(u: np.ndarray, convention: str = "plain") -> np.ndarray:
    if convention == "plain":
        return np.conj(u)
    if convention == "adjoint":
        return np.conj(u) * np.array([1, 1, -1, -1])
    raise ValueError(f"unknown bar convention {convention!r}; expected one of {BAR_CONVENTIONS}")


def _is_multiple_of_pi(alpha, parity):
    r = math.remainder(alpha - parity * math.pi, 2 * math.pi)
    return abs(r) < 1e-12


def coefficients_at(alpha: float, m: float, s) -> ConnectionCoefficients:
    """Tabulated data at alpha = 0 and pi (mod 2 pi), the continued branch elsewhere."""
    if _is_multiple_of_pi(alpha, 0):
        return tabulated_coefficients("0", m, s)
    if _is_multiple_of_pi(alpha, 1):
        return tabulated_coefficients("pi", m, s)
    return branch_coefficients(alpha, m, s)


def superspinor_relation(alpha: float, m: float, s, bar_convention: str = "plain",
                         tol: float = 1e-12) -> CheckReport:
    if bar_convention not in BAR_CONVENTIONS:
        raise ValueError(f"unknown bar convention {bar_convention!r}")
    _check_shell(m, s)
    here = coefficients_at(alpha, m, s)
    there = coefficients_at(alpha + math.pi, m, s)
    w = spinor_solutions(here)
    u = spinor_solutions(there)
    ub1 = bar(u["u1"].components, bar_convention)
    ub2 = bar(u["u2"].components, bar_convention)
    r1 = float(np.linalg.norm(w["w1"].components + ub1))
    r2 = float(np.linalg.norm(w["w2"].components - ub2))
    phase = float(np.max(np.abs(np.subtract(here.s, there.s))))
    return CheckReport.of(
        f"superspin.superspinor_relation.{bar_convention}", max(r1, r2, phase), tol,
        {"alpha": float(alpha), "m": m, "s": list(here.s),
         "kappa_shifted": [there.kappa0, there.kappa3],
         "spin1_residual": r1, "spin2_residual": r2, "phase_difference": phase,
         "sources": [here.source, there.source]},
        "w1(a) = -bar u1(a+pi), w2(a) = +bar u2(a+pi), same phase four-vector",
    )


# -- gauge covariance -----------------------------------------------------------------------

@dataclass(frozen=True)
class GaugeField:
    A: np.ndarray
    e: float
    a: np.ndarray

    def __post_init__(self):
        if callable(self.a):
            raise UnsupportedPhaseError("only linear phases f(x) = a.x are supported")
        a = np.asarray(self.a, dtype=float).reshape(-1)
        A = np.asarray(self.A, dtype=complex).reshape(-1)
        if a.shape != (4,) or A.shape != (4,):
            raise ValueError("A and a need four components")
        if self.e == 0:
            raise ValueError("charge must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "A", A)


def _covariant_rows(cc, k, A, e, w):
    # (i nabla_mu - e A_mu) applied to w e^{i k x}, evaluated at x = 0
    e4 = embed_epsilon(cc.eps)
    kap = np.array([cc.kappa0, 0.0, 0.0, cc.kappa3])
    rows = []
    for mu in range(4):
        deriv = 1j * (e4[:, mu] @ (1j * k))
        rows.append(deriv * w + 1j * (1j * kap[mu]) * (SPIN_K @ w) - e * A[mu] * w)
    return np.array(rows)


def gauge_transform(psi, gf: GaugeField, cc: ConnectionCoefficients,
                    tol: float = 1e-10) -> tuple[GaugeField, CheckReport]:
    """Shift A by -(1/e) eps^mu_nu d_mu f and check covariance on a plane wave."""
    if callable(psi):
        raise UnsupportedPhaseError("the spinor must be a fixed amplitude, not a function")
    w = np.asarray(getattr(psi, "components", psi), dtype=complex).reshape(-1)
    e4 = embed_epsilon(cc.eps)
    A_new = gf.A - (e4.T @ gf.a) / gf.e
    s = np.array([cc.s[0], 0.0, 0.0, cc.s[1]])
    lhs = _covariant_rows(cc, gf.a - s, A_new, gf.e, w)
    rhs = _covariant_rows(cc, -s, gf.A, gf.e, w)
    res = float(np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(rhs))))
    out = GaugeField(A_new, gf.e, gf.a)
    return out, CheckReport.of("superspin.gauge_covariance", res, tol,
                               {"alpha": cc.alpha, "a": gf.a.tolist(), "e": gf.e},
                               "(i nabla - e A~) e^{if} Psi = e^{if} (i nabla - e A) Psi")


# -- Lagrangian --------------------------------------------------------------------------------

def lagrangian_density(cc: ConnectionCoefficients, spinor) -> complex:
    """(i/2)(Psi^H g^mu nabla_mu Psi - (nabla_mu Psi)^H g^mu Psi - m Psi^H Psi) at x = 0."""
    w = np.asarray(getattr(spinor, "components", spinor), dtype=complex).reshape(-1)
    e0, e3 = impulse_entries(cc)
    shift = {0: e0 * np.eye(4) + cc.kappa0 * SPIN_T, 3: e3 * np.eye(4) + cc.kappa3 * SPIN_T}
    total = 0.0 + 0.0j
    for mu, op in shift.items():
        dpsi = -1j * (op @ w)
        total += np.conj(w) @ GAMMA[mu] @ dpsi - np.conj(dpsi) @ GAMMA[mu] @ w
    total -= cc.m * np.vdot(w, w)
    return complex(0.5j * total)


# -- checks used by the suites -------------------------------------------------------------------

def dirac_rank(cc: ConnectionCoefficients) -> int:
    return rank(dirac_matrix(cc))


def gamma_route_dirac(cc: ConnectionCoefficients) -> np.ndarray:
    """sum_{mu in 0,3} gamma^mu (eps_mu + kappa_mu T) - m."""
    e0, e3 = impulse_entries(cc)
    d = GAMMA[0] @ (e0 * np.eye(4) + cc.kappa0 * SPIN_T)
    d = d + GAMMA[3] @ (e3 * np.eye(4) + cc.kappa3 * SPIN_T)
    return d - cc.m * np.eye(4)


def su2_rotated_gammas(u: np.ndarray) -> tuple[np.ndarray, float]:
    """Conjugate gamma^i by u; return the 3x3 mixing matrix M and the fit residual."""
    u = as_mat(u)
    gi = [GAMMA[i] for i in (1, 2, 3)]
    flat = np.array([g.ravel() for g in gi]).T
    m = np.zeros((3, 3))
    worst = 0.0
    for i, g in enumerate(gi):
        c, *_ = np.linalg.lstsq(flat, (u @ g @ u.conj().T).ravel(), rcond=None)
        worst = max(worst, float(np.linalg.norm(flat @ c - (u @ g @ u.conj().T).ravel())))
        m[i] = c.real
        worst = max(worst, float(np.max(np.abs(c.imag))))
    return m, worst
