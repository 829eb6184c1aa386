"""Small dense complex matrix kernels shared by the rest of the package.

Matrices are plain ``numpy`` arrays of ``complex128``; every function here is
pure and never mutates its inputs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SERIES_ORDER = 12
SCALING_BOUND = 0.5


class DimensionError(ValueError):
    pass


class NotNearIdentityError(ValueError):
    pass


@dataclass(frozen=True)
class Tolerance:
    abs_eps: float = 1e-10
    rank_eps: float = 1e-8

    def __post_init__(self):
        if not (self.abs_eps > 0 and self.rank_eps > 0):
            raise ValueError("tolerances must be positive")


DEFAULT_TOL = Tolerance()


def as_mat(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D complex array and reject NaN/Inf entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or 0 in m.shape:
        raise DimensionError(f"{name} must be a non-empty 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def _square(a, name):
    m = as_mat(a, name)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")
    return m


def bracket(a, b) -> np.ndarray:
    """Commutator ``AB - BA``."""
    a = _square(a, "A")
    b = _square(b, "B")
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch {a.shape} vs {b.shape}")
    return a @ b - b @ a


def anticommutator(a, b) -> np.ndarray:
    a = _square(a, "A")
    b = _square(b, "B")
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch {a.shape} vs {b.shape}")
    return a @ b + b @ a


def expm(x) -> np.ndarray:
    """Matrix exponential by scaling and squaring around a degree-12 Taylor polynomial.

    The argument is scaled by ``2**-k`` until its 1-norm drops below 0.5.
    """
    x = _square(x, "X")
    n = x.shape[0]
    norm = np.linalg.norm(x, 1)
    k = 0
    if norm >= SCALING_BOUND:
        k = int(np.ceil(np.log2(norm / SCALING_BOUND))) + 1
    y = x / (2.0 ** k)
    eye = np.eye(n, dtype=complex)
    # Horner: I + y(I + y/2(I + y/3(...)))
    result = eye.copy()
    for j in range(SERIES_ORDER, 0, -1):
        result = eye + (y @ result) / j
    for _ in range(k):
        result = result @ result
    return result


def _sqrtm_db(u: np.ndarray, iters: int = 60) -> np.ndarray:
    # Denman-Beavers iteration; converges quadratically for spectra off the negative axis
    y = u.copy()
    z = np.eye(u.shape[0], dtype=complex)
    for _ in range(iters):
        y_next = 0.5 * (y + np.linalg.inv(z))
        z_next = 0.5 * (z + np.linalg.inv(y))
        if np.linalg.norm(y_next - y) <= 1e-15 * max(1.0, np.linalg.norm(y)):
            return y_next
        y, z = y_next, z_next
    return y


def logm_near_identity(u, max_terms: int = 80) -> np.ndarray:
    """Principal logarithm of a matrix with ``||U - I||_2 < 1``.

    Inverse scaling and squaring: square roots are taken until the matrix is
    within 0.05 of the identity, then the Mercator series is summed.
    """
    u = _square(u, "U")
    n = u.shape[0]
    eye = np.eye(n, dtype=complex)
    if np.linalg.norm(u - eye, 2) >= 1.0:
        raise NotNearIdentityError(
            f"||U - I|| = {np.linalg.norm(u - eye, 2):.3g} is not below 1"
        )
    k = 0
    v = u
    while np.linalg.norm(v - eye, 2) > 0.05:
        v = _sqrtm_db(v)
        k += 1
    e = v - eye
    total = np.zeros_like(e)
    power = eye
    for j in range(1, max_terms + 1):
        power = power @ e
        term = power / j
        total = total + term if j % 2 else total - term
        if np.linalg.norm(term) < 1e-18:
            break
    return total * (2.0 ** k)


def singular_values(m) -> np.ndarray:
    return np.linalg.svd(as_mat(m), compute_uv=False)


def rank(m, tol: Tolerance = DEFAULT_TOL) -> int:
    """Count singular values above ``rank_eps`` times the largest one."""
    s = singular_values(m)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol.rank_eps * s[0]))


def nullspace(m, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal kernel basis, returned as a list of column vectors."""
    m = as_mat(m)
    _, s, vh = np.linalg.svd(m)
    r = 0 if s.size == 0 or s[0] == 0.0 else int(np.sum(s > tol.rank_eps * s[0]))
    return [vh[i].conj().reshape(-1, 1) for i in range(r, m.shape[1])]


def is_hermitian(m, atol: float = 1e-12) -> bool:
    m = as_mat(m)
    return bool(np.allclose(m, m.conj().T, atol=atol, rtol=0))


def unitarity_defect(u) -> float:
    u = as_mat(u)
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]), 2))
