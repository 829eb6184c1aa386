"""Boost curves in the oriented Grassmannian of 3-planes in R^6.

A frame is a 3x6 real matrix of rank 3; its Pluecker point is the list of the
20 ordered 3x3 minors. Boost curves are produced by applying the 6x6
cos(4a)/sin(4a) matrices to the standard frame (rows e0, e1, e2). Right
curves (``"right"``) model real frames, left curves (``"left"``) the virtual
ones.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.spatial import cKDTree

from .numkit import DEFAULT_TOL, Tolerance, rank
from .report import CheckReport, separation_report

Orientation = Literal["right", "left"]
ORIENTATIONS: tuple[Orientation, ...] = ("right", "left")

TRIPLES: tuple[tuple[int, int, int], ...] = tuple(itertools.combinations(range(6), 3))
TRIPLE_INDEX = {t: n for n, t in enumerate(TRIPLES)}
STANDARD_FRAME = np.eye(6)[:3]
ALPHA_MAX = math.pi / 4


class DegenerateFrameError(ValueError):
    pass


class OutsideChartError(ValueError):
    pass


def permutation_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] == seq[j]:
                return 0
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def canonical_triple(i0, i1, i2) -> tuple[int, tuple[int, int, int]]:
    """Sign of the sorting permutation and the sorted triple (sign 0 on repeats)."""
    t = (i0, i1, i2)
    for i in t:
        if not 0 <= i <= 5:
            raise ValueError(f"index {i} outside 0..5")
    return permutation_sign(t), tuple(sorted(t))


@dataclass(frozen=True)
class PluckerPoint:
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float).reshape(-1)
        if c.shape != (20,):
            raise ValueError("a Pluecker point has 20 coordinates")
        if not np.any(c != 0.0):
            raise ValueError("all Pluecker coordinates vanish")
        object.__setattr__(self, "coords", c)

    def __getitem__(self, triple) -> float:
        sign, t = canonical_triple(*triple)
        if sign == 0:
            return 0.0
        return sign * self.coords[TRIPLE_INDEX[t]]

    def normalized(self) -> np.ndarray:
        """Scale so the largest-magnitude coordinate is +-1 (positive multiple)."""
        k = int(np.argmax(np.abs(self.coords)))
        return self.coords / abs(self.coords[k])

    def unit(self) -> np.ndarray:
        return self.coords / np.linalg.norm(self.coords)

    def same_point(self, other: "PluckerPoint", atol: float = 1e-10) -> bool:
        return bool(np.allclose(self.unit(), other.unit(), atol=atol, rtol=0))

    def relation_residuals(self) -> np.ndarray:
        """All 225 canonical relations, in ``relation_indices()`` order."""
        coef, ia, ib = _relation_table()
        c = self.coords
        return np.sum(coef * c[ia] * c[ib], axis=1)


P0 = PluckerPoint(np.eye(20)[0])
P_INF = PluckerPoint(-np.eye(20)[0])


@dataclass(frozen=True)
class BoostCurveSpec:
    k: int
    orientation: Orientation
    alpha: float

    def __post_init__(self):
        if self.k not in (1, 2, 3):
            raise ValueError("boost direction k must be 1, 2 or 3")
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be one of {ORIENTATIONS}")
        if not 0.0 <= self.alpha < ALPHA_MAX:
            raise ValueError(f"alpha={self.alpha} outside [0, pi/4)")


def alpha_from_velocity(v: float, orientation: Orientation = "right") -> float:
    """Boost parameter arctan(tanh(v / sqrt(1 - v^2))).

    For the left orientation ``v`` is read as dt/dx^k; the formula is the same.
    """
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}")
    if not 0.0 <= v < 1.0:
        raise ValueError(f"velocity {v} outside [0, 1)")
    a = math.atan(math.tanh(v / math.sqrt(1.0 - v * v)))
    # tanh saturates to 1 in floating point for v near 1; stay inside [0, pi/4)
    return min(a, math.nextafter(ALPHA_MAX, 0.0))


def boost_matrix(k: int, orientation: Orientation, alpha: float) -> np.ndarray:
    """The 6x6 transformation mixing x^k with t^3 (column 3)."""
    c, s = math.cos(4 * alpha), math.sin(4 * alpha)
    if orientation == "left":
        c, s = -c, -s
    m = np.eye(6)
    i = k - 1
    m[i, i], m[i, 3] = c, s
    m[3, i], m[3, 3] = -s, c
    return m


def boost_frame(spec: BoostCurveSpec) -> np.ndarray:
    return STANDARD_FRAME @ boost_matrix(spec.k, spec.orientation, spec.alpha)


def _curve_frame(k, orientation, alpha):
    # unchecked variant for limit evaluation near alpha = pi/4
    return STANDARD_FRAME @ boost_matrix(k, orientation, alpha)


def check_frame(f, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.shape != (3, 6):
        raise ValueError(f"frame must be 3x6, got {f.shape}")
    if rank(f, tol) < 3:
        raise DegenerateFrameError("frame has rank below 3")
    return f


def _minors(f: np.ndarray) -> np.ndarray:
    cols = np.array(TRIPLES)
    return np.linalg.det(np.transpose(f[:, cols], (1, 0, 2)))


def plucker_map(f, tol: Tolerance = DEFAULT_TOL) -> PluckerPoint:
    f = check_frame(f, tol)
    return PluckerPoint(_minors(f))


def plucker_relation(p: PluckerPoint, i0, i1, j0, j1, j2, j3) -> float:
    """F_{i0 i1 j0 j1 j2 j3}(P) = sum_l (-1)^l p_{i0 i1 j_l} p_{j0..^j_l..j3}."""
    if i0 == i1 or len({j0, j1, j2, j3}) < 4:
        raise ValueError("indices must be distinct within each group")
    js = (j0, j1, j2, j3)
    total = 0.0
    for lam in range(4):
        rest = js[:lam] + js[lam + 1:]
        total += (-1) ** lam * p[(i0, i1, js[lam])] * p[rest]
    return total


def relation_indices():
    """All (i0 < i1, j0 < j1 < j2 < j3) index choices."""
    for i in itertools.combinations(range(6), 2):
        for j in itertools.combinations(range(6), 4):
            yield i + j


_TABLE = None


def _relation_table():
    # per relation and term: signed coefficient and the two coordinate indices
    global _TABLE
    if _TABLE is None:
        idx = list(relation_indices())
        coef = np.zeros((len(idx), 4))
        ia = np.zeros((len(idx), 4), dtype=int)
        ib = np.zeros((len(idx), 4), dtype=int)
        for r, (i0, i1, *js) in enumerate(idx):
            for lam in range(4):
                sa, ta = canonical_triple(i0, i1, js[lam])
                sb, tb = canonical_triple(*(js[:lam] + js[lam + 1:]))
                if sa == 0:
                    continue
                coef[r, lam] = (-1) ** lam * sa * sb
                ia[r, lam], ib[r, lam] = TRIPLE_INDEX[ta], TRIPLE_INDEX[tb]
        _TABLE = (coef, ia, ib)
    return _TABLE


def max_relation_residual(p: PluckerPoint) -> float:
    return float(np.max(np.abs(p.relation_residuals())))


def chart_coords(p: PluckerPoint, anchor, tol: Tolerance = DEFAULT_TOL) -> dict:
    anchor = tuple(anchor)
    sign, anchor = canonical_triple(*anchor)
    if sign == 0:
        raise ValueError("anchor indices must be distinct")
    denom = p.coords[TRIPLE_INDEX[anchor]]
    if abs(denom) <= tol.abs_eps * np.max(np.abs(p.coords)):
        raise OutsideChartError(f"p{anchor} ~ 0: point outside the chart")
    return {t: p.coords[TRIPLE_INDEX[t]] / denom for t in TRIPLES if t != anchor}


def curve_tangent(spec: BoostCurveSpec, anchor, h: float = 1e-5,
                  tol: Tolerance = DEFAULT_TOL) -> dict:
    """Central difference of chart coordinates along alpha."""
    def z(a):
        return chart_coords(PluckerPoint(_minors(_curve_frame(spec.k, spec.orientation, a))),
                            anchor, tol)
    up, down = z(spec.alpha + h), z(spec.alpha - h)
    return {t: (up[t] - down[t]) / (2 * h) for t in up}


def curve_limit(k: int, orientation: Orientation, delta: float = 1e-6,
                tol: float = 1e-9) -> PluckerPoint:
    """Limit of the curve as alpha -> pi/4 from below, by Richardson extrapolation."""
    def at(d):
        return _minors(_curve_frame(k, orientation, ALPHA_MAX - d))

    def richardson(d):
        # the error expands in powers of d; cancel orders 1 and 2
        a, b, c = at(d), at(d / 2), at(d / 4)
        r1, r2 = 2 * b - a, 2 * c - b
        return (4 * r2 - r1) / 3

    coarse, fine = richardson(delta), richardson(delta / 2)
    if np.max(np.abs(coarse - fine)) > tol:
        raise ArithmeticError("limit estimate unstable under step halving")
    return PluckerPoint(fine)


EXPECTED_LIMITS = {"right": P_INF, "left": P0}


def check_rotation(r, atol: float = 1e-10) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        raise ValueError("rotation must be 3x3")
    if not np.allclose(r.T @ r, np.eye(3), atol=atol) or abs(np.linalg.det(r) - 1) > atol:
        raise ValueError("not a proper rotation")
    return r


def rotation_block(r) -> np.ndarray:
    b = np.eye(6)
    b[:3, :3] = check_rotation(r)
    return b


def rotate_frame(r, f) -> np.ndarray:
    """Rotate the spatial coordinates x^1..x^3 of every frame vector."""
    return np.asarray(f, dtype=float) @ rotation_block(r).T


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Uniform rotation from a uniform unit quaternion."""
    q = rng.normal(size=4)
    w, x, y, z = q / np.linalg.norm(q)
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
        [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
        [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
    ])


def family_point(k, orientation, alpha, r=None) -> np.ndarray:
    """Unit-norm Pluecker vector of a (rotated) curve point."""
    f = _curve_frame(k, orientation, alpha)
    if r is not None:
        f = rotate_frame(r, f)
    p = _minors(f)
    return p / np.linalg.norm(p)


def intersection_probe(n_samples: int = 10_000, seed: int = 42,
                       exclusion: float = 1e-3, threshold: float = 1e-3) -> CheckReport:
    """Sampled minimum chordal distance between the rotated right and left families.

    Points within ``exclusion`` of P0 or P_inf are dropped before comparing.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    clouds = {}
    for orientation in ORIENTATIONS:
        pts = []
        for _ in range(n_samples):
            k = int(rng.integers(1, 4))
            alpha = float(rng.uniform(0.0, ALPHA_MAX))
            pts.append(family_point(k, orientation, alpha, random_rotation(rng)))
        pts = np.array(pts)
        keep = ((np.linalg.norm(pts - P0.unit(), axis=1) > exclusion)
                & (np.linalg.norm(pts - P_INF.unit(), axis=1) > exclusion))
        clouds[orientation] = pts[keep]
    right, left = clouds["right"], clouds["left"]
    if len(right) == 0 or len(left) == 0:
        dmin = math.inf
    else:
        dmin = float(np.min(cKDTree(left).query(right)[0]))
    return separation_report(
        "grassmann.intersection_probe", dmin, threshold,
        {"n_samples": n_samples, "seed": seed, "exclusion": exclusion,
         "kept_right": int(len(right)), "kept_left": int(len(left))},
        "sampled separation of the rotated right/left families away from P0, P_inf",
    )


HALF_TURN_X3 = np.diag([-1.0, -1.0, 1.0])


def intersection_witness(alpha: float = 0.1, k: int = 1, threshold: float = 1e-3) -> CheckReport:
    """Distance between R.right(alpha) and left(pi/4 - alpha) for the half turn R about x^3 (k=1,2).

    Both planes have the same Pluecker point, so the families meet away from P0, P_inf.
    """
    r = HALF_TURN_X3 if k in (1, 2) else np.diag([1.0, -1.0, -1.0])
    a = family_point(k, "right", alpha, r)
    b = family_point(k, "left", ALPHA_MAX - alpha)
    dist = float(np.linalg.norm(a - b))
    far = min(np.linalg.norm(a - P0.unit()), np.linalg.norm(a - P_INF.unit()))
    return separation_report(
        "grassmann.intersection_witness", dist, threshold,
        {"alpha": alpha, "k": k, "distance_from_P0_Pinf": float(far)},
        "explicit pair: half-turn-rotated right curve point vs left curve point at pi/4 - alpha",
    )
