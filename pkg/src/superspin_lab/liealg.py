"""Generator matrices of the boost/rotation algebras and their su(4) counterpart.

Conventions
-----------
* so(6) generators are the Hermitian 6x6 matrices with entries 0, +-i exactly
  as displayed for the right (bar) and left (arrow) families.
* su(4) generators are stored as the displayed anti-Hermitian 4x4 matrices
  (``su4_generator``). Their Hermitian realization is ``1j * display``; that
  sign makes the su(4) structure constants coincide with the right so(6)
  sextet.
* Structure constants follow ``[e_a, e_b] = i sum_c c[a, b, c] e_c`` for
  Hermitian bases.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .numkit import (DEFAULT_TOL, Tolerance, bracket, expm, logm_near_identity,
                     nullspace, unitarity_defect)
from .report import CheckReport

Side = Literal["right", "left", "joint"]
Rep = Literal["so6", "su4"]
JOINT_ORDER = ("J1", "J2", "J3", "K1", "K2", "K3")


class ClosureError(ValueError):
    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class OutsideSubspaceError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorName:
    kind: Literal["J", "K"]
    index: int
    side: Side

    def __post_init__(self):
        if self.kind not in ("J", "K") or self.index not in (1, 2, 3):
            raise ValueError(f"bad generator {self.kind}{self.index}")
        if self.side not in ("right", "left", "joint"):
            raise ValueError(f"bad side {self.side}")

    @classmethod
    def parse(cls, label: str, side: Side) -> "GeneratorName":
        return cls(label[0], int(label[1]), side)


def _rot6(i, j):
    m = np.zeros((6, 6), dtype=complex)
    m[i, j], m[j, i] = 1j, -1j
    return m


# (row, col) of the +i entry in each displayed 6x6 generator
_SO6_DISPLAY = {
    ("K", 1, "right"): (0, 3),
    ("K", 2, "right"): (1, 3),
    ("K", 3, "right"): (2, 3),
    ("J", 1, "right"): (1, 2),
    ("J", 2, "right"): (0, 2),
    ("J", 3, "right"): (0, 1),
    ("K", 1, "left"): (2, 5),
    ("K", 2, "left"): (2, 4),
    ("K", 3, "left"): (2, 3),
}


def so6_generator(name: GeneratorName) -> np.ndarray:
    key = (name.kind, name.index, name.side)
    if key not in _SO6_DISPLAY:
        if name.side == "left" and name.kind == "J":
            raise KeyError("left rotations are not displayed; use derive_left_rotations()")
        raise KeyError(f"no displayed so(6) matrix for {key}")
    return _rot6(*_SO6_DISPLAY[key])


def right_sextet() -> list[np.ndarray]:
    return [so6_generator(GeneratorName.parse(n, "right")) for n in JOINT_ORDER]


def left_boosts() -> list[np.ndarray]:
    return [so6_generator(GeneratorName("K", i, "left")) for i in (1, 2, 3)]


def derive_left_rotations() -> list[np.ndarray]:
    """J_left_i = -i [K_left_j, K_left_k] for cyclic (i, j, k)."""
    k1, k2, k3 = left_boosts()
    return [-1j * bracket(k2, k3), -1j * bracket(k3, k1), -1j * bracket(k1, k2)]


def left_sextet() -> list[np.ndarray]:
    return derive_left_rotations() + left_boosts()


_H = 0.5
_SU4_DISPLAY = {
    "J1": _H * np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]], dtype=complex),
    "J2": _H * np.array([[0, 1j, 0, 0], [1j, 0, 0, 0], [0, 0, 0, 1j], [0, 0, 1j, 0]]),
    "J3": _H * np.diag([1j, -1j, 1j, -1j]),
    "K3": _H * np.array([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]], dtype=complex),
    "K2": _H * np.array([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]], dtype=complex),
    "K1": _H * np.array([[0, 0, 0, 1j], [0, 0, -1j, 0], [0, -1j, 0, 0], [1j, 0, 0, 0]]),
}


def su4_generator(name: GeneratorName) -> np.ndarray:
    """Displayed (anti-Hermitian) su(4) matrix."""
    if name.side != "joint":
        raise KeyError("su(4) generators exist only for the joint algebra")
    return _SU4_DISPLAY[f"{name.kind}{name.index}"].copy()


def su4_display_basis() -> list[np.ndarray]:
    return [su4_generator(GeneratorName.parse(n, "joint")) for n in JOINT_ORDER]


def joint_basis(rep: Rep) -> list[np.ndarray]:
    """Hermitian basis (J1, J2, J3, K1, K2, K3) of the joint algebra.

    so6: J_i = J_right_i + J_left_i, K3 shared, K1 = -i[J2, K3], K2 = i[J1, K3].
    su4: ``1j`` times the displayed matrices.
    """
    if rep == "su4":
        return [1j * a for a in su4_display_basis()]
    if rep != "so6":
        raise ValueError(f"unknown representation {rep!r}")
    jr = right_sextet()[:3]
    jl = derive_left_rotations()
    j = [a + b for a, b in zip(jr, jl)]
    k3 = so6_generator(GeneratorName("K", 3, "right"))
    k1 = -1j * bracket(j[1], k3)
    k2 = 1j * bracket(j[0], k3)
    return j + [k1, k2, k3]


# -- real-span linear algebra -------------------------------------------------

def _realvec(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex).ravel()
    return np.concatenate([m.real, m.imag])


def _realmat(basis) -> np.ndarray:
    return np.array([_realvec(b) for b in basis]).T


def real_span_dim(mats, tol: float = 1e-9) -> int:
    if not mats:
        return 0
    return int(np.linalg.matrix_rank(_realmat(mats), tol))


def real_coordinates(basis, m) -> tuple[np.ndarray, float]:
    """Least-squares real coefficients of ``m`` over ``basis`` and the residual norm."""
    a = _realmat(basis)
    y = _realvec(m)
    coef, *_ = np.linalg.lstsq(a, y, rcond=None)
    return coef, float(np.linalg.norm(a @ coef - y))


@dataclass(frozen=True)
class StructureConstants:
    tensor: np.ndarray

    @property
    def dim(self) -> int:
        return self.tensor.shape[0]

    def antisymmetry_residual(self) -> float:
        return float(np.max(np.abs(self.tensor + self.tensor.transpose(1, 0, 2))))

    def jacobi_residual(self) -> float:
        c = self.tensor
        # ad(e_a)_{cb} = i c[a, b, c]; Jacobi <=> [ad a, ad b] = i c[a,b,k] ad k
        ad = [1j * c[a].T for a in range(self.dim)]
        worst = 0.0
        for a in range(self.dim):
            for b in range(self.dim):
                lhs = ad[a] @ ad[b] - ad[b] @ ad[a]
                rhs = sum(1j * c[a, b, k] * ad[k] for k in range(self.dim))
                worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        return worst

    def bracket_coeffs(self, x, y) -> np.ndarray:
        """Coefficients z with [X, Y] = i Z for coefficient vectors x, y."""
        return np.einsum("a,b,abc->c", np.asarray(x, float), np.asarray(y, float), self.tensor)


def fit_structure_constants(basis) -> tuple[StructureConstants, float]:
    """Least-squares constants and the worst distance of a bracket from the span."""
    n = len(basis)
    c = np.zeros((n, n, n))
    worst = 0.0
    for a in range(n):
        for b in range(a + 1, n):
            coef, res = real_coordinates(basis, -1j * bracket(basis[a], basis[b]))
            worst = max(worst, res)
            c[a, b], c[b, a] = coef, -coef
    return StructureConstants(c), worst


def structure_constants(basis, tol: float = 1e-10) -> StructureConstants:
    sc, worst = fit_structure_constants(basis)
    if worst > tol:
        raise ClosureError(f"brackets leave the span (residual {worst:.3g})", worst)
    return sc


def generated_algebra(generators, tol: float = 1e-9, max_rounds: int = 10) -> list[np.ndarray]:
    """Real basis of the Lie algebra generated by Hermitian matrices (bracket -i[., .])."""
    basis: list[np.ndarray] = []

    def absorb(m):
        if real_span_dim(basis + [m], tol) > len(basis):
            basis.append(m)

    for g in generators:
        absorb(g)
    for _ in range(max_rounds):
        size = len(basis)
        for a in list(basis):
            for b in list(basis):
                absorb(-1j * bracket(a, b))
        if len(basis) == size:
            return basis
    raise RuntimeError("generated algebra did not stabilize")


def algebra_intersection(span1, span2, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Basis of span_R(span1) & span_R(span2)."""
    if not span1 or not span2:
        return []
    a = _realmat(span1)
    b = _realmat(span2)
    ker = nullspace(np.hstack([a, -b]), Tolerance(tol.abs_eps, 1e-9))
    if not ker:
        return []
    coeffs = np.real(np.hstack([v for v in ker]))[: len(span1)]
    vecs = a @ coeffs
    # orthonormal basis of the intersection (columns may be dependent if span1 is)
    u, s, _ = np.linalg.svd(vecs, full_matrices=False)
    r = int(np.sum(s > 1e-9 * max(s.max(), 1.0)))
    shape = np.asarray(span1[0]).shape
    half = vecs.shape[0] // 2
    return [(u[:half, i] + 1j * u[half:, i]).reshape(shape) for i in range(r)]


# -- the printed bracket table ---------------------------------------------------

# (first, second) -> (sign, result) as printed for the right sextet
PRINTED_BRACKET_TABLE = {
    ("K1", "K2"): (1, "J3"), ("K2", "K3"): (1, "J1"), ("K3", "K1"): (1, "J2"),
    ("J1", "J2"): (1, "J3"), ("J2", "J3"): (1, "J1"), ("J3", "J1"): (1, "J2"),
    ("J1", "K2"): (1, "K3"), ("J1", "K3"): (-1, "K2"), ("J2", "K1"): (1, "K3"),
    ("J2", "K3"): (1, "K1"), ("J3", "K1"): (1, "K2"), ("J3", "K2"): (-1, "K1"),
}


def printed_table_tensor() -> StructureConstants:
    """Structure constants as printed, with every unlisted bracket zero."""
    idx = {n: i for i, n in enumerate(JOINT_ORDER)}
    c = np.zeros((6, 6, 6))
    for (a, b), (sign, res) in PRINTED_BRACKET_TABLE.items():
        c[idx[a], idx[b], idx[res]] = sign
        c[idx[b], idx[a], idx[res]] = -sign
    return StructureConstants(c)


def bracket_table_check() -> CheckReport:
    """Compare the right sextet brackets against the printed table, entry by entry."""
    computed = structure_constants(right_sextet()).tensor
    printed = printed_table_tensor().tensor
    diff = np.abs(computed - printed)
    bad = sorted({tuple(sorted((JOINT_ORDER[a], JOINT_ORDER[b])))
                  for a, b, _ in zip(*np.nonzero(diff > 1e-12))})
    return CheckReport.of(
        "liealg.gbar_bracket_table", float(diff.max()), 1e-12,
        {"mismatched_pairs": [f"[{a},{b}]" for a, b in bad]},
        "right sextet brackets vs the printed table (unlisted brackets zero)",
    )


def printed_table_jacobi_check() -> CheckReport:
    r = printed_table_tensor().jacobi_residual()
    return CheckReport.of("liealg.printed_table_jacobi", r, 1e-10, {},
                          "Jacobi identity of the printed bracket table taken as structure constants")


# -- algebra elements and the su4 -> so6 map ----------------------------------------

@dataclass(frozen=True)
class AlgebraElement:
    coeffs: np.ndarray
    rep: Rep

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float).reshape(-1)
        if c.shape != (6,):
            raise ValueError("joint-algebra elements have 6 coefficients")
        if self.rep not in ("so6", "su4"):
            raise ValueError(f"unknown representation {self.rep!r}")
        object.__setattr__(self, "coeffs", c)

    def realize(self) -> np.ndarray:
        return sum(c * e for c, e in zip(self.coeffs, joint_basis(self.rep)))

    @classmethod
    def basis(cls, label: str, rep: Rep = "su4") -> "AlgebraElement":
        c = np.zeros(6)
        c[JOINT_ORDER.index(label)] = 1.0
        return cls(c, rep)


def element_bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Element Z with realize(Z) = -i [realize(X), realize(Y)]; requires closure."""
    if x.rep != y.rep:
        raise ValueError("representations differ")
    z = -1j * bracket(x.realize(), y.realize())
    coef, res = real_coordinates(joint_basis(x.rep), z)
    if res > 1e-10:
        raise ClosureError(f"bracket leaves the joint span (residual {res:.3g})", res)
    return AlgebraElement(coef, x.rep)


def iso_map(x: AlgebraElement) -> AlgebraElement:
    if x.rep != "su4":
        raise ValueError("iso_map expects an su4 element")
    return AlgebraElement(x.coeffs, "so6")


# -- symmetric-space structure -----------------------------------------------------

def _inner_raw(a, b) -> float:
    return float(np.real(np.trace(a @ np.conj(b).T)))


def _k_basis():
    return su4_display_basis()[3:]


def _j_basis():
    return su4_display_basis()[:3]


METRIC_SCALE = 1.0 / _inner_raw(_SU4_DISPLAY["K3"], _SU4_DISPLAY["K3"])


def inner(a, b) -> float:
    """Invariant inner product c * Re tr(A B^H), c fixed by <K3, K3> = 1."""
    return METRIC_SCALE * _inner_raw(a, b)


def _split_components(m):
    # components of a real-form element along j and k (display basis is orthonormal)
    j = np.array([inner(m, e) for e in _j_basis()])
    k = np.array([inner(m, e) for e in _k_basis()])
    return j, k


def cartan_decomposition_check(tol: float = 1e-10) -> CheckReport:
    """[j, k] in k, [k, k] in j, and theta(J + K) = J - K preserves brackets."""
    js, ks = _j_basis(), _k_basis()
    basis = js + ks
    worst_jk = max(np.max(np.abs(_split_components(bracket(a, b))[0])) for a in js for b in ks)
    worst_kk = max(np.max(np.abs(_split_components(bracket(a, b))[1])) for a in ks for b in ks)
    worst_jj = max(np.max(np.abs(_split_components(bracket(a, b))[1])) for a in js for b in js)

    def theta(m):
        jc, kc = _split_components(m)
        return sum(c * e for c, e in zip(jc, js)) - sum(c * e for c, e in zip(kc, ks))

    worst_theta = max(float(np.max(np.abs(theta(bracket(a, b)) - bracket(theta(a), theta(b)))))
                      for a in basis for b in basis)
    residual = max(worst_jk, worst_kk, worst_jj, worst_theta)
    return CheckReport.of(
        "liealg.cartan", residual, tol,
        {"jk_along_j": float(worst_jk), "kk_along_k": float(worst_kk),
         "jj_along_k": float(worst_jj), "involution": float(worst_theta)},
        "su4 joint basis: [j,k] in k, [k,k] in j, theta an automorphism",
    )


def _require_in_k(m, tol=1e-10):
    jc, kc = _split_components(m)
    rebuilt = sum(c * e for c, e in zip(kc, _k_basis()))
    if np.max(np.abs(m - rebuilt)) > tol:
        raise OutsideSubspaceError("argument is not in span(k)")


def curvature(x, y, z) -> np.ndarray:
    """R(X, Y)Z = -[[X, Y], Z] for real-form (displayed) elements of k."""
    for m in (x, y, z):
        _require_in_k(m)
    return -bracket(bracket(x, y), z)


def sectional_curvature(x, y) -> float:
    _require_in_k(x)
    _require_in_k(y)
    denom = inner(x, x) * inner(y, y) - inner(x, y) ** 2
    if denom <= 1e-12 * max(inner(x, x) * inner(y, y), 1e-300):
        raise ValueError("arguments are linearly dependent")
    return inner(curvature(x, y, y), x) / denom


def random_k_element(rng: np.random.Generator) -> np.ndarray:
    return sum(c * e for c, e in zip(rng.normal(size=3), _k_basis()))


def sectional_curvature_check(n_planes: int = 100, seed: int = 42, tol: float = 1e-9) -> CheckReport:
    rng = np.random.default_rng(seed)
    vals = np.array([sectional_curvature(random_k_element(rng), random_k_element(rng))
                     for _ in range(n_planes)])
    return CheckReport.of("liealg.sectional_curvature", float(np.max(np.abs(vals - 1.0))), tol,
                          {"n_planes": n_planes, "seed": seed,
                           "min": float(vals.min()), "max": float(vals.max())},
                          "sectional curvature of random 2-planes in k")


# -- covering map ---------------------------------------------------------------------

def xi(u: np.ndarray) -> np.ndarray:
    """Near-identity covering map: coefficient-preserving transfer of log(u) to so(6)."""
    log_u = logm_near_identity(u)
    # log_u = i * sum c_a H_a over the Hermitian su4 basis
    coef, res = real_coordinates(joint_basis("su4"), -1j * log_u)
    if res > 1e-8:
        raise ClosureError(f"log(u) outside the joint algebra (residual {res:.3g})", res)
    return expm(1j * AlgebraElement(coef, "so6").realize())


def one_parameter_paths(x: AlgebraElement, ts) -> tuple[list[np.ndarray], list[np.ndarray]]:
    hs = x.realize() if x.rep == "su4" else AlgebraElement(x.coeffs, "su4").realize()
    hg = iso_map(AlgebraElement(x.coeffs, "su4")).realize()
    return [expm(1j * t * hs) for t in ts], [expm(1j * t * hg) for t in ts]


def covering_check(x: AlgebraElement, t_max: float = 4 * math.pi, n_steps: int = 400,
                   probe: AlgebraElement | None = None, tol: float = 1e-10) -> CheckReport:
    """Walk t in [0, t_max] along exp(t i X) in both representations.

    Wherever the so6 element is the identity the su4 element must be +-I; each
    small step factor u must satisfy Xi(u) = step in so6, and Xi(u v) = Xi(u) Xi(v)
    for v a small step along ``probe``.
    """
    dt = t_max / n_steps
    if dt * np.max(np.abs(np.linalg.eigvalsh(x.realize()))) >= 0.5:
        raise ValueError("step too large for the near-identity logarithm")
    ts = np.linspace(0.0, t_max, n_steps + 1)
    us, gs = one_parameter_paths(x, ts)
    n4, n6 = us[0].shape[0], gs[0].shape[0]
    kernel_dev = 0.0
    t_minus = t_plus = None
    for t, u, g in zip(ts[1:], us[1:], gs[1:]):
        if np.max(np.abs(g - np.eye(n6))) < 1e-8:
            dev_p = np.max(np.abs(u - np.eye(n4)))
            dev_m = np.max(np.abs(u + np.eye(n4)))
            kernel_dev = max(kernel_dev, min(dev_p, dev_m))
            if dev_m < 1e-8 and t_minus is None:
                t_minus = float(t)
            if dev_p < 1e-8 and t_plus is None:
                t_plus = float(t)
    step_u, step_g = one_parameter_paths(x, [dt])
    step_res = float(np.max(np.abs(xi(step_u[0]) - step_g[0])))
    if probe is None:
        c = x.coeffs
        probe = AlgebraElement(np.concatenate([np.roll(c[:3], 1), np.roll(c[3:], 1)]), "su4")
    v = expm(1j * dt * AlgebraElement(probe.coeffs, "su4").realize())
    hom_res = float(np.max(np.abs(xi(step_u[0] @ v) - xi(step_u[0]) @ xi(v))))
    residual = max(kernel_dev, step_res, hom_res)
    return CheckReport.of(
        "liealg.covering", residual, tol,
        {"coeffs": x.coeffs.tolist(), "t_max": t_max, "n_steps": n_steps,
         "first_t_su4_minus_identity": t_minus, "first_t_su4_identity": t_plus,
         "kernel_deviation": float(kernel_dev), "step_residual": step_res,
         "homomorphism_residual": hom_res},
        "two-to-one witness along exp(t i X); so6 identity must lift to +-I",
    )


# -- Spin(1,3) membership ----------------------------------------------------------

def spin_generators(gammas) -> dict[tuple[int, int], np.ndarray]:
    """Real-form Lorentz generators i * sigma^{mu nu} = -(1/4)[gamma^mu, gamma^nu]."""
    out = {}
    for mu in range(4):
        for nu in range(mu + 1, 4):
            sigma = 0.25j * bracket(gammas[mu], gammas[nu])
            out[(mu, nu)] = 1j * sigma
    return out


def spin_membership_check(gammas=None, tol: float = 1e-10) -> CheckReport:
    from .superspin import gamma_set

    g = gammas if gammas is not None else gamma_set().matrices
    gens = spin_generators(g)
    rotations = [gens[(1, 2)], gens[(1, 3)], gens[(2, 3)]]
    boosts = [gens[(0, 1)], gens[(0, 2)], gens[(0, 3)]]
    js = _j_basis()
    # (a) rotation generators span the same real space as the J's
    span_gap = max(real_coordinates(js, r)[1] for r in rotations)
    span_gap = max(span_gap, max(real_coordinates(rotations, j)[1] for j in js))
    inter = algebra_intersection(su4_display_basis(), list(gens.values()))
    # (b) rotations exponentiate to unitaries
    rot_defect = max(unitarity_defect(expm(theta * r)) for r in rotations for theta in (0.1, 1.0, 3.0))
    # (c) boosts do not
    boost_defects = [unitarity_defect(expm(b)) for b in boosts]
    # (d) conjugation by UG keeps boosts non-unitary
    u = expm(su4_generator(GeneratorName("K", 3, "joint")))
    conj_defects = [unitarity_defect(u @ expm(b) @ u.conj().T) for b in boosts]
    non_unitary_gap = max(0.0, 0.1 - min(boost_defects + conj_defects))
    residual = max(span_gap, rot_defect, non_unitary_gap, abs(len(inter) - 3))
    return CheckReport.of(
        "liealg.spin_membership", residual, tol,
        {"rotation_span_residual": float(span_gap), "rotation_unitarity_defect": float(rot_defect),
         "min_boost_unitarity_defect": float(min(boost_defects)),
         "min_conjugated_boost_defect": float(min(conj_defects)),
         "ug_spin_intersection_dim": len(inter)},
        "UG meets Spin(1,3) in the rotation subgroup generated by j",
    )


def covering_witness(label: str = "J3", tol: float = 1e-10) -> CheckReport:
    """su4 and so6 one-parameter groups of a generator at t = 2 pi and 4 pi."""
    x = AlgebraElement.basis(label, "su4")
    (u2, u4), (g2, g4) = one_parameter_paths(x, [2 * math.pi, 4 * math.pi])
    i4, i6 = np.eye(4), np.eye(6)
    devs = {
        "su4_2pi_plus_identity": float(np.max(np.abs(u2 + i4))),
        "so6_2pi_minus_identity": float(np.max(np.abs(g2 - i6))),
        "su4_4pi_minus_identity": float(np.max(np.abs(u4 - i4))),
        "so6_4pi_minus_identity": float(np.max(np.abs(g4 - i6))),
    }
    return CheckReport.of(f"liealg.covering_witness.{label}", max(devs.values()), tol, devs,
                          "su4 element is -I at 2 pi while so6 is I; both I at 4 pi")
