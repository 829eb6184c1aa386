"""Verification suites and tables assembled from the library modules."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import fockstat, grassmann as gr, liealg as la, superspin as sp
from .numkit import Tolerance, bracket
from .report import CheckReport, separation_report

SUITES = ("grassmann", "liealg", "superspin", "fockstat")
TABLE_KINDS = ("plucker-curve", "epsilon-kappa", "spinors", "curvature")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SuiteConfig:
    tol: Tolerance = field(default_factory=Tolerance)
    alpha_grid_size: int = 256
    seed: int = 42
    mass: float = 1.0
    impulse: tuple = (math.sqrt(2.0), 1.0)
    output_format: str = "json"
    output_path: str | None = None

    def __post_init__(self):
        if self.alpha_grid_size < 2:
            raise ConfigError("grid size must be at least 2")
        if not (self.mass > 0 and math.isfinite(self.mass)):
            raise ConfigError("mass must be positive and finite")
        s0, s3 = map(float, self.impulse)
        if not (math.isfinite(s0) and math.isfinite(s3)):
            raise ConfigError("impulse must be finite")
        shell = abs(s0 * s0 - s3 * s3 - self.mass ** 2)
        if shell > self.tol.abs_eps * max(1.0, self.mass ** 2):
            raise ConfigError(f"impulse ({s0}, {s3}) is off the mass shell (residual {shell:.3g})")
        if self.output_format not in ("json", "csv"):
            raise ConfigError(f"unknown format {self.output_format!r}")
        object.__setattr__(self, "impulse", (s0, s3))

    @property
    def check_tol(self) -> float:
        """Pass tolerance for the default-level (1e-10) checks."""
        return self.tol.abs_eps

    def inputs(self) -> dict:
        return {"grid": self.alpha_grid_size, "seed": self.seed, "m": self.mass,
                "s": list(self.impulse)}


def alpha_grid(n: int, stop: float) -> np.ndarray:
    return np.linspace(0.0, stop, n, endpoint=False)


# -- grassmann ---------------------------------------------------------------------------

CURVES = [(k, o) for k in (1, 2, 3) for o in ("right", "left")]


def grassmann_relations(cfg: SuiteConfig) -> CheckReport:
    worst = 0.0
    for k, o in CURVES:
        for a in alpha_grid(cfg.alpha_grid_size, gr.ALPHA_MAX):
            p = gr.plucker_map(gr.boost_frame(gr.BoostCurveSpec(k, o, float(a))))
            worst = max(worst, gr.max_relation_residual(p))
    return CheckReport.of("grassmann.quadratic_relations", worst, 1e-12,
                          {"grid": cfg.alpha_grid_size, "curves": 6},
                          "every canonical quadratic relation on all six boost curves")


def grassmann_closed_form(cfg: SuiteConfig) -> CheckReport:
    worst = 0.0
    for a in alpha_grid(cfg.alpha_grid_size, gr.ALPHA_MAX):
        p = gr.plucker_map(gr.boost_frame(gr.BoostCurveSpec(1, "right", float(a))))
        ref = np.zeros(20)
        ref[gr.TRIPLE_INDEX[(0, 1, 2)]] = math.cos(4 * a)
        ref[gr.TRIPLE_INDEX[(1, 2, 3)]] = math.sin(4 * a)
        worst = max(worst, float(np.max(np.abs(p.coords - ref))))
    return CheckReport.of("grassmann.closed_form_k1_right", worst, 1e-14,
                          {"grid": cfg.alpha_grid_size},
                          "p012 = cos 4a, p123 = sin 4a, all other coordinates zero")


def grassmann_limits(cfg: SuiteConfig) -> list[CheckReport]:
    out = []
    for k, o in CURVES:
        lim = gr.curve_limit(k, o)
        expected = gr.EXPECTED_LIMITS[o]
        dev = float(np.max(np.abs(lim.normalized() - expected.normalized())))
        dev = max(dev, gr.max_relation_residual(lim))
        out.append(CheckReport.of(f"grassmann.limit.k{k}.{o}", dev, cfg.check_tol,
                                  {"k": k, "orientation": o,
                                   "expected": "P_inf" if o == "right" else "P0"},
                                  "limit of the curve as alpha -> pi/4"))
    return out


def grassmann_injectivity(cfg: SuiteConfig) -> CheckReport:
    dmin = math.inf
    for k in (1, 2, 3):
        grid = np.linspace(0.0, gr.ALPHA_MAX - 0.01, cfg.alpha_grid_size)
        pts = np.array([gr.plucker_map(gr.boost_frame(gr.BoostCurveSpec(k, "right", float(a))))
                        .normalized() for a in grid])
        diff = np.max(np.abs(pts[:, None, :] - pts[None, :, :]), axis=2)
        np.fill_diagonal(diff, np.inf)
        dmin = min(dmin, float(diff.min()))
    return separation_report("grassmann.injectivity", dmin, 1e-6, {"grid": cfg.alpha_grid_size},
                             "distinct grid parameters give distinct normalized points")


def grassmann_det_scaling(cfg: SuiteConfig) -> CheckReport:
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for _ in range(20):
        f = gr.boost_frame(gr.BoostCurveSpec(int(rng.integers(1, 4)), "right",
                                             float(rng.uniform(0, gr.ALPHA_MAX))))
        a = rng.normal(size=(3, 3))
        if np.linalg.det(a) < 0:
            a[0] = -a[0]
        lhs = gr.plucker_map(a @ f).coords
        rhs = np.linalg.det(a) * gr.plucker_map(f).coords
        worst = max(worst, float(np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(rhs)))))
    return CheckReport.of("grassmann.det_scaling", worst, 1e-12, {"seed": cfg.seed, "samples": 20},
                          "p(A F) = det(A) p(F) for random A with det A > 0")


def grassmann_tangent(cfg: SuiteConfig) -> CheckReport:
    worst_gap = 0.0
    n = 0
    for a in alpha_grid(cfg.alpha_grid_size, gr.ALPHA_MAX)[1:]:
        a = float(a)
        if a + 1e-5 >= gr.ALPHA_MAX:
            continue
        spec = gr.BoostCurveSpec(1, "right", a)
        for anchor in ((0, 1, 2), (1, 2, 3)):
            try:
                t = gr.curve_tangent(spec, anchor)
            except gr.OutsideChartError:
                continue
            norm = math.sqrt(sum(v * v for v in t.values()))
            worst_gap = max(worst_gap, 1.0 - min(norm, 1.0))
            n += 1
    return CheckReport.of("grassmann.tangent_nonvanishing", worst_gap, 0.0, {"evaluations": n},
                          "chart tangent of the k=1 right curve has norm >= 1 (exact bound 4)")


def grassmann_suite(cfg: SuiteConfig) -> list[CheckReport]:
    return [grassmann_relations(cfg), grassmann_closed_form(cfg), *grassmann_limits(cfg),
            grassmann_injectivity(cfg), grassmann_det_scaling(cfg), grassmann_tangent(cfg),
            gr.intersection_probe(10_000, cfg.seed), gr.intersection_witness()]


# -- liealg --------------------------------------------------------------------------------

def jbar_jleft_commute() -> CheckReport:
    jr = la.right_sextet()[:3]
    jl = la.derive_left_rotations()
    worst = max(float(np.max(np.abs(bracket(a, b)))) for a in jr for b in jl)
    return CheckReport.of("liealg.jbar_jleft_commute", worst, 1e-12, {"pairs": 9},
                          "right and left rotation generators commute")


def gbar_gleft_intersection() -> CheckReport:
    inter = la.algebra_intersection(la.right_sextet(), la.left_sextet())
    k3 = la.so6_generator(la.GeneratorName("K", 3, "right"))
    along = max((la.real_coordinates([k3], v)[1] for v in inter), default=0.0)
    return CheckReport.of("liealg.gbar_gleft_intersection", abs(len(inter) - 1) + along, 1e-10,
                          {"dimension": len(inter)}, "the right and left sextets share only K3")


def gbar_closure() -> CheckReport:
    sc, res = la.fit_structure_constants(la.right_sextet())
    r = max(res, sc.jacobi_residual(), sc.antisymmetry_residual())
    return CheckReport.of("liealg.gbar_closure", r, 1e-12, {},
                          "right sextet closes and its constants satisfy Jacobi")


def joint_dimension() -> CheckReport:
    j = la.joint_basis("so6")[:3]
    k3 = la.joint_basis("so6")[5]
    dim = len(la.generated_algebra(j + [k3]))
    return CheckReport.of("liealg.joint_dimension", abs(dim - 6), 0.0, {"dimension": dim},
                          "dimension of the algebra generated by J1+J1', J2+J2', J3+J3', K3 in so(6)")


def joint_constants() -> CheckReport:
    so6, res = la.fit_structure_constants(la.joint_basis("so6"))
    su4, res4 = la.fit_structure_constants(la.joint_basis("su4"))
    diff = float(np.max(np.abs(so6.tensor - su4.tensor)))
    return CheckReport.of("liealg.joint_so6_vs_su4", max(diff, res, res4), 1e-10,
                          {"tensor_difference": diff, "so6_closure_residual": res,
                           "su4_closure_residual": res4},
                          "so6 joint and su4 joint structure constants agree and both close")


def su4_vs_gbar() -> CheckReport:
    su4 = la.structure_constants(la.joint_basis("su4")).tensor
    gbar = la.structure_constants(la.right_sextet()).tensor
    return CheckReport.of("liealg.su4_vs_gbar", float(np.max(np.abs(su4 - gbar))), 1e-10, {},
                          "su4 sextet (Hermitian form) has the constants of the right so6 sextet")


def curvature_identity() -> CheckReport:
    k1, k2, _ = la.su4_display_basis()[3:]
    r = float(np.max(np.abs(la.curvature(k1, k2, k2) - k1)))
    return CheckReport.of("liealg.curvature_K1K2K2", r, 1e-12, {}, "R(K1, K2) K2 = K1")


def liealg_suite(cfg: SuiteConfig) -> list[CheckReport]:
    return [la.bracket_table_check(), la.printed_table_jacobi_check(), gbar_closure(),
            jbar_jleft_commute(), gbar_gleft_intersection(), joint_dimension(), joint_constants(),
            su4_vs_gbar(), la.cartan_decomposition_check(cfg.check_tol),
            la.sectional_curvature_check(100, cfg.seed), curvature_identity(),
            la.covering_check(la.AlgebraElement.basis("J3"), tol=cfg.check_tol),
            la.covering_witness("J3", cfg.check_tol), la.spin_membership_check(tol=cfg.check_tol)]


# -- superspin -------------------------------------------------------------------------------

def branch_grid(cfg: SuiteConfig):
    alphas = alpha_grid(cfg.alpha_grid_size, 2 * math.pi)
    ks = sp.solve_kappa_branch(alphas, cfg.mass, cfg.impulse)
    return [sp.branch_coefficients(float(a), cfg.mass, cfg.impulse, k) for a, k in zip(alphas, ks)]


def _scale(cc):
    e0, e3 = sp.impulse_entries(cc)
    return max(1.0, cc.m ** 2, e0 * e0 + e3 * e3, cc.kappa0 ** 2 + cc.kappa3 ** 2)


def superspin_suite(cfg: SuiteConfig) -> list[CheckReport]:
    m, s = cfg.mass, cfg.impulse
    base = cfg.inputs()
    out = [CheckReport.of("superspin.clifford", sp.GAMMA.clifford_residual(), 0.0, {},
                          "{g^mu, g^nu} = 2 eta^{mu nu} for all 16 pairs")]
    alphas = alpha_grid(cfg.alpha_grid_size, 2 * math.pi)
    det_res = max(abs(np.linalg.det(sp.deformed_metric(float(a)).active_block()) + 1) for a in alphas)
    out.append(CheckReport.of("superspin.metric_determinant", det_res, 1e-12, base,
                              "active 2x2 block of the deformed metric has determinant -1"))
    fact = max(sp.factorization_residual(sp.solve_epsilon(float(a)), float(a)) for a in alphas)
    out.append(CheckReport.of("superspin.epsilon_factorization", fact, 1e-12, base,
                              "E G(a) E^T = diag(1, -1) on the primary branch"))
    tab = {k: max(abs(v) for v in sp.epsilon_residuals(e, a).values())
           for k, (a, e) in sp.TABULATED_EPSILON.items()}
    out.append(CheckReport.of("superspin.tabulated_epsilon", max(tab.values()), 1e-12,
                              {"per_set": tab}, "the four tabulated sets solve all five equations"))
    split = max(max(abs(sp.epsilon_residuals(sp.solve_epsilon(float(a)), float(a))[key])
                    for key in ("split_cos", "split_sin")) for a in alphas)
    out.append(CheckReport.of("superspin.torsion_split_primary", split, 1e-12, base,
                              "both halves of the torsion split on the primary branch"))

    ccs = branch_grid(cfg)
    rel = max(abs(cc.rank_residual()) / _scale(cc) for cc in ccs)
    kap = max(abs(sp.kappa_constraint(cc.kappa0, cc.kappa3, cc.alpha)) / _scale(cc) for cc in ccs)
    out.append(CheckReport.of("superspin.kappa_branch", max(rel, kap), 1e-10,
                              {**base, "mass_relation": rel, "kappa_constraint": kap},
                              "kappa roots satisfy both constraints (relative to the entry scale)"))
    a_div = math.pi / 2 - 1e-3
    cc = sp.branch_coefficients(a_div, m, s)
    val = cc.mass_term() ** 2 - cc.kappa0 ** 2
    out.append(separation_report("superspin.kappa_divergence", abs(val), 1e3,
                                 {**base, "alpha": a_div, "value": val},
                                 "|(m + kappa3)^2 - kappa0^2| just below alpha = pi/2"))
    readings = sp.pi_reading_residuals(m, s)
    out.append(CheckReport.of("superspin.pi_mass_relation", abs(readings["plus_reading"]), 1e-12,
                              {**base, **readings},
                              "(m + kappa3)^2 - kappa0^2 = -m^2 at pi; the (m - kappa3) reading is recorded"))

    bad_rank = [float(cc.alpha) for cc in ccs if sp.dirac_rank(cc) != 2]
    out.append(CheckReport.of("superspin.dirac_rank", len(bad_rank), 0.0,
                              {**base, "alphas_with_rank_not_2": bad_rank}, "Dirac matrix has rank 2"))
    kern = 0.0
    par = 0.0
    route = 0.0
    for cc in ccs:
        sols = sp.spinor_solutions(cc)
        kern = max(kern, max(x.kernel_residual() for x in sols.values()))
        par = max(par, sp.parallel_residual(sols["w1"].components, sols["u1"].components, 1),
                  sp.parallel_residual(sols["w2"].components, sols["u2"].components, 2))
        route = max(route, float(np.max(np.abs(sp.dirac_matrix(cc) - sp.gamma_route_dirac(cc))))
                    / _scale(cc))
    out.append(CheckReport.of("superspin.kernel", kern, 1e-10, base,
                              "relative kernel residual of w1, w2, u1, u2"))
    out.append(CheckReport.of("superspin.u_parallel_w", par, 1e-10, base, "u(l) parallel to w(l)"))
    out.append(CheckReport.of("superspin.dirac_gamma_route", route, 1e-12, base,
                              "displayed matrix equals gamma^mu (eps_mu + kappa_mu gamma^3) - m"))

    rng = np.random.default_rng(cfg.seed)
    gauge = 0.0
    for i in range(20):
        cc = ccs[int(rng.integers(len(ccs)))]
        gf = sp.GaugeField(rng.normal(size=4) + 1j * rng.normal(size=4), float(rng.uniform(0.5, 2)),
                           rng.normal(size=4))
        _, rep = sp.gauge_transform(sp.spinor_solutions(cc)["w1"], gf, cc)
        gauge = max(gauge, rep.residual)
    out.append(CheckReport.of("superspin.gauge_covariance", gauge, 1e-10, {**base, "phases": 20},
                              "covariance of i nabla - e A under linear phases"))
    out.append(sp.superspinor_relation(0.0, m, s, "plain"))
    kg = sp.klein_gordon_check(ccs[0])
    out.append(CheckReport.of("superspin.klein_gordon", kg, cfg.check_tol, base, "s0^2 - s3^2 = m^2"))
    return out


# -- fockstat ----------------------------------------------------------------------------------

def fockstat_suite(cfg: SuiteConfig) -> list[CheckReport]:
    grid = [(cfg.mass, 0.0), cfg.impulse]
    ops = fockstat.build_fock(4, cfg.mass, grid)
    out = [fockstat.anticommutator_suite(ops), fockstat.exclusion_check(ops)]
    out.append(CheckReport.of("fockstat.car", fockstat.car_residual(ops), 0.0, {"n_modes": 4},
                              "{B_i, B_j^H} = delta_ij, {B_i, B_j} = 0"))
    out.append(CheckReport.of("fockstat.nilpotency", fockstat.nilpotency_residual(ops), 0.0,
                              {"n_modes": 4}, "B^2 = 0 and (B^H)^2 = 0"))
    out.append(CheckReport.of("fockstat.vacuum", fockstat.vacuum_residual(ops), 0.0,
                              {"n_modes": 4}, "every B annihilates the vacuum"))
    return out


RUNNERS = {"grassmann": grassmann_suite, "liealg": liealg_suite,
           "superspin": superspin_suite, "fockstat": fockstat_suite}


def run_suite(cfg: SuiteConfig, selection) -> list[CheckReport]:
    names = list(selection)
    if "all" in names:
        names = list(SUITES)
    unknown = [n for n in names if n not in RUNNERS]
    if unknown or not names:
        raise ConfigError(f"unknown suite(s) {unknown}; choose from {SUITES + ('all',)}")
    reports = []
    for n in dict.fromkeys(names):
        reports.extend(RUNNERS[n](cfg))
    return sorted(reports, key=lambda r: r.check_id)


def limit_reports(cfg: SuiteConfig) -> list[CheckReport]:
    return grassmann_limits(cfg)


# -- tables -----------------------------------------------------------------------------------

def emit_table(kind: str, cfg: SuiteConfig) -> list[dict]:
    if kind == "plucker-curve":
        rows = []
        for a in alpha_grid(cfg.alpha_grid_size, gr.ALPHA_MAX):
            p = gr.plucker_map(gr.boost_frame(gr.BoostCurveSpec(1, "right", float(a))))
            rows.append({"alpha": float(a), "p012": p[(0, 1, 2)], "p123": p[(1, 2, 3)],
                         "relation_residual": gr.max_relation_residual(p)})
        return rows
    if kind == "epsilon-kappa":
        rows = []
        for cc in branch_grid(cfg):
            (e00, e03), (e30, e33) = cc.eps
            rows.append({"alpha": cc.alpha, "eps00": e00, "eps03": e03, "eps30": e30, "eps33": e33,
                         "kappa0": cc.kappa0, "kappa3": cc.kappa3,
                         "factorization_residual": sp.factorization_residual(cc.eps, cc.alpha),
                         "mass_relation_residual": cc.rank_residual(),
                         "kappa_residual": sp.kappa_constraint(cc.kappa0, cc.kappa3, cc.alpha)})
        return rows
    if kind == "spinors":
        rows = []
        for cc in branch_grid(cfg):
            row = {"alpha": cc.alpha}
            for label, sol in sp.spinor_solutions(cc).items():
                for i, v in enumerate(sol.components):
                    row[f"{label}_{i}"] = float(v.real)
            rows.append(row)
        return rows
    if kind == "curvature":
        rng = np.random.default_rng(cfg.seed)
        rows = []
        for i in range(100):
            x, y = la.random_k_element(rng), la.random_k_element(rng)
            rows.append({"plane": i, "sectional_curvature": la.sectional_curvature(x, y)})
        return rows
    raise ConfigError(f"unknown table kind {kind!r}; choose from {TABLE_KINDS}")

