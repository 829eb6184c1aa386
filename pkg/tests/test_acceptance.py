"""Acceptance criteria, one printed PASS/FAIL line per criterion and clause.

Tolerances and runtime budgets are fixed here; a failing clause fails its test.
"""
import math
import time

import numpy as np
import pytest

from superspin_lab import fockstat as fs, grassmann as gr, liealg as la, superspin as ss
from superspin_lab.cli import main
from superspin_lab.numkit import bracket
from superspin_lab.report import reports_to_json
from superspin_lab.suites import SuiteConfig, run_suite

from .acceptance_log import LINES

GRID = 256
M = 1.0
S = (math.sqrt(2.0), 1.0)


class Criterion:
    def __init__(self, number, budget=None):
        self.number = number
        self.budget = budget
        self.failed = []
        self.t0 = time.perf_counter()

    def clause(self, name, ok, detail):
        ok = bool(ok)
        LINES.append(f"{'PASS' if ok else 'FAIL'} criterion {self.number}: {name} ({detail})")
        if not ok:
            self.failed.append(name)

    def finish(self):
        if self.budget is not None:
            dt = time.perf_counter() - self.t0
            self.clause("runtime", dt < self.budget, f"{dt:.2f} s, budget {self.budget} s")
        assert not self.failed, f"criterion {self.number} failed: {self.failed}"


def grid(stop):
    return np.linspace(0.0, stop, GRID, endpoint=False)


def test_criterion_1_plucker():
    c = Criterion(1, budget=5.0)
    worst = 0.0
    for k in (1, 2, 3):
        for o in ("right", "left"):
            for a in grid(gr.ALPHA_MAX):
                p = gr.plucker_map(gr.boost_frame(gr.BoostCurveSpec(k, o, float(a))))
                worst = max(worst, gr.max_relation_residual(p))
    c.clause("quadratic relations on six curves", worst < 1e-12, f"max {worst:.3g} < 1e-12")
    cf = 0.0
    for a in grid(gr.ALPHA_MAX):
        p = gr.plucker_map(gr.boost_frame(gr.BoostCurveSpec(1, "right", float(a))))
        cf = max(cf, abs(p[(0, 1, 2)] - math.cos(4 * a)), abs(p[(1, 2, 3)] - math.sin(4 * a)))
    c.clause("k=1 right closed form", cf < 1e-14, f"max {cf:.3g} < 1e-14")
    bad = []
    for k in (1, 2, 3):
        for o, ref in (("right", gr.P_INF), ("left", gr.P0)):
            got = gr.curve_limit(k, o)
            if np.max(np.abs(got.normalized() - ref.normalized())) > 1e-10:
                bad.append((k, o))
    c.clause("six curve limits", not bad, f"mismatched {bad}")
    c.finish()


def test_criterion_2_brackets():
    c = Criterion(2, budget=1.0)
    rep = la.bracket_table_check()
    c.clause("right sextet reproduces the printed bracket table", rep.residual < 1e-12,
             f"residual {rep.residual:.3g} < 1e-12")
    jr = la.right_sextet()[:3]
    jl = la.derive_left_rotations()
    comm = max(float(np.max(np.abs(bracket(a, b)))) for a in jr for b in jl)
    c.clause("[Jbar_i, Jleft_j] = 0 for 9 pairs", comm < 1e-12, f"max {comm:.3g}")
    inter = la.algebra_intersection(la.right_sextet(), la.left_sextet())
    along = la.real_coordinates([la.so6_generator(la.GeneratorName("K", 3, "right"))], inter[0])[1] \
        if len(inter) == 1 else math.inf
    c.clause("right/left intersection is one-dimensional along K3", len(inter) == 1 and along < 1e-10,
             f"dim {len(inter)}, off-K3 residual {along:.3g}")
    joint = la.joint_basis("so6")
    dim = len(la.generated_algebra(joint))
    c.clause("joint algebra dimension = 6", dim == 6, f"generated dimension {dim}")
    a, worst = la.fit_structure_constants(joint)
    b = la.structure_constants(la.joint_basis("su4"))
    diff = float(np.max(np.abs(a.tensor - b.tensor)))
    c.clause("so6-joint and su4-joint constants agree", max(diff, worst) < 1e-10,
             f"tensor difference {diff:.3g}, so6 closure residual {worst:.3g}, tol 1e-10")
    c.finish()


def test_criterion_3_symmetric_space():
    c = Criterion(3, budget=2.0)
    rep = la.cartan_decomposition_check()
    c.clause("Cartan conditions", rep.residual < 1e-10, f"residual {rep.residual:.3g} < 1e-10")
    rng = np.random.default_rng(42)
    dev = max(abs(la.sectional_curvature(la.random_k_element(rng), la.random_k_element(rng)) - 1.0)
              for _ in range(100))
    c.clause("sectional curvature on 100 planes", dev < 1e-9, f"max |K - 1| {dev:.3g} < 1e-9")
    x = la.AlgebraElement.basis("J3")
    (u2, u4), (g2, g4) = la.one_parameter_paths(x, [2 * math.pi, 4 * math.pi])
    r = {
        "su4(2pi) = -I": float(np.max(np.abs(u2 + np.eye(4)))),
        "so6(2pi) = I": float(np.max(np.abs(g2 - np.eye(6)))),
        "su4(4pi) = I": float(np.max(np.abs(u4 - np.eye(4)))),
        "so6(4pi) = I": float(np.max(np.abs(g4 - np.eye(6)))),
    }
    c.clause("J3 covering witness", max(r.values()) < 1e-10,
             ", ".join(f"{k}: {v:.2g}" for k, v in r.items()))
    c.finish()


def test_criterion_4_coinvariance():
    c = Criterion(4, budget=5.0)
    alphas = grid(2 * math.pi)
    fac = max(ss.factorization_residual(ss.solve_epsilon(a), a) for a in alphas)
    c.clause("E G E^T = eta on the grid", fac < 1e-12, f"max {fac:.3g} < 1e-12")
    tab = 0.0
    for alpha, e in ss.TABULATED_EPSILON.values():
        r = ss.epsilon_residuals(e, alpha)
        tab = max(tab, abs(r["norm0"]), abs(r["norm3"]), abs(r["split_cos"]), abs(r["split_sin"]))
    c.clause("four tabulated epsilon sets", tab < 1e-12, f"max {tab:.3g} < 1e-12")
    ks = ss.solve_kappa_branch(alphas, M, S)
    mass = 0.0
    for a, (k0, k3) in zip(alphas, ks):
        e0, e3 = ss.impulse_from_block(ss.solve_epsilon(a), S)
        mass = max(mass, abs((M + k3) ** 2 - k0 ** 2 - (e0 ** 2 - e3 ** 2)))
    c.clause("mass relation on the kappa branch", mass < 1e-10, f"max {mass:.3g} < 1e-10")
    a = math.pi / 2 - 1e-3
    k0, k3 = ss.solve_kappa(a, M, S)
    big = abs((M + k3) ** 2 - k0 ** 2)
    c.clause("divergence at pi/2 - 1e-3", big > 1e3, f"|(m+k3)^2 - k0^2| = {big:.6g}, need > 1e3")
    c.finish()


def test_criterion_5_dirac():
    c = Criterion(5, budget=5.0)
    alphas = grid(2 * math.pi)
    ks = ss.solve_kappa_branch(alphas, M, S)
    ranks, kern, par = set(), 0.0, 0.0
    for a, k in zip(alphas, ks):
        cc = ss.branch_coefficients(a, M, S, kappa=k)
        ranks.add(ss.dirac_rank(cc))
        sol = ss.spinor_solutions(cc)
        kern = max(kern, *(v.kernel_residual() for v in sol.values()))
        par = max(par, ss.parallel_residual(sol["w1"].components, sol["u1"].components, 1),
                  ss.parallel_residual(sol["w2"].components, sol["u2"].components, 2))
    c.clause("Dirac rank 2 on the grid", ranks == {2}, f"ranks {sorted(ranks)}")
    c.clause("kernel residuals", kern < 1e-10, f"max {kern:.3g} < 1e-10")
    c.clause("u parallel to w", par < 1e-10, f"max {par:.3g} < 1e-10")
    rng = np.random.default_rng(42)
    gauge = 0.0
    for i in range(20):
        cc = ss.branch_coefficients(alphas[(13 * i) % GRID], M, S, kappa=ks[(13 * i) % GRID])
        gf = ss.GaugeField(rng.normal(size=4) + 1j * rng.normal(size=4), 1.0, rng.normal(size=4))
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        gauge = max(gauge, ss.gauge_transform(psi, gf, cc)[1].residual)
    c.clause("gauge covariance, 20 phases", gauge < 1e-10, f"max {gauge:.3g} < 1e-10")
    c.finish()


def test_criterion_6_superspinor():
    c = Criterion(6, budget=1.0)
    there = ss.coefficients_at(math.pi, M, S)
    c.clause("kappa(pi) = (-1, -1)", (there.kappa0, there.kappa3) == (-1.0, -1.0),
             f"kappa {there.kappa0, there.kappa3}")
    rep = ss.superspinor_relation(0.0, M, S, "plain")
    r1, r2 = rep.inputs["spin1_residual"], rep.inputs["spin2_residual"]
    c.clause("w1(0) + bar u1(pi) = 0", r1 < 1e-12, f"{r1:.3g} < 1e-12")
    c.clause("w2(0) - bar u2(pi) = 0", r2 < 1e-12, f"{r2:.3g} < 1e-12")
    ph = rep.inputs["phase_difference"]
    c.clause("phase vectors at alpha and alpha + pi", ph == 0, f"difference {ph:.3g}")
    c.finish()


def test_criterion_7_statistics():
    c = Criterion(7, budget=1.0)
    ops = fs.build_fock(4)
    c.clause("CAR", fs.car_residual(ops) == 0, f"residual {fs.car_residual(ops)}")
    chain = fs.anticommutator_suite(ops)
    c.clause("anticommutator chain under B = (-1)^l D^H", chain.inputs["chain_residual"] == 0
             and fs.identification_residual(ops) == 0, f"residual {chain.inputs['chain_residual']}")
    c.clause("{B,B} = {D,D} = 0", chain.inputs["bb_dd_residual"] == 0,
             f"residual {chain.inputs['bb_dd_residual']}")
    ex = fs.exclusion_check(ops)
    c.clause("double creation annihilates", ex.residual == 0, f"residual {ex.residual}")
    c.finish()


def test_criterion_8_determinism(tmp_path):
    c = Criterion(8)
    cfg = SuiteConfig()
    a = reports_to_json(run_suite(cfg, ["all"]))
    b = reports_to_json(run_suite(cfg, ["all"]))
    c.clause("library reports byte-identical", a == b, f"{len(a)} bytes")
    outs = []
    for name in ("one.json", "two.json"):
        main(["verify", "all", "--out", str(tmp_path / name)])
        outs.append((tmp_path / name).read_bytes())
    c.clause("CLI reports byte-identical", outs[0] == outs[1], f"{len(outs[0])} bytes")
    c.finish()
