"""Sweep the kappa branch over alpha and print where the effective mass blows up.

Writes a CSV of alpha, kappa0, kappa3, |kappa| and the mass relation residual.
The continued branch from kappa = 0 grows like 1/sin(alpha) near alpha = pi;
the finite value (-m, -m) at pi is the anchor of the next segment.
"""
import argparse
import math
from dataclasses import dataclass

import numpy as np

from superspin_lab import superspin as ss
from superspin_lab.report import rows_to_csv


@dataclass(frozen=True)
class SweepConfig:
    m: float = 1.0
    s3: float = 1.0
    n: int = 512
    stop: float = 2 * math.pi

    @property
    def s(self):
        return (math.hypot(self.m, self.s3), self.s3)


def sweep(cfg: SweepConfig) -> list[dict]:
    alphas = np.linspace(0.0, cfg.stop, cfg.n, endpoint=False)
    rows = []
    for a, (k0, k3) in zip(alphas, ss.solve_kappa_branch(alphas, cfg.m, cfg.s)):
        cc = ss.branch_coefficients(a, cfg.m, cfg.s, kappa=(k0, k3))
        rows.append({"alpha": float(a), "kappa0": float(k0), "kappa3": float(k3),
                     "kappa_norm": float(math.hypot(k0, k3)),
                     "effective_mass_sq": (cfg.m + k3) ** 2 - k0 ** 2,
                     "mass_relation_residual": cc.rank_residual()})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mass", type=float, default=1.0)
    ap.add_argument("--s3", type=float, default=1.0)
    ap.add_argument("--n", type=int, default=512)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    rows = sweep(SweepConfig(args.mass, args.s3, args.n))
    text = rows_to_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    peak = max(rows, key=lambda r: r["kappa_norm"])
    worst = max(abs(r["mass_relation_residual"]) for r in rows)
    print(f"largest |kappa| = {peak['kappa_norm']:.6g} at alpha = {peak['alpha']:.6g}")
    print(f"max mass relation residual = {worst:.3g}")
    near = [r for r in rows if abs(r["alpha"] - (math.pi / 2 - 1e-3)) < 2 * math.pi / args.n]
    for r in near:
        print(f"alpha = {r['alpha']:.6f}: (m+k3)^2 - k0^2 = {r['effective_mass_sq']:.6g}")


if __name__ == "__main__":
    main()
