"""Trace the su4 and so6 one-parameter paths of each joint generator and report their periods."""
import argparse
import math
from dataclasses import dataclass

import numpy as np

from superspin_lab import liealg as la


@dataclass(frozen=True)
class PathConfig:
    t_max: float = 4 * math.pi
    n_steps: int = 800
    tol: float = 1e-9


def first_return(mats, ts, target, tol):
    for t, m in zip(ts[1:], mats[1:]):
        if np.max(np.abs(m - target)) < tol:
            return float(t)
    return None


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=PathConfig.n_steps)
    cfg = PathConfig(n_steps=ap.parse_args().steps)
    ts = np.linspace(0.0, cfg.t_max, cfg.n_steps + 1)
    for label in la.JOINT_ORDER:
        us, gs = la.one_parameter_paths(la.AlgebraElement.basis(label), ts)
        periods = {
            "su4 -> -I": first_return(us, ts, -np.eye(4), cfg.tol),
            "su4 -> I": first_return(us, ts, np.eye(4), cfg.tol),
            "so6 -> I": first_return(gs, ts, np.eye(6), cfg.tol),
        }
        text = ", ".join(f"{k} at {'never' if v is None else f'{v / math.pi:.3f} pi'}"
                         for k, v in periods.items())
        print(f"{label}: {text}")


if __name__ == "__main__":
    main()
