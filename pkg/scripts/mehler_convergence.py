#!/usr/bin/env python3
"""Convergence of the two-variable Laguerre expansions behind the oscillator
kernel: (a) the scalar expansion of the normalized Bessel profile as the
truncation order J grows, and (b) the agreement of the two kernel
representations over the Grassmann algebra when both are truncated at the
same k-order K.

Usage: python3 scripts/mehler_convergence.py [--seed 7]
"""

import argparse
import random
from dataclasses import dataclass

from superharm import Signature
from superharm.zonal import hille_hardy_check, mehler_expansions_agree


@dataclass(frozen=True)
class ConvergenceConfig:
    orders_j: tuple = (10, 20, 40, 60, 80)
    samples: tuple = ((3, 0, 1.0, 1.0), (3, 1, 2.0, 3.0), (1, 2, 4.0, 0.25), (5, 0, 0.3, 0.7))
    m: int = 3
    n: int = 1
    orders_k: tuple = (4, 8, 12, 18)
    scales: tuple = (0.4, 0.8)
    seed: int = 7


def scalar_table(cfg: ConvergenceConfig) -> None:
    print("== scalar Laguerre expansion of the Bessel profile: residual vs J ==")
    head = f"{'M':>3} {'k':>3} {'u1':>6} {'u2':>6}"
    print(head + "".join(f"  J={J:<10}" for J in cfg.orders_j))
    for (M, k, u1, u2) in cfg.samples:
        cells = "".join(f"  {hille_hardy_check(M, k, u1, u2, J=J):<12.3e}" for J in cfg.orders_j)
        print(f"{M:>3} {k:>3} {u1:>6.2f} {u2:>6.2f}" + cells)


def kernel_table(cfg: ConvergenceConfig) -> None:
    sig = Signature(cfg.m, cfg.n)
    rnd = random.Random(cfg.seed)
    print("\n== kernel representations truncated at the same order: residual vs K ==")
    print(f"{'scale':>6}" + "".join(f"  K={K:<10}" for K in cfg.orders_k))
    for scale in cfg.scales:
        x = [rnd.uniform(-scale, scale) for _ in range(cfg.m)]
        y = [rnd.uniform(-scale, scale) for _ in range(cfg.m)]
        cells = "".join(
            f"  {mehler_expansions_agree(sig, x, y, K=K, J=80):<12.3e}" for K in cfg.orders_k
        )
        print(f"{scale:>6.2f}" + cells)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    cfg = ConvergenceConfig(seed=args.seed)
    scalar_table(cfg)
    kernel_table(cfg)


if __name__ == "__main__":
    main()
