#!/usr/bin/env python3
"""Sweep the isotropic oscillator across signatures: exact levels E = 2j + k + M/2
with their super-degeneracies, then the finite-difference eigensolver on the
reduced radial problem, reporting the worst deviation per signature.

Usage: python3 scripts/spectrum_sweep.py [--numeric]
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from superharm import GridSpec, Signature, dim_harmonics, oscillator_spectrum, solve_numeric
from superharm.radial import RadialProfile
from superharm.schrodinger import reduce as reduce_problem


@dataclass(frozen=True)
class SweepConfig:
    signatures: tuple = ((3, 0), (3, 1), (5, 1), (2, 1), (4, 2))
    j_max: int = 2
    k_max: int = 3
    r_max: float = 13.0
    nodes: int = 2200

    @property
    def potential(self):
        return RadialProfile.polynomial([Fraction(0), Fraction(1, 2)])


def exact_table(cfg: SweepConfig) -> None:
    for (m, n) in cfg.signatures:
        sig = Signature(m, n)
        print(f"\n== signature (m, n) = ({m}, {n}),  M = {sig.superdim} ==")
        print(f"{'j':>3} {'k':>3} {'E':>8} {'degeneracy':>11}")
        entries = oscillator_spectrum(sig, cfg.j_max, cfg.k_max)
        for e in sorted(entries, key=lambda e: (e.E, e.k, e.j)):
            print(f"{e.j:>3} {e.k:>3} {float(e.E):>8.2f} {e.degeneracy:>11}")
        # degeneracy bookkeeping: each column k carries dim H_k states
        assert all(e.degeneracy == dim_harmonics(sig, e.k) for e in entries)


def numeric_table(cfg: SweepConfig) -> None:
    grid = GridSpec(r_max=cfg.r_max, nodes=cfg.nodes)
    print("\n== numeric eigensolver vs closed form ==")
    print(f"{'(m,n)':>7} {'k':>3} {'worst |dE|':>12} {'worst est.err':>14}")
    for (m, n) in cfg.signatures:
        sig = Signature(m, n)
        for k in range(cfg.k_max + 1):
            if sig.superdim + 2 * k < 1:
                print(f"{f'({m},{n})':>7} {k:>3} {'(below effective dim 1)':>12}")
                continue
            prob = reduce_problem(sig, cfg.potential, k)
            pairs = solve_numeric(prob, grid, count=cfg.j_max + 1)
            worst_de = max(
                abs(E - (2 * j + k + sig.superdim / 2.0)) for j, (E, _) in enumerate(pairs)
            )
            worst_err = max(err for _, err in pairs)
            print(f"{f'({m},{n})':>7} {k:>3} {worst_de:>12.3e} {worst_err:>14.3e}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--numeric", action="store_true", help="also run the eigensolver sweep")
    args = ap.parse_args()
    cfg = SweepConfig()
    exact_table(cfg)
    if args.numeric:
        numeric_table(cfg)


if __name__ == "__main__":
    main()
