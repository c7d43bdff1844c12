#!/usr/bin/env python3
"""Tabulate the fundamental solutions of iterated Laplacians across
signatures: the exact radial profile, a check that the right number of radial
Laplacians annihilates it away from the origin, and (at odd superdimension)
the exact constant produced by the normalization chain.

Usage: python3 scripts/fundsol_table.py
"""

from dataclasses import dataclass

from superharm import Signature, fundamental_solution
from superharm.radial import fundamental_normalization_check, laplacian_profile


@dataclass(frozen=True)
class TableConfig:
    signatures: tuple = ((3, 0), (3, 1), (5, 1), (4, 1), (1, 1), (5, 2), (2, 0))
    l_max: int = 3


def run(cfg: TableConfig) -> None:
    print(f"{'(m,n)':>7} {'M':>4} {'l':>3} {'profile of nu_2l':<42} {'annihilated':>11} {'constant':>12}")
    for (m, n) in cfg.signatures:
        sig = Signature(m, n)
        M = sig.superdim
        for l in range(1, cfg.l_max + 1):
            try:
                nu = fundamental_solution(sig, l)
            except ValueError as exc:
                print(f"{f'({m},{n})':>7} {M:>4} {l:>3} -- {exc}")
                continue
            p = nu.profile
            for _ in range(l):
                p = laplacian_profile(p, M)
            killed = "yes" if p.is_zero else "NO"
            if M % 2:
                lhs, rhs = fundamental_normalization_check(sig, l)
                const = lhs.to_text() if (lhs - rhs).is_zero else "MISMATCH"
            else:
                const = "-"
            print(f"{f'({m},{n})':>7} {M:>4} {l:>3} {nu.profile.to_text():<42} {killed:>11} {const:>12}")


if __name__ == "__main__":
    run(TableConfig())
