"""Spherical harmonics: kernel bases, dimensions, Fischer blocks, reproducing kernel.

Degree-k harmonics are the kernel of the Laplacian restricted to homogeneous
degree k.  Everything here is exact: bases come from rational row reduction of
the Laplacian's monomial matrix, the Fischer decomposition from the recursion

    lap(R^{2j} H_k) = 2j (M + 2j + 2k - 2) R^{2j-2} H_k,

and the reproducing kernel from exact Gegenbauer coefficients homogenized with
the two-point pairing.  The super-dimension M = m - 2n may be any integer not
in {0, -2, -4, ...}; those even nonpositive values break both Fischer
(a vanishing extraction constant) and the kernel normalization (sigma_M = 0),
and raise UnsupportedSignatureError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .scalar import ExactScalar, chebyshev_t_coeffs, gegenbauer_coeffs, sphere_area
from .superpoly import (
    Signature,
    SuperPolynomial,
    TermKey,
    laplacian,
    pairing,
    r_squared,
)


class UnsupportedSignatureError(ValueError):
    """Operation undefined at this super-dimension (M in -2N)."""


def _m_is_degenerate(M: int) -> bool:
    return M <= 0 and M % 2 == 0


# -- dimensions ---------------------------------------------------------------


def dim_polynomials(sig: Signature, k: int) -> int:
    """dim of the homogeneous degree-k component: sum_i C(2n,i) C(k-i+m-1, m-1)."""
    if k < 0:
        return 0
    m, n = sig.m, sig.n
    return sum(
        math.comb(2 * n, i) * math.comb(k - i + m - 1, m - 1)
        for i in range(min(k, 2 * n) + 1)
    )


def dim_harmonics(sig: Signature, k: int) -> int:
    """Dimension of the degree-k harmonics: the double binomial difference.

    Valid for every M (multiplication by R^2 is injective because m >= 1), so
    unlike the Fischer decomposition this needs no restriction on M.
    """
    if k < 0:
        return 0
    return dim_polynomials(sig, k) - dim_polynomials(sig, k - 2)


# -- harmonic bases -----------------------------------------------------------


def monomial_keys(sig: Signature, k: int) -> List[TermKey]:
    """All degree-k monomial keys, in a fixed deterministic order."""
    m, n = sig.m, sig.n
    out: List[TermKey] = []

    def bos_parts(total, slots):
        if slots == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in bos_parts(total - first, slots - 1):
                yield (first,) + rest

    for mask in range(1 << (2 * n)):
        fdeg = mask.bit_count()
        if fdeg > k:
            continue
        for bos in bos_parts(k - fdeg, m):
            out.append((bos, mask))
    out.sort()
    return out


@dataclass
class HarmonicBasis:
    sig: Signature
    k: int
    elements: List[SuperPolynomial]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _rref_nullspace(rows: List[Dict[int, Fraction]], ncols: int) -> List[List[Fraction]]:
    """Exact nullspace of a sparse rational matrix, deterministic pivoting."""
    # dense elimination; desk-scale matrices only
    mat = [[r.get(c, Fraction(0)) for c in range(ncols)] for r in rows]
    pivots: List[int] = []
    rix = 0
    for col in range(ncols):
        sel = None
        for rr in range(rix, len(mat)):
            if mat[rr][col] != 0:
                sel = rr
                break
        if sel is None:
            continue
        mat[rix], mat[sel] = mat[sel], mat[rix]
        pv = mat[rix][col]
        mat[rix] = [v / pv for v in mat[rix]]
        for rr in range(len(mat)):
            if rr != rix and mat[rr][col] != 0:
                f = mat[rr][col]
                mat[rr] = [a - f * b for a, b in zip(mat[rr], mat[rix])]
        pivots.append(col)
        rix += 1
        if rix == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for rr, pc in enumerate(pivots):
            v[pc] = -mat[rr][fc]
        basis.append(v)
    return basis


def harmonic_basis(sig: Signature, k: int) -> HarmonicBasis:
    """Exact basis of the degree-k harmonics (kernel of the Laplacian)."""
    if k < 0:
        raise ValueError("degree must be >= 0")
    cols = monomial_keys(sig, k)
    if k < 2:
        elems = [SuperPolynomial(sig, {key: Fraction(1)}) for key in cols]
        return HarmonicBasis(sig, k, elems)
    rows_keys = monomial_keys(sig, k - 2)
    rindex = {key: i for i, key in enumerate(rows_keys)}
    # build the transpose column by column, then flip to rows
    rows: List[Dict[int, Fraction]] = [dict() for _ in rows_keys]
    for ci, key in enumerate(cols):
        mono = SuperPolynomial(sig, {key: Fraction(1)})
        img = laplacian(mono)
        for rkey, c in img.terms.items():
            rows[rindex[rkey]][ci] = c.as_fraction()
    null = _rref_nullspace(rows, len(cols))
    elems = []
    for vec in null:
        terms = {cols[i]: q for i, q in enumerate(vec) if q != 0}
        elems.append(SuperPolynomial(sig, terms))
    return HarmonicBasis(sig, k, elems)


# -- Fischer decomposition ----------------------------------------------------


def fischer_decompose(f: SuperPolynomial) -> List[Tuple[int, SuperPolynomial]]:
    """Write homogeneous f of degree d as sum_j R^{2j} H_{d-2j}, H harmonic.

    Returns [(j, H_{d-2j})] with zero blocks dropped.  Exact.  Needs M not in
    {0, -2, -4, ...}: the extraction constants 2j(M + 2d - 2j - 2) vanish there.
    """
    sig = f.sig
    if _m_is_degenerate(sig.superdim):
        raise UnsupportedSignatureError(
            f"Fischer decomposition breaks down at M = {sig.superdim}"
        )
    if f.is_zero:
        return []
    d = f.degree()
    if any(f._deg(key, None) != d for key in f.terms):
        raise ValueError("fischer_decompose needs a homogeneous polynomial")
    return _fischer(f, d)


def _fischer(f: SuperPolynomial, d: int) -> List[Tuple[int, SuperPolynomial]]:
    if f.is_zero:
        return []
    sig = f.sig
    M = sig.superdim
    lap = laplacian(f)
    lower = dict(_fischer(lap, d - 2))  # lap f = sum_i R^{2i} G_{d-2-2i}
    R2 = r_squared(sig)
    blocks: List[Tuple[int, SuperPolynomial]] = []
    top = f
    for i, G in sorted(lower.items()):
        j = i + 1                      # R^{2i} G came from R^{2j} H with j = i+1
        lam = 2 * j * (M + 2 * d - 2 * j - 2)
        H = G * Fraction(1, lam)
        blocks.append((j, H))
        top = top - R2**j * H
    if not top.is_zero:
        blocks.insert(0, (0, top))
    return blocks


def fischer_reconstruct(sig: Signature, blocks: List[Tuple[int, SuperPolynomial]]) -> SuperPolynomial:
    R2 = r_squared(sig)
    out = SuperPolynomial.zero(sig)
    for j, H in blocks:
        out = out + R2**j * H
    return out


# -- reproducing kernel -------------------------------------------------------


def reproducing_kernel(sig: Signature, k: int, m2_limit: bool = True) -> SuperPolynomial:
    """The two-point kernel F_k(x, y) on the doubled algebra.

    Closed form: (2k+M-2)/(M-2) * (1/sigma_M) * (RxRy)^k C_k^{(M-2)/2}(<x,y>/RxRy),
    homogenized so only <x,y> and the even powers Rx^2 Ry^2 appear.  At M = 2
    the prefactor is formally singular for k >= 1; with ``m2_limit`` the
    standard resolution lim_{lam->0} ((k+lam)/lam) C_k^lam = 2 T_k replaces it,
    otherwise that case raises.
    """
    M = sig.superdim
    if _m_is_degenerate(M):
        raise UnsupportedSignatureError(f"kernel normalization undefined at M = {M}")
    sigma = sphere_area(M)
    inv_sigma = ExactScalar.rational(1) / sigma
    if k == 0:
        return SuperPolynomial.constant(sig, inv_sigma, copies=2)
    if M == 2:
        if not m2_limit:
            raise UnsupportedSignatureError(
                "kernel prefactor (2k+M-2)/(M-2) singular at M=2; enable the limit rule"
            )
        coeffs = {p: 2 * c for p, c in chebyshev_t_coeffs(k).items()}
        pre = inv_sigma
    else:
        lam = Fraction(M - 2, 2)
        coeffs = gegenbauer_coeffs(k, lam)
        pre = inv_sigma * Fraction(2 * k + M - 2, M - 2)
    t = pairing(sig)
    u = r_squared(sig, 2, 0) * r_squared(sig, 2, 1)
    out = SuperPolynomial.zero(sig, 2)
    for p, c in sorted(coeffs.items()):
        out = out + t**p * u ** ((k - p) // 2) * (pre * c)
    return out


def kernel_value(M: int, k: int, t: float, u: float) -> float:
    """Numeric F_k given the invariants t = <x,y> and u = Rx^2 Ry^2.

    Uses the homogenized three-term recurrence, so u = 0 and negative-M cases
    cost nothing special.
    """
    if _m_is_degenerate(M):
        raise UnsupportedSignatureError(f"kernel normalization undefined at M = {M}")
    sigma = sphere_area(M).to_float()
    if k == 0:
        return 1.0 / sigma
    if M == 2:
        tm, t0 = 1.0, t                        # homogenized Chebyshev
        for _ in range(2, k + 1):
            tm, t0 = t0, 2 * t * t0 - u * tm
        return 2.0 * t0 / sigma
    lam = (M - 2) / 2.0
    cm, c0 = 1.0, 2 * lam * t
    for i in range(2, k + 1):
        cm, c0 = c0, (2 * (i + lam - 1) * t * c0 - (i + 2 * lam - 2) * u * cm) / i
    return (2 * k + M - 2) / (M - 2) / sigma * c0
