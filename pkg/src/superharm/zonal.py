"""Two-point zonal functions, the sphere transform with Gegenbauer weight,
Hankel/Bessel transforms, oscillator eigenfunctions, and the Bessel-kernel
expansion of the Fourier kernel.

A zonal function of two super vector variables is phi(<x,y>), expanded through
the nilpotent part of the pairing as

    phi(<x,y>) = sum_{j=0}^{2n} (<x',y'>^j / j!) phi^{(j)}(<x_b,y_b>).

The sphere transform sends phi to alpha_{M,l}[phi]; for polynomials alpha has
an exact closed form, for general profiles it is a Gauss-Jacobi quadrature
against the weight (1-t^2)^{(M-3)/2} (M > 1 only).  Complex-valued kernels
(exp(ivt)) are carried as complex numbers at the scalar level; all exact
fields stay real.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

import scipy.integrate
import scipy.special

from .grassmann import NumericGrassmann, fermi_norm_sq, fermi_pow
from .harmonics import UnsupportedSignatureError
from .radial import RadialProfile, compose_value, radial_expand
from .scalar import (
    ExactScalar,
    bessel_profile,
    binom_frac,
    gamma_exact,
    laguerre,
    laguerre_coeffs,
    recip_gamma,
    sphere_area,
)
from .superpoly import Signature, SuperPolynomial, pairing, r_squared

RatLike = int | Fraction


class NonIntegrableError(ValueError):
    """Integrand decay metadata rules out the requested transform."""


class TruncationError(ValueError):
    """Series truncation exhausted before the tail estimate reached tolerance."""


# -- alternating-series summation ---------------------------------------------


def euler_alternating_sum(positive_parts: Sequence):
    """Abel-limit evaluation of sum_j (-1)^j c_j by iterated averaging of
    partial sums.  Works on floats, complex, and any vector type with + and
    scalar *; linear, deterministic, O(J^2)."""
    if not positive_parts:
        raise ValueError("empty series")
    partial = []
    acc = None
    for j, c in enumerate(positive_parts):
        term = c if j % 2 == 0 else c * (-1.0)
        acc = term if acc is None else acc + term
        partial.append(acc)
    row = partial
    while len(row) > 1:
        row = [(row[i] + row[i + 1]) * 0.5 for i in range(len(row) - 1)]
    return row[0]


# -- zonal profiles -----------------------------------------------------------


class ZonalProfile:
    """Scalar kernel phi with derivative access up to ``order_max`` on [-a,a].

    Values may be complex (carried as Python complex, i.e. an (re, im) pair);
    polynomial profiles keep exact coefficients for the closed-form route.
    """

    __slots__ = ("fn", "order_max", "a", "poly_coeffs")

    def __init__(self, fn, order_max, a, poly_coeffs=None):
        self.fn = fn
        self.order_max = order_max
        self.a = a
        self.poly_coeffs = poly_coeffs

    @classmethod
    def polynomial(cls, coeffs: Sequence[RatLike], a: float = math.inf) -> "ZonalProfile":
        cf = [Fraction(c) for c in coeffs]

        def fn(i: int, t: float):
            tot = 0.0
            for p in range(i, len(cf)):
                fall = 1
                for q in range(i):
                    fall *= p - q
                tot += float(cf[p]) * fall * t ** (p - i)
            return tot

        return cls(fn, math.inf, a, poly_coeffs=cf)

    @classmethod
    def exp_i(cls, v: float, a: float = math.inf) -> "ZonalProfile":
        """phi(t) = exp(i v t)."""
        return cls(lambda i, t: (1j * v) ** i * complex(math.cos(v * t), math.sin(v * t)),
                   math.inf, a)

    @classmethod
    def from_evaluator(cls, fn, order_max: int, a: float = math.inf) -> "ZonalProfile":
        return cls(fn, order_max, a)

    def eval_deriv(self, i: int, t: float):
        if i > self.order_max:
            raise ValueError(f"derivative order {i} unavailable (declared max {self.order_max})")
        return self.fn(i, t)


# -- sphere transform of monomials and polynomials (exact) --------------------


def funk_hecke_alpha_monomial(M: int, l: int, k: int) -> ExactScalar:
    """alpha_{M,l}[t^k]: exact sphere-transform coefficient of the monomial.

    (k!/(k-l)!) (2 pi^{(M-1)/2} / 2^l) Gamma((k-l+1)/2) / Gamma((M+k+l)/2),
    zero when k+l is odd or k < l (also when the last Gamma sits on a pole).
    """
    if (k + l) % 2 or k < l:
        return ExactScalar()
    pre = ExactScalar.pi_pow(
        M - 1, Fraction(2 * math.factorial(k), math.factorial(k - l) * 2**l)
    )
    return pre * gamma_exact(Fraction(k - l + 1, 2)) * recip_gamma(Fraction(M + k + l, 2))


def funk_hecke_poly(
    sig: Signature, coeffs: Sequence, H_l: SuperPolynomial, l: int
) -> SuperPolynomial:
    """Sphere transform of p(<x,y>) H_l(x) for polynomial p = sum_k c_k t^k.

    Returns the y-block polynomial sum_k c_k alpha_{M,l}[t^k] (R_y^2)^{(k-l)/2}
    H_l(y) on the doubled algebra.
    """
    M = sig.superdim
    Hy = H_l.to_y_copy()
    Ry2 = r_squared(sig, 2, 1)
    out = SuperPolynomial.zero(sig, 2)
    for k, c in enumerate(coeffs):
        c = ExactScalar.coerce(c)
        if c.is_zero:
            continue
        alpha = funk_hecke_alpha_monomial(M, l, k)
        if alpha.is_zero:
            continue
        out = out + Ry2 ** ((k - l) // 2) * Hy * (alpha * c)
    return out


# -- sphere transform of general kernels (quadrature) -------------------------


@lru_cache(maxsize=64)
def _jacobi_rule(nn: int, a: float) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
    nodes, weights = scipy.special.roots_jacobi(nn, a, a)
    return tuple(nodes), tuple(weights)


def _legendre_kernel(l: int, M: int, t: float) -> float:
    """Gegenbauer-family polynomial normalized to 1 at t = 1, via the Jacobi
    form so the M = 2 (Chebyshev) case needs no limit handling."""
    a = (M - 3) / 2.0
    norm = float(binom_frac(Fraction(M - 3, 2) + l, l))
    return float(scipy.special.eval_jacobi(l, a, a, t)) / norm


@lru_cache(maxsize=256)
def _legendre_table(l: int, M: int, nn: int) -> Tuple[float, ...]:
    nodes, _ = _jacobi_rule(nn, (M - 3) / 2.0)
    return tuple(_legendre_kernel(l, M, t) for t in nodes)


def funk_hecke_alpha_numeric(
    M: int,
    l: int,
    phi: ZonalProfile,
    u: float,
    n_der: int,
    tol: float = 1e-12,
) -> List[complex]:
    """alpha_{M,l}[phi] and its first ``n_der`` derivatives (with respect to
    the squared argument) at radius u, by differentiated Gauss-Jacobi
    quadrature against the weight (1 - t^2)^{(M-3)/2}.  M > 1 only."""
    if M <= 1:
        raise ValueError("sphere-transform quadrature needs M > 1")
    if u <= 0 or u > phi.a:
        raise ValueError("radius outside the kernel domain")
    if n_der > phi.order_max:
        raise ValueError("kernel smoothness insufficient for requested derivatives")
    sigma = sphere_area(M - 1).to_float()
    v = u * u
    a = (M - 3) / 2.0

    # derivative structure in the squared variable: each entry
    # (i, ta, b2) -> c represents c * v^{b2/2} * Int phi^{(i)}(sqrt(v) t) t^{ta} P w
    layers: List[dict] = [{(0, 0, 0): 1.0}]
    for _ in range(n_der):
        nxt: dict = {}
        for (i, ta, b2), c in layers[-1].items():
            key1 = (i + 1, ta + 1, b2 - 1)
            nxt[key1] = nxt.get(key1, 0.0) + c * 0.5
            if b2:
                key2 = (i, ta, b2 - 2)
                nxt[key2] = nxt.get(key2, 0.0) + c * (b2 / 2.0)
        layers.append(nxt)

    def eval_all(nn: int) -> List[complex]:
        nodes, weights = _jacobi_rule(nn, a)
        pl = _legendre_table(l, M, nn)
        out = []
        for layer in layers:
            tot = 0.0
            for (i, ta, b2), c in layer.items():
                s = 0.0
                for t, w, p in zip(nodes, weights, pl):
                    s = s + w * p * t**ta * phi.eval_deriv(i, u * t)
                tot = tot + c * v ** (b2 / 2.0) * s
            out.append(sigma * tot)
        return out

    nn = 64
    prev = eval_all(nn)
    for _ in range(4):
        nn *= 2
        cur = eval_all(nn)
        if all(
            abs(cg - pg) <= tol * max(1.0, abs(cg)) for cg, pg in zip(cur, prev)
        ):
            return cur
        prev = cur
    return prev


def _grassmann_expansion(values: Sequence[complex], n: int) -> NumericGrassmann:
    """sum_k (-1)^k x'^{2k}/k! values[k] on 2n generators (the fermionic
    Taylor assembly used for profile-level results)."""
    out = NumericGrassmann(2 * n)
    for k in range(n + 1):
        blade = NumericGrassmann.from_exact(fermi_pow(fermi_norm_sq(n), k))
        out = out + blade * (((-1) ** k / math.factorial(k)) * values[k])
    return out


def funk_hecke_apply(
    sig: Signature,
    phi: ZonalProfile,
    H_l: SuperPolynomial,
    l: int,
    ycoords: Sequence[float],
    tol: float = 1e-12,
) -> NumericGrassmann:
    """Sphere integral of phi(<x,y>) H_l(x) as a Grassmann-valued function of
    the bosonic point y: alpha_{M,l}[phi](R_y^2) H_l(y) / R_y^l, with the
    division performed on the profile alpha(u)/u^{l/2} (parity makes that the
    polynomial-safe route) before the fermionic expansion."""
    M = sig.superdim
    if M <= 1:
        raise ValueError("sphere transform needs M > 1")
    n = sig.n
    if 2 * n > phi.order_max:
        raise ValueError("kernel smoothness insufficient")
    ry = math.sqrt(sum(c * c for c in ycoords))
    alphas = funk_hecke_alpha_numeric(M, l, phi, ry, n, tol)
    v = ry * ry
    beta = []
    for j in range(n + 1):
        tot = 0.0
        for i in range(j + 1):
            fall = 1.0
            for p in range(j - i):
                fall *= -l / 2.0 - p
            tot = tot + math.comb(j, i) * alphas[i] * fall * v ** (-l / 2.0 - (j - i))
        beta.append(tot)
    expansion = _grassmann_expansion(beta, n)
    return expansion * H_l.evaluate_bosonic(ycoords)


# -- Hankel / Fourier-Bessel transform ----------------------------------------


def hankel(nu, psi: RadialProfile, u: float, tol: float = 1e-10) -> float:
    """Hankel-type transform of the squared-variable profile psi:
    Int_0^inf psi(r^2) (J_nu(ru)/(ru)^nu) r^{2nu+1} dr."""
    nu = float(nu)
    if nu <= -0.5:
        raise ValueError("order must exceed -1/2")
    if psi.decay != "gaussian":
        raise NonIntegrableError("profile decay metadata does not ensure convergence")
    val, err = scipy.integrate.quad(
        lambda r: psi(r * r) * bessel_profile(nu, (r * u) ** 2) * r ** (2 * nu + 1),
        0.0,
        math.inf,
        epsabs=tol,
        epsrel=tol,
        limit=200,
    )
    return val


def fourier_bessel(nu, psi: RadialProfile, u2: float, tol: float = 1e-10) -> float:
    """The transform in the squared variable: value at u2 = u^2."""
    return hankel(nu, psi, math.sqrt(u2), tol)


def fourier_bessel_profile(nu, psi: RadialProfile, j_max: int, tol: float = 1e-10) -> RadialProfile:
    """The transform as a radial profile: derivative order j costs one Bessel
    order shift, d/du F_nu = -(1/2) F_{nu+1}."""
    nu = float(nu)

    def fn(j: int, u: float) -> float:
        return (-0.5) ** j * fourier_bessel(nu + j, psi, u, tol)

    return RadialProfile.from_evaluator(fn, j_max=j_max, decay="gaussian")


# -- oscillator eigenfunctions ------------------------------------------------


@dataclass(frozen=True)
class RadialHarmonic:
    """A product h(R^2) H_k with h an exact-symbolic radial profile."""

    sig: Signature
    profile: RadialProfile
    harmonic: SuperPolynomial
    k: int

    def value(self, coords: Sequence[float]) -> NumericGrassmann:
        r = math.sqrt(sum(c * c for c in coords))
        return radial_expand(self.profile, self.sig, r) * self.harmonic.evaluate_bosonic(coords)


def clifford_hermite(sig: Signature, j: int, k: int, H_k: SuperPolynomial) -> RadialHarmonic:
    """Oscillator eigenfunction 2^{2j} j! L_j^{M/2+k-1}(R^2) H_k exp(-R^2/2)."""
    q = Fraction(sig.superdim - 2 + 2 * k, 2)
    prof = RadialProfile.laguerre_exp(j, q, Fraction(1, 2)) * Fraction(
        2 ** (2 * j) * math.factorial(j)
    )
    return RadialHarmonic(sig, prof, H_k, k)


def harmonic_laplacian_profile(h: RadialProfile, M: int, k: int) -> RadialProfile:
    """Profile g with lap(h(R^2) H_k) = g(R^2) H_k: g = 4u h'' + (4k+2M) h'."""
    d1 = h.derivative()
    return d1.derivative().mul_power(1) * Fraction(4) + d1 * Fraction(4 * k + 2 * M)


def oscillator_residual(sig: Signature, j: int, k: int) -> RadialProfile:
    """Exact residual profile of (R^2 - lap)/2 psi_{j,k} = (2j+k+M/2) psi_{j,k};
    identically zero by the Laguerre differential equation."""
    M = sig.superdim
    h = clifford_hermite(sig, j, k, SuperPolynomial.zero(sig)).profile
    lhs = (h.mul_power(1) - harmonic_laplacian_profile(h, M, k)) * Fraction(1, 2)
    return lhs - h * Fraction(4 * j + 2 * k + M, 2)


# -- Fourier transform of radial x harmonic functions -------------------------


def bochner_transform(
    sig: Signature,
    H_k: SuperPolynomial,
    k: int,
    psi: RadialProfile,
    ycoords: Sequence[float],
    sign: int = 1,
    tol: float = 1e-10,
) -> NumericGrassmann:
    """Fourier transform of H_k(x) psi(R^2): (+-i)^k H_k(y) F_{k+M/2-1}[psi](R_y^2),
    assembled from the Hankel transform and the fermionic expansion of the
    transform profile."""
    M = sig.superdim
    if M <= 1:
        raise ValueError("transform reduction needs M > 1")
    if psi.decay != "gaussian":
        raise NonIntegrableError("profile decay metadata does not ensure convergence")
    n = sig.n
    nu = k + M / 2.0 - 1.0
    ry = math.sqrt(sum(c * c for c in ycoords))
    v = ry * ry
    values = [(-0.5) ** i * fourier_bessel(nu + i, psi, v, tol) for i in range(n + 1)]
    expansion = _grassmann_expansion(values, n)
    return expansion * H_k.evaluate_bosonic(ycoords) * (sign * 1j) ** k


def bochner_oracle(
    sig: Signature,
    H_k: SuperPolynomial,
    k: int,
    psi: RadialProfile,
    ycoords: Sequence[float],
    sign: int = 1,
    rmax: float = 10.0,
    nodes: int = 240,
) -> NumericGrassmann:
    """Direct route for cross-checking: superpolar decomposition of the
    Fourier integral, radial quadrature over the sphere transform of the
    exp(ivt) kernel at each radius (the nested two-quadrature chain)."""
    M = sig.superdim
    n = sig.n
    xs, ws = scipy.special.roots_legendre(nodes)
    acc = NumericGrassmann(2 * n)
    for t, w in zip(xs, ws):
        r = rmax * (t + 1) / 2
        if r <= 0:
            continue
        inner = funk_hecke_apply(sig, ZonalProfile.exp_i(sign * r), H_k, k, ycoords)
        acc = acc + inner * (w * (rmax / 2) * psi(r * r) * r ** (M + k - 1))
    return acc * (2 * math.pi) ** (-M / 2.0)


# -- the Bessel expansion of the Fourier kernel -------------------------------


def _max_abs(v: NumericGrassmann) -> float:
    return max((abs(c) for c in v.terms.values()), default=0.0)


def _shift_gens(v: NumericGrassmann, total: int, offset: int) -> NumericGrassmann:
    return NumericGrassmann(total, {mask << offset: c for mask, c in v.terms.items()})


def _exp_i_value(v: NumericGrassmann, sign: int) -> NumericGrassmann:
    """exp(i * sign * v) for an even Grassmann value with real body."""
    body = v.coeff(0).real
    nil = v - NumericGrassmann.scalar(v.ngen, v.coeff(0))
    out = NumericGrassmann.scalar(v.ngen, complex(math.cos(sign * body), math.sin(sign * body)))
    term = NumericGrassmann.scalar(v.ngen, 1.0)
    total = NumericGrassmann.scalar(v.ngen, 1.0)
    for j in range(1, v.ngen + 1):
        term = term * nil * (sign * 1j / j)
        if not term.terms:
            break
        total = total + term
    return out * total


def _kernel_values(
    sig: Signature, K: int, coords: Sequence[float], m2_limit: bool
) -> List[NumericGrassmann]:
    """F_0 .. F_K evaluated over the doubled Grassmann algebra at the bosonic
    points, via the homogenized three-term recurrence in the pairing t and
    u = Rx^2 Ry^2 (numeric coefficients; exact-kernel construction grows
    combinatorially with k and is only worthwhile for small degrees)."""
    M = sig.superdim
    if M <= 0 and M % 2 == 0:
        raise UnsupportedSignatureError(f"kernel normalization undefined at M = {M}")
    if M == 2 and not m2_limit:
        raise UnsupportedSignatureError(
            "kernel prefactor singular at M=2; enable the limit rule"
        )
    total = 4 * sig.n
    t = pairing(sig).evaluate_bosonic(coords)
    u = r_squared(sig, 2, 0).evaluate_bosonic(coords) * r_squared(sig, 2, 1).evaluate_bosonic(coords)
    sigma = sphere_area(M).to_float()
    one = NumericGrassmann.scalar(total, 1.0)
    out = [one * (1.0 / sigma)]
    if K == 0:
        return out
    if M == 2:
        tm, t0 = one, t
        out.append(t0 * (2.0 / sigma))
        for i in range(2, K + 1):
            tm, t0 = t0, t * t0 * 2.0 - u * tm
            out.append(t0 * (2.0 / sigma))
        return out
    lam = (M - 2) / 2.0
    cm, c0 = one, t * (2 * lam)
    out.append(c0 * (M / (M - 2) / sigma))
    for i in range(2, K + 1):
        cm, c0 = c0, (t * c0 * (2 * (i + lam - 1)) - u * cm * (i + 2 * lam - 2)) * (1.0 / i)
        out.append(c0 * ((2 * i + M - 2) / (M - 2) / sigma))
    return out


def mehler_bessel_check(
    sig: Signature,
    xcoords: Sequence[float],
    ycoords: Sequence[float],
    K: int = 40,
    tol: float = 1e-8,
    sign: int = 1,
    m2_limit: bool = False,
) -> float:
    """Residual of the Bessel-kernel expansion of the Fourier kernel,

      (2pi)^{-M/2} exp(+-i<x,y>) = sum_k (+-i)^k F_k(x,y) W_{M/2+k-1}(Rx^2 Ry^2),

    both sides expanded over the doubled Grassmann algebra at the bosonic
    points.  Stops early once three successive term magnitudes fall below
    tol/10; raises TruncationError if K terms never get there."""
    M = sig.superdim
    n = sig.n
    coords = list(xcoords) + list(ycoords)
    pair_val = pairing(sig).evaluate_bosonic(coords)
    lhs = _exp_i_value(pair_val, sign) * (2 * math.pi) ** (-M / 2.0)

    w = r_squared(sig, 2, 0).evaluate_bosonic(coords) * r_squared(sig, 2, 1).evaluate_bosonic(coords)
    kern = _kernel_values(sig, K, coords, m2_limit)
    rhs = NumericGrassmann(4 * n)
    deltas: List[float] = []
    converged = False
    for k in range(K + 1):
        nu = M / 2.0 + k - 1.0
        prof = RadialProfile.from_evaluator(
            lambda i, s, nu=nu: (-0.5) ** i * bessel_profile(nu + i, s), j_max=4 * n
        )
        bess = compose_value(prof, w, 2 * n)
        term = kern[k] * bess * (sign * 1j) ** k
        rhs = rhs + term
        deltas.append(_max_abs(term))
        if len(deltas) >= 3 and all(d < tol / 10 for d in deltas[-3:]):
            converged = True
            break
    if not converged:
        raise TruncationError(
            f"kernel series tail still {deltas[-1]:.2e} after {K + 1} terms"
        )
    return lhs.max_abs_diff(rhs)


def hille_hardy_check(M: int, k: int, u1: float, u2: float, J: int = 60) -> float:
    """Residual of the scalar Laguerre expansion of the normalized Bessel
    profile,

      W_nu(u1 u2) = sum_j 2 j! (-1)^j / Gamma(j+nu+1)
                     L_j^nu(u1) L_j^nu(u2) exp(-(u1+u2)/2),  nu = M/2+k-1,

    with the alternating (Abel-summable) series evaluated by iterated
    averaging of partial sums."""
    nu = M / 2.0 + k - 1.0
    lhs = bessel_profile(nu, u1 * u2)
    e = math.exp(-(u1 + u2) / 2.0)
    parts = [
        2.0
        * math.exp(math.lgamma(j + 1) - math.lgamma(j + nu + 1))
        * laguerre(j, nu, u1)
        * laguerre(j, nu, u2)
        * e
        for j in range(J)
    ]
    return abs(lhs - euler_alternating_sum(parts))


def mehler_expansions_agree(
    sig: Signature,
    xcoords: Sequence[float],
    ycoords: Sequence[float],
    K: int = 20,
    J: int = 60,
    sign: int = 1,
) -> float:
    """Compare the two kernel representations truncated at the same k-order:
    the Bessel-profile form against the Gaussian-weighted double Laguerre
    series (summed per Grassmann coefficient by the alternating-series
    accelerator)."""
    M = sig.superdim
    n = sig.n
    total = 4 * n
    coords = list(xcoords) + list(ycoords)
    rx = math.sqrt(sum(c * c for c in xcoords))
    ry = math.sqrt(sum(c * c for c in ycoords))

    w = r_squared(sig, 2, 0).evaluate_bosonic(coords) * r_squared(sig, 2, 1).evaluate_bosonic(coords)
    gauss_x = _shift_gens(radial_expand(RadialProfile.exponential(Fraction(1, 2)), sig, rx), total, 0)
    gauss_y = _shift_gens(radial_expand(RadialProfile.exponential(Fraction(1, 2)), sig, ry), total, 2 * n)
    gauss = gauss_x * gauss_y

    kern = _kernel_values(sig, K, coords, m2_limit=True)
    side_a = NumericGrassmann(total)
    side_b = NumericGrassmann(total)
    for k in range(K + 1):
        nu = M / 2.0 + k - 1.0
        q = Fraction(M - 2 + 2 * k, 2)
        Fk = kern[k]
        phase = (sign * 1j) ** k

        prof = RadialProfile.from_evaluator(
            lambda i, s, nu=nu: (-0.5) ** i * bessel_profile(nu + i, s), j_max=4 * n
        )
        side_a = side_a + Fk * compose_value(prof, w, 2 * n) * phase

        parts = []
        for j in range(J):
            lag = RadialProfile.polynomial(laguerre_coeffs(j, q))
            lx = _shift_gens(radial_expand(lag, sig, rx), total, 0)
            ly = _shift_gens(radial_expand(lag, sig, ry), total, 2 * n)
            c = 2.0 * math.exp(math.lgamma(j + 1) - math.lgamma(j + float(q) + 1))
            parts.append(lx * ly * gauss * c)
        side_b = side_b + Fk * euler_alternating_sum(parts) * phase
    return side_a.max_abs_diff(side_b)
