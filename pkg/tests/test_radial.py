"""Spherically symmetric superfunctions: expansion, calculus, fundamental solutions."""

import math
from fractions import Fraction

import pytest

from superharm.grassmann import NumericGrassmann
from superharm.harmonics import UnsupportedSignatureError, harmonic_basis
from superharm.integrate import pizzetti, reduce_integral, sphere_area
from superharm.radial import (
    RadialProfile,
    RadialSuperfunction,
    compose,
    compose_value,
    euler_profile,
    fundamental_normalization_check,
    fundamental_solution,
    iterated_laplacian_constant,
    laplacian_commutator_apply,
    laplacian_profile,
    mean_value_weight,
    osp_invariance_check,
    radial_expand,
    radial_gradient,
    radial_laplacian,
    radial_power,
)
from superharm.scalar import ExactScalar
from superharm.superpoly import (
    Signature,
    SuperPolynomial,
    euler,
    gradient,
    laplace_beltrami_via_generators,
    laplacian,
    r_squared,
)

SIGS = [Signature(3, 1), Signature(2, 1), Signature(1, 1), Signature(2, 2)]


def rising(a: Fraction, j: int) -> Fraction:
    out = Fraction(1)
    for i in range(j):
        out *= a + i
    return out


# -- profiles -----------------------------------------------------------------


def test_profile_parse_round_trip():
    texts = ["pow(1/2)", "powlog(-3/2)", "exp(1)", "exp(1/2)", "lagexp(1,1/2,1/2)", "poly([1,-2,3/4])"]
    for t in texts:
        p = RadialProfile.parse(t)
        assert p.sym is not None
        q = RadialProfile.parse(t)
        assert (p - q).is_zero
    with pytest.raises(ValueError):
        RadialProfile.parse("sinh(1)")
    with pytest.raises(ValueError):
        RadialProfile.parse("poly(1,2)")


def test_profile_exact_hooks():
    assert RadialProfile.power(Fraction(1, 2)).value_exact_at_zero().is_zero
    assert RadialProfile.power(Fraction(-1, 2)).value_exact_at_zero() is None
    assert RadialProfile.power_log(0).value_exact_at_zero() is None
    # u^{1/2} log u -> 0 at the origin
    assert RadialProfile.power_log(Fraction(1, 2)).value_exact_at_zero().is_zero
    v = RadialProfile.exponential(3).value_exact_at_zero()
    assert (v - ExactScalar.rational(1)).is_zero

    assert RadialProfile.polynomial([1, 2, 3]).value_exact_at_one().as_fraction() == 6
    # log terms vanish at u = 1
    p = RadialProfile.polynomial([5]) + RadialProfile.power_log(2)
    assert p.value_exact_at_one().as_fraction() == 5
    assert RadialProfile.exponential(1).value_exact_at_one() is None

    assert RadialProfile.exponential(1).gaussian_rate == 1
    assert RadialProfile.exponential(Fraction(1, 2)).gaussian_rate == Fraction(1, 2)
    assert (RadialProfile.exponential(1) * Fraction(2)).gaussian_rate is None
    assert RadialProfile.polynomial([1]).gaussian_rate is None


def test_profile_derivative_and_product():
    # d/du on u^{3/2} log(u) e^{-u}: product rule across all three factors
    p = RadialProfile.power_log(Fraction(3, 2)) * RadialProfile.exponential(1)
    d = p.derivative()
    for u in (0.4, 1.0, 2.3):
        h = 1e-6
        num = (p(u + h) - p(u - h)) / (2 * h)
        assert abs(d(u) - num) < 1e-7 * max(1.0, abs(num))

    # Laguerre-exponential: L_1^{1/2}(u) e^{-u/2} = (3/2 - u) e^{-u/2}
    lp = RadialProfile.laguerre_exp(1, Fraction(1, 2))
    for u in (0.0, 0.7, 2.0):
        assert abs(lp(u) - (1.5 - u) * math.exp(-u / 2)) < 1e-14


def test_numeric_evaluator_fail_fast():
    p = RadialProfile.from_evaluator(lambda j, u: math.exp(-u) * (-1) ** j, j_max=2)
    assert p.eval_deriv(2, 1.0) == pytest.approx(math.exp(-1.0))
    with pytest.raises(ValueError, match="unavailable"):
        p.eval_deriv(3, 1.0)
    with pytest.raises(ValueError, match="unavailable"):
        p.derivative().derivative().derivative()


# -- fermionic Taylor expansion ----------------------------------------------


def test_expansion_gaussian_explicit():
    # exp(-R^2/2) = e^{-r^2/2} sum_j x'^{2j} / (2^j j!)
    for sig in SIGS:
        p = RadialProfile.exponential(Fraction(1, 2))
        terms = RadialSuperfunction(sig, p).expansion_terms()
        r = 1.2
        for j, pj in terms:
            want = math.exp(-r * r / 2) / (2**j * math.factorial(j))
            assert abs(pj(r * r) - want) < 1e-14


def test_expansion_power_coefficients():
    # R^alpha: x'^{2j}-coefficient is (-1)^j/j! (alpha/2+1-j)_j r^{alpha-2j}
    sig = Signature(1, 2)
    r = 1.37
    for alpha in (Fraction(1), Fraction(-1), Fraction(7, 2), Fraction(-3)):
        f = radial_power(sig, alpha)
        for j, pj in RadialSuperfunction(sig, f.profile).expansion_terms():
            want = (
                Fraction((-1) ** j, math.factorial(j))
                * rising(alpha / 2 + 1 - j, j)
            ) * r ** (float(alpha) - 2 * j)
            assert abs(pj(r * r) - float(want)) < 1e-12 * max(1.0, abs(float(want)))


def test_expansion_blade_values():
    # n=1: value of R = r - x'^2/(2r) and of R^{-1} = 1/r + x'^2/(2 r^3)
    sig = Signature(3, 1)
    r = 1.7
    v = radial_power(sig, 1).expand(r)
    assert abs(v.coeff(0) - r) < 1e-14
    assert abs(v.coeff(0b11) - (-1 / (2 * r))) < 1e-14
    w = radial_power(sig, -1).expand(r)
    assert abs(w.coeff(0) - 1 / r) < 1e-14
    assert abs(w.coeff(0b11) - 1 / (2 * r**3)) < 1e-14


def test_expansion_matches_polynomial_evaluation():
    sig = Signature(2, 2)
    p = RadialProfile.polynomial([Fraction(2), Fraction(-1), Fraction(1, 3)])
    f = RadialSuperfunction(sig, p)
    poly = f.as_polynomial()
    for coords in ([0.5, -0.2], [1.4, 0.3]):
        r = math.sqrt(sum(c * c for c in coords))
        assert f.expand(r).max_abs_diff(poly.evaluate_bosonic(coords)) < 1e-12


def test_even_powers_reduce_to_polynomials():
    for sig in SIGS:
        R2 = r_squared(sig)
        assert (radial_power(sig, 2).as_polynomial() - R2).is_zero
        assert (radial_power(sig, 4).as_polynomial() - R2 * R2).is_zero
    with pytest.raises(ValueError):
        radial_power(Signature(3, 1), 1).as_polynomial()


def test_expansion_guards():
    sig = Signature(1, 2)
    with pytest.raises(ValueError, match="unavailable"):
        radial_expand(RadialProfile.from_evaluator(lambda j, u: 0.0, j_max=1), sig, 1.0)
    with pytest.raises(ValueError):
        radial_expand(RadialProfile.exponential(1), sig, 0.0)


def test_product_morphism():
    # (g h)(R^2) = g(R^2) h(R^2), numerically on transcendental profiles
    sig = Signature(2, 2)
    g = RadialProfile.exponential(Fraction(1, 2))
    h = RadialProfile.power(Fraction(3, 2))
    for r in (0.6, 1.3):
        lhs = radial_expand(g * h, sig, r)
        rhs = radial_expand(g, sig, r) * radial_expand(h, sig, r)
        assert lhs.max_abs_diff(rhs) < 1e-13
    # exact on polynomial profiles
    a = RadialProfile.polynomial([1, 2])
    b = RadialProfile.polynomial([0, 0, Fraction(1, 5)])
    pa = RadialSuperfunction(sig, a).as_polynomial()
    pb = RadialSuperfunction(sig, b).as_polynomial()
    assert (RadialSuperfunction(sig, a * b).as_polynomial() - pa * pb).is_zero


def test_power_law():
    sig = Signature(3, 1)
    pa = radial_power(sig, 3).profile * radial_power(sig, -1).profile
    assert (pa - radial_power(sig, 2).profile).is_zero
    pb = radial_power(sig, Fraction(1, 2)).profile * radial_power(sig, Fraction(5, 2)).profile
    assert (pb - radial_power(sig, 3).profile).is_zero


# -- composition --------------------------------------------------------------


def test_compose_square_root_of_fourth_power():
    # h(g(R^2)) with h = sqrt, g = u^2 recovers R^2 pointwise, including the
    # nilpotent part (the composed profile is |u| = u on u > 0)
    sig = Signature(3, 1)
    R4 = r_squared(sig) * r_squared(sig)
    sqrt_prof = RadialProfile.power(Fraction(1, 2))
    for coords in ([0.5, -0.2, 0.9], [1.4, 0.3, -0.8]):
        got = compose(sqrt_prof, R4, coords)
        want = r_squared(sig).evaluate_bosonic(coords)
        assert got.max_abs_diff(want) < 1e-12


def test_compose_nilpotent_body():
    # e^{-f} at f = f1 f2: body 0, exact truncated series 1 - f1 f2
    sig = Signature(3, 1)
    f = SuperPolynomial.coordinate(sig, 4) * SuperPolynomial.coordinate(sig, 5)
    v = compose(RadialProfile.exponential(1), f, [0.1, 0.2, 0.3])
    assert abs(v.coeff(0) - 1.0) < 1e-15
    assert abs(v.coeff(0b11) + 1.0) < 1e-15


def test_compose_matches_radial_expand():
    # composing h with the plain norm-square polynomial is the expansion itself
    sig = Signature(2, 2)
    h = RadialProfile.exponential(Fraction(1, 3))
    for coords in ([0.8, 0.1], [0.4, -1.0]):
        r = math.sqrt(sum(c * c for c in coords))
        got = compose(h, r_squared(sig), coords)
        assert got.max_abs_diff(radial_expand(h, sig, r)) < 1e-13


# -- first-order calculus -----------------------------------------------------


def test_factored_gradient_exact():
    for sig in SIGS:
        hp = RadialProfile.polynomial([Fraction(0), Fraction(1), Fraction(2, 3)])
        f = RadialSuperfunction(sig, hp).as_polynomial()
        vec, prof = radial_gradient(hp, sig)
        profP = RadialSuperfunction(sig, prof).as_polynomial()
        g = gradient(f)
        for k in range(sig.total_vars):
            assert (g[k] - vec[k] * profP).is_zero


def test_euler_profile_exact():
    for sig in SIGS:
        hp = RadialProfile.polynomial([Fraction(5), Fraction(-2), Fraction(1, 2)])
        f = RadialSuperfunction(sig, hp).as_polynomial()
        rhs = RadialSuperfunction(sig, euler_profile(hp)).as_polynomial()
        assert (euler(f) - rhs).is_zero


def test_radial_laplacian_exact():
    for sig in SIGS:
        hp = RadialProfile.polynomial([Fraction(2), Fraction(-1), Fraction(3), Fraction(1, 7)])
        f = RadialSuperfunction(sig, hp).as_polynomial()
        rhs = RadialSuperfunction(sig, radial_laplacian(hp, sig)).as_polynomial()
        assert (laplacian(f) - rhs).is_zero


def test_laplacian_numeric_identity_matches_symbolic():
    # numeric-evaluator route 4u h^{(j+2)} + (4j+2M) h^{(j+1)} against the
    # symbolic derivative chain
    for M in (1, 0, -2, 3):
        sym = RadialProfile.exponential(Fraction(1, 2))
        num = RadialProfile.from_evaluator(
            lambda j, u: (-0.5) ** j * math.exp(-u / 2), j_max=8
        )
        ls, ln = laplacian_profile(sym, M), laplacian_profile(num, M)
        for u in (0.3, 1.0, 2.7):
            for order in (0, 1, 2):
                assert abs(ls.eval_deriv(order, u) - ln.eval_deriv(order, u)) < 1e-10


def test_laplacian_commutator_exact():
    sig = Signature(3, 1)
    hp = RadialProfile.polynomial([Fraction(1), Fraction(0), Fraction(1, 2)])
    hP = RadialSuperfunction(sig, hp).as_polynomial()
    p = (
        SuperPolynomial.coordinate(sig, 1) ** 2 * SuperPolynomial.coordinate(sig, 4)
        + SuperPolynomial.coordinate(sig, 2)
    )
    lhs = laplacian_commutator_apply(hp, p)
    rhs = laplacian(hP * p) - hP * laplacian(p)
    assert (lhs - rhs).is_zero


def test_laplacian_on_radial_times_harmonic():
    # lap(h(R^2) H_k) = 4 R^2 h'' H_k + (4k + 2M) h' H_k, exactly
    sig = Signature(3, 1)
    hp = RadialProfile.polynomial([Fraction(1), Fraction(0), Fraction(1, 2)])
    hP = RadialSuperfunction(sig, hp).as_polynomial()
    d1 = RadialSuperfunction(sig, hp.derivative()).as_polynomial()
    d2 = RadialSuperfunction(sig, hp.derivative().derivative()).as_polynomial()
    for k in (1, 2, 3):
        H = harmonic_basis(sig, k).elements[0]
        lhs = laplacian(hP * H)
        rhs = r_squared(sig) * d2 * H * Fraction(4) + d1 * H * Fraction(
            4 * k + 2 * sig.superdim
        )
        assert (lhs - rhs).is_zero


def test_rotation_casimir_commutes_with_radial():
    sig = Signature(3, 1)
    hp = RadialProfile.polynomial([Fraction(1), Fraction(0), Fraction(1, 2)])
    hP = RadialSuperfunction(sig, hp).as_polynomial()
    f = (
        SuperPolynomial.coordinate(sig, 1) * SuperPolynomial.coordinate(sig, 4)
        + SuperPolynomial.coordinate(sig, 2) ** 2
    )
    lhs = laplace_beltrami_via_generators(hP * f)
    rhs = hP * laplace_beltrami_via_generators(f)
    assert (lhs - rhs).is_zero
    assert laplace_beltrami_via_generators(hP).is_zero


def test_sphere_functional_radial_factorization():
    # boundary functional of h(R^2) g equals h(1) times the functional of g
    for sig in SIGS:
        hp = RadialProfile.polynomial([Fraction(1), Fraction(2), Fraction(-1, 3)])
        hP = RadialSuperfunction(sig, hp).as_polynomial()
        g = SuperPolynomial.coordinate(sig, 1) ** 2
        if sig.n:
            g = g + SuperPolynomial.coordinate(sig, sig.m + 1) * SuperPolynomial.coordinate(sig, sig.m + 2)
        lhs = pizzetti(hP * g)
        rhs = hp.value_exact_at_one() * pizzetti(g)
        assert (lhs - rhs).is_zero


def test_sphere_functional_taylor_surrogate():
    # a float-coefficient Taylor polynomial of e^{-u/2} about u = 1 passes the
    # same factorization exactly, and its value at 1 is the function's
    sig = Signature(3, 1)
    K = 8
    coeffs = [0.0] * (K + 1)
    for k in range(K + 1):
        # expand (u-1)^k contributions into the monomial basis
        c = (-0.5) ** k * math.exp(-0.5) / math.factorial(k)
        for i in range(k + 1):
            coeffs[i] += c * math.comb(k, i) * (-1.0) ** (k - i)
    hp = RadialProfile.polynomial([Fraction(c) for c in coeffs])
    assert abs(hp.value_exact_at_one().as_fraction() - Fraction(math.exp(-0.5))) < 1e-15
    hP = RadialSuperfunction(sig, hp).as_polynomial()
    g = SuperPolynomial.coordinate(sig, 1) ** 2
    assert (pizzetti(hP * g) - hp.value_exact_at_one() * pizzetti(g)).is_zero


# -- rotation invariance ------------------------------------------------------


def test_invariance_polynomial_profile_exact():
    sig = Signature(3, 1)
    hp = RadialProfile.polynomial([Fraction(0), Fraction(1), Fraction(2, 3)])
    rep = osp_invariance_check(hp, sig)
    assert rep.exact and rep.max_residual == 0.0


def test_invariance_transcendental_profiles():
    for sig in (Signature(3, 1), Signature(2, 2)):
        for hp in (RadialProfile.exponential(Fraction(1, 2)), RadialProfile.power(Fraction(-1, 2))):
            rep = osp_invariance_check(hp, sig)
            assert not rep.exact
            assert rep.max_residual < 1e-12


def test_invariance_negative_control():
    sig = Signature(3, 1)
    x1 = SuperPolynomial.coordinate(sig, 1)
    assert osp_invariance_check(x1, sig).max_residual > 0.5
    assert osp_invariance_check(x1 * x1, sig).max_residual > 0.5


# -- fundamental solutions ----------------------------------------------------


def test_normalization_constants():
    assert iterated_laplacian_constant(0, 1).as_fraction() == -2
    assert (iterated_laplacian_constant(0, 3) - ExactScalar.pi_pow(2, 4)).is_zero
    assert iterated_laplacian_constant(1, 1).as_fraction() == 12
    with pytest.raises(ValueError):
        iterated_laplacian_constant(0, 2)


def test_normalization_chain():
    for sig, l, want in [
        (Signature(3, 1), 1, ExactScalar.rational(-2)),
        (Signature(5, 1), 1, ExactScalar.pi_pow(2, 4)),
        (Signature(3, 1), 2, ExactScalar.rational(12)),
    ]:
        lhs, rhs = fundamental_normalization_check(sig, l)
        assert (lhs - rhs).is_zero
        assert (lhs - want).is_zero
    for sig in (Signature(5, 2), Signature(1, 2)):
        for l in (1, 2, 3):
            lhs, rhs = fundamental_normalization_check(sig, l)
            assert (lhs - rhs).is_zero


def test_newton_potential_profiles():
    # M = 1 family at (3,1): -R/2, R^3/12, -R^5/240
    sig = Signature(3, 1)
    for l, want in [
        (1, RadialProfile.power(Fraction(1, 2)) * Fraction(-1, 2)),
        (2, RadialProfile.power(Fraction(3, 2)) * Fraction(1, 12)),
        (3, RadialProfile.power(Fraction(5, 2)) * Fraction(-1, 240)),
    ]:
        assert (fundamental_solution(sig, l).profile - want).is_zero
    # purely bosonic check: lap(1/(4 pi r)) = -delta in three dimensions, so
    # l = 1 at (3,0) must carry the positive coefficient 1/(4 pi)
    nu = fundamental_solution(Signature(3, 0), 1)
    want = RadialProfile.power(Fraction(-1, 2)) * (
        ExactScalar.rational(1) / ExactScalar.pi_pow(2, 4)
    )
    assert (nu.profile - want).is_zero


def test_newton_potential_expansion():
    # nu_2 at (3,1): body -r/2, top blade +1/(4r)
    sig = Signature(3, 1)
    v = fundamental_solution(sig, 1).expand(2.0)
    assert abs(v.coeff(0) + 1.0) < 1e-14
    assert abs(v.coeff(0b11) - 0.125) < 1e-14


@pytest.mark.parametrize(
    "m,n,l",
    [(3, 1, 1), (3, 1, 2), (3, 1, 3), (5, 2, 1), (5, 2, 3), (1, 1, 2),
     (4, 1, 1), (4, 1, 2), (4, 1, 3), (2, 0, 1), (6, 1, 1), (6, 1, 2)],
)
def test_iterated_laplacian_annihilates(m, n, l):
    sig = Signature(m, n)
    nu = fundamental_solution(sig, l)
    p = nu.profile
    for _ in range(l):
        p = laplacian_profile(p, sig.superdim)
    assert p.is_zero


def test_even_superdimension_branches():
    # below threshold: plain power; at or above: power times log
    low = fundamental_solution(Signature(6, 1), 1)  # M = 4, l < M/2
    assert low.profile.polynomial_coeffs() is None
    assert all(d == 0 for (_, d, _) in low.profile.sym.terms)
    high = fundamental_solution(Signature(6, 1), 2)
    assert any(d == 1 for (_, d, _) in high.profile.sym.terms)


def test_degenerate_superdimension_rejected():
    for sig in (Signature(2, 1), Signature(2, 2), Signature(4, 3)):
        with pytest.raises(UnsupportedSignatureError):
            fundamental_solution(sig, 1)


def test_mean_value_weight():
    # E nu_2 evaluated on the unit sphere is -1/sigma_M; paired with the
    # radial factorization this reproduces -h(0) on harmonic arguments
    for sig in (Signature(3, 1), Signature(1, 1), Signature(3, 2), Signature(3, 0)):
        M = sig.superdim
        w = mean_value_weight(sig)
        got = w.value_exact_at_one()
        assert (got * sphere_area(M) + ExactScalar.rational(1)).is_zero


# -- scalar reduction of full-space integrals ---------------------------------


def _tofl(x):
    return x.to_float() if hasattr(x, "to_float") else float(x)


@pytest.mark.parametrize("m,n", [(3, 1), (2, 1), (1, 1), (2, 2), (1, 2), (3, 2)])
def test_reduce_integral_gaussian(m, n):
    sig = Signature(m, n)
    got = reduce_integral(RadialProfile.exponential(1), sig, tol=1e-10)
    want = math.pi ** (sig.superdim / 2)
    assert abs(_tofl(got) - want) <= 1e-10 * max(1.0, abs(want))


def test_reduce_integral_moments():
    sig = Signature(3, 1)
    got = reduce_integral(RadialProfile.exponential(Fraction(1, 2)), sig, 1e-10)
    assert abs(_tofl(got) - (2 * math.pi) ** 0.5) < 1e-12

    prof = RadialProfile.polynomial([0, 1]) * RadialProfile.exponential(1)
    got = reduce_integral(prof, sig, 1e-10)
    assert abs(_tofl(got) - 0.5 * math.pi**0.5) < 1e-12

    # purely fermionic superdimension -2: the value is the first derivative at
    # zero with a sign, here exactly -1/pi
    got = reduce_integral(prof, Signature(2, 2), 1e-10)
    assert (got - ExactScalar.pi_pow(-2, -1)).is_zero

    got = reduce_integral(RadialProfile.exponential(1), Signature(1, 1), 1e-10)
    assert abs(_tofl(got) - math.pi**-0.5) < 1e-12
