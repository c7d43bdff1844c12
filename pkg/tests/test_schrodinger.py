"""Radial reduction of invariant Schrödinger problems, the exact oscillator
spectrum with super-degeneracies, and the finite-difference eigensolver at
effective dimension M + 2k."""

import math
from fractions import Fraction

import pytest

from superharm.harmonics import dim_harmonics, dim_polynomials
from superharm.radial import RadialProfile
from superharm.superpoly import Signature, SuperPolynomial
from superharm import schrodinger as S
from superharm import zonal as Z

OSC = RadialProfile.polynomial([0, Fraction(1, 2)])


# -- reduction ----------------------------------------------------------------


def test_reduce_ode_coefficients():
    sig = Signature(5, 1)  # M = 3
    prob = S.reduce(sig, OSC, 0)
    assert prob.first_order_coeff == 3
    assert prob.ode_text() == "-2*u*f'' - 3*f' + V(u)*f = E*f"
    # k enters only through 2k + M
    for k in (1, 2, 5):
        assert S.reduce(sig, OSC, k).first_order_coeff == 2 * k + 3
    assert S.reduce(Signature(3, 1), OSC, 2).sector_dimension == 5


def test_reduce_zero_potential_constant_solution():
    sig = Signature(3, 1)
    prob = S.reduce(sig, RadialProfile.polynomial([0]), 0)
    const = RadialProfile.polynomial([1])
    assert S.reduction_residual(prob, const, 0).is_zero


def test_reduce_rejects_negative_sector():
    with pytest.raises(ValueError):
        S.reduce(Signature(3, 1), OSC, -1)


def test_oscillator_eigenprofile_residual_exact():
    """The oscillator eigenfunction profiles solve the reduced ODE with
    E = 2j + k + M/2, exactly at the level of symbolic profiles."""
    for (m, n) in ((3, 1), (2, 1), (2, 2)):
        sig = Signature(m, n)
        M = sig.superdim
        one = SuperPolynomial.constant(sig, 1)
        for j in range(3):
            for k in range(3):
                prob = S.reduce(sig, OSC, k)
                f = Z.clifford_hermite(sig, j, k, one).profile
                E = Fraction(4 * j + 2 * k + M, 2)
                assert S.reduction_residual(prob, f, E).is_zero, (m, n, j, k)


def test_hydrogen_profile_residual_numeric():
    """f = exp(-sqrt(u)) solves the Coulomb-reduced ODE at M = 3, k = 0 with
    E = -1/2; checked pointwise through the evaluator route."""
    sig = Signature(5, 1)
    Vc = RadialProfile.power(Fraction(-1, 2)) * Fraction(-1)
    prob = S.reduce(sig, Vc, 0)

    def fn(i, u):
        s = math.sqrt(u)
        e = math.exp(-s)
        if i == 0:
            return e
        if i == 1:
            return -0.5 * e / s
        return (0.25 / u + 0.25 / u / s) * e

    f = RadialProfile.from_evaluator(fn, j_max=2)
    for u in (0.3, 1.0, 2.7, 6.25):
        assert abs(S.reduction_residual_at(prob, f, -0.5, u)) < 1e-8


# -- exact oscillator spectrum ------------------------------------------------


def test_oscillator_spectrum_m3n1():
    sig = Signature(3, 1)  # M = 1
    entries = S.oscillator_spectrum(sig, 2, 2)
    assert entries[0].E == Fraction(1, 2) and entries[0].degeneracy == 1
    by_Ek = {(e.E, e.k): e.degeneracy for e in entries}
    assert by_Ek[(Fraction(3, 2), 1)] == 5
    assert by_Ek[(Fraction(5, 2), 2)] == 12
    assert all(e.E == Fraction(4 * e.j + 2 * e.k + 1, 2) for e in entries)
    Es = [float(e.E) for e in entries]
    assert Es == sorted(Es)


def test_oscillator_spectrum_bosonic_2d():
    entries = S.oscillator_spectrum(Signature(2, 0), 2, 2)
    assert all(e.E == 2 * e.j + e.k + 1 for e in entries)


@pytest.mark.filterwarnings("ignore:superdimension")
def test_oscillator_degeneracy_column():
    for (m, n) in ((3, 1), (4, 2), (2, 0)):
        sig = Signature(m, n)
        for e in S.oscillator_spectrum(sig, 2, 3):
            assert e.degeneracy == dim_harmonics(sig, e.k)


def test_oscillator_degenerate_superdimension_warns():
    with pytest.warns(UserWarning):
        entries = S.oscillator_spectrum(Signature(2, 1), 1, 1)
    assert entries  # spectrum still emitted
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("error")
        S.oscillator_spectrum(Signature(3, 1), 1, 1)  # M = 1: no warning


@pytest.mark.parametrize("m,n", [(3, 1), (2, 1), (4, 2), (2, 2)])
def test_oscillator_level_count_matches_polynomial_dimension(m, n):
    sig = Signature(m, n)
    for q in range(7):
        total, dim_p = S.oscillator_level_count(sig, q)
        assert total == dim_p, q


def test_spectrum_entry_rows():
    rows = [e.as_row() for e in S.oscillator_spectrum(Signature(3, 1), 1, 1)]
    assert all(set(r) == {"j", "k", "E", "degeneracy", "err"} for r in rows)
    assert rows[0]["E"] == 0.5 and rows[0]["err"] == 0.0


# -- numeric eigensolver ------------------------------------------------------


def test_numeric_oscillator_m3():
    sig = Signature(5, 1)  # M = 3
    res = S.solve_numeric(S.reduce(sig, OSC, 0), S.GridSpec(8.0, 1500), count=3)
    for (E, err), exact in zip(res, (1.5, 3.5, 5.5)):
        assert abs(E - exact) < 1e-6
        assert err < 1e-4


def test_numeric_oscillator_m1_sectors():
    sig = Signature(3, 1)  # M = 1
    res = S.solve_numeric(S.reduce(sig, OSC, 1), S.GridSpec(8.0, 1500), count=3)
    for j, (E, _) in enumerate(res):
        assert abs(E - (2 * j + 1.5)) < 1e-6
    res = S.solve_numeric(S.reduce(sig, OSC, 0), S.GridSpec(8.0, 1500), count=3)
    for j, (E, _) in enumerate(res):
        assert abs(E - (2 * j + 0.5)) < 1e-6


def test_numeric_negative_superdimension_sector():
    """M = -1 with k = 1 has a regular sector equation (effective dimension 1)
    and the eigenvalue formula still reads 2j + k + M/2."""
    res = S.solve_numeric(S.reduce(Signature(1, 1), OSC, 1), S.GridSpec(8.0, 1500), count=3)
    for j, (E, _) in enumerate(res):
        assert abs(E - (2 * j + 0.5)) < 1e-6


def test_numeric_hydrogen():
    sig = Signature(5, 1)
    Vc = RadialProfile.power(Fraction(-1, 2)) * Fraction(-1)
    res = S.solve_numeric(
        S.reduce(sig, Vc, 0), S.GridSpec(30.0, 3000, box=True), count=2,
        e_window=(-1.0, -0.01),
    )
    assert abs(res[0][0] + 0.5) < 1e-4
    assert abs(res[1][0] + 0.125) < 1e-4


def test_numeric_box_oracle():
    """V = 0 in a Dirichlet box with the regular (Neumann) branch at the
    origin: E = ((n+1/2) pi / L)^2 / 2 at effective dimension 1."""
    L = 3.0
    res = S.solve_numeric(
        S.reduce(Signature(1, 0), RadialProfile.polynomial([0]), 0),
        S.GridSpec(L, 1200, box=True), count=3,
    )
    for n_, (E, _) in enumerate(res):
        assert abs(E - ((n_ + 0.5) * math.pi / L) ** 2 / 2) < 1e-6


def test_numeric_window_filter():
    sig = Signature(5, 1)
    res = S.solve_numeric(S.reduce(sig, OSC, 0), S.GridSpec(8.0, 1000), count=4,
                          e_window=(3.0, 6.0))
    assert [round(E, 3) for E, _ in res] == [3.5, 5.5]


def test_numeric_gating():
    sig = Signature(5, 1)
    Vc = RadialProfile.power(Fraction(-1, 2)) * Fraction(-1)
    with pytest.raises(ValueError):
        S.solve_numeric(S.reduce(sig, Vc, 0), S.GridSpec(30.0, 500))
    with pytest.raises(ValueError):
        S.solve_numeric(S.reduce(Signature(1, 1), OSC, 0), S.GridSpec(4.0, 200))


def test_numeric_rows_format():
    sig = Signature(5, 1)
    prob = S.reduce(sig, OSC, 1)
    res = S.solve_numeric(prob, S.GridSpec(8.0, 800), count=2)
    rows = S.numeric_rows(prob, res)
    assert [r["j"] for r in rows] == [0, 1]
    assert all(r["k"] == 1 and r["degeneracy"] == dim_harmonics(sig, 1) for r in rows)
    assert all(r["err"] > 0 for r in rows)
