"""Exact-plus-numeric harmonic analysis on spaces with commuting and
anticommuting coordinates (super-dimension M = m - 2n).

The headline objects re-exported here cover the everyday workflow: build
polynomials over a signature, apply the invariant operators, decompose into
spherical harmonics, integrate over the supersphere or the full space, expand
spherically symmetric functions, and reduce invariant Schrödinger problems to
radial ones.  The full surface lives in the submodules (``scalar``,
``grassmann``, ``superpoly``, ``harmonics``, ``integrate``, ``radial``,
``zonal``, ``schrodinger``, ``verify``, ``cli``).
"""

__version__ = "0.1.0"

from .harmonics import (
    dim_harmonics,
    dim_polynomials,
    fischer_decompose,
    fischer_reconstruct,
    harmonic_basis,
    reproducing_kernel,
)
from .integrate import pizzetti, reduce_integral, superball_poly
from .radial import (
    RadialProfile,
    RadialSuperfunction,
    fundamental_solution,
    radial_expand,
)
from .scalar import ExactScalar, recip_gamma, sphere_area
from .schrodinger import GridSpec, oscillator_spectrum, solve_numeric
from .superpoly import (
    Signature,
    SuperPolynomial,
    euler,
    laplace_beltrami,
    laplacian,
    osp_generator,
    r_squared,
)
from .zonal import funk_hecke_poly, mehler_bessel_check

__all__ = [
    "ExactScalar",
    "GridSpec",
    "RadialProfile",
    "RadialSuperfunction",
    "Signature",
    "SuperPolynomial",
    "dim_harmonics",
    "dim_polynomials",
    "euler",
    "fischer_decompose",
    "fischer_reconstruct",
    "fundamental_solution",
    "funk_hecke_poly",
    "harmonic_basis",
    "laplace_beltrami",
    "laplacian",
    "mehler_bessel_check",
    "oscillator_spectrum",
    "osp_generator",
    "pizzetti",
    "r_squared",
    "radial_expand",
    "recip_gamma",
    "reduce_integral",
    "reproducing_kernel",
    "solve_numeric",
    "sphere_area",
    "superball_poly",
]
