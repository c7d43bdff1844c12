"""Finite Grassmann algebra on bitmask blades.

A blade is an int bitmask: bit i set means generator i+1 is present, and the
blade is the ascending product of its generators.  Signs come from counting the
inversions needed to merge two ascending products.  Coefficients are either
exact (ExactScalar) or numeric complex; both classes share the blade helpers.

Generator indexing is 1-based in public APIs (generator j lives on bit j-1).
The convention for the anticommuting "norm":  nsq = sum_k g_{2k-1} g_{2k},
so the square of the radius reads  r^2 - nsq  with a minus sign.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Union

from .scalar import ExactScalar, RatLike


def blade_sign(mask_a: int, mask_b: int) -> int:
    """Sign of x_A * x_B when merging two ascending blades (0 overlap assumed)."""
    sign = 1
    b = mask_b
    while b:
        low = b & -b
        j = low.bit_length() - 1
        # generators of A strictly above j must hop over this one
        if (mask_a >> (j + 1)).bit_count() & 1:
            sign = -sign
        b ^= low
    return sign


def blade_mul(mask_a: int, mask_b: int):
    """(sign, mask) for the product of two blades, or None when they overlap."""
    if mask_a & mask_b:
        return None
    return blade_sign(mask_a, mask_b), mask_a | mask_b


def derivative_sign(mask: int, bit: int) -> int:
    """Sign picked up by the left derivative d/dg_{bit+1} on the blade ``mask``."""
    return -1 if (mask & ((1 << bit) - 1)).bit_count() & 1 else 1


class GrassmannElement:
    """Element of the Grassmann algebra on ``ngen`` generators, exact coefficients."""

    __slots__ = ("ngen", "terms")

    def __init__(self, ngen: int, terms: Dict[int, ExactScalar] | None = None):
        self.ngen = ngen
        self.terms: Dict[int, ExactScalar] = {}
        if terms:
            for mask, c in terms.items():
                c = ExactScalar.coerce(c)
                if not c.is_zero:
                    if mask >> ngen:
                        raise ValueError(f"blade {mask:b} outside {ngen} generators")
                    self.terms[mask] = c

    @classmethod
    def scalar(cls, ngen: int, c: Union[ExactScalar, RatLike]) -> "GrassmannElement":
        return cls(ngen, {0: ExactScalar.coerce(c)})

    @classmethod
    def generator(cls, ngen: int, j: int) -> "GrassmannElement":
        """The j-th generator (1-based)."""
        if not 1 <= j <= ngen:
            raise ValueError(f"generator {j} out of range 1..{ngen}")
        return cls(ngen, {1 << (j - 1): ExactScalar.rational(1)})

    def _check(self, other: "GrassmannElement"):
        if self.ngen != other.ngen:
            raise ValueError("mixing Grassmann algebras of different rank")

    def __add__(self, other: "GrassmannElement") -> "GrassmannElement":
        self._check(other)
        out = dict(self.terms)
        for mask, c in other.terms.items():
            out[mask] = out.get(mask, ExactScalar()) + c
        return GrassmannElement(self.ngen, out)

    def __neg__(self):
        return GrassmannElement(self.ngen, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ExactScalar)):
            c = ExactScalar.coerce(other)
            return GrassmannElement(self.ngen, {m: v * c for m, v in self.terms.items()})
        self._check(other)
        out: Dict[int, ExactScalar] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                sm = blade_mul(ma, mb)
                if sm is None:
                    continue
                sign, mask = sm
                add = ca * cb if sign > 0 else -(ca * cb)
                out[mask] = out.get(mask, ExactScalar()) + add
        return GrassmannElement(self.ngen, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ExactScalar)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self.ngen == other.ngen and self.terms == other.terms

    def __hash__(self):
        return hash((self.ngen, tuple(sorted((m, c) for m, c in self.terms.items()))))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mask: int) -> ExactScalar:
        return self.terms.get(mask, ExactScalar())

    def scalar_part(self) -> ExactScalar:
        return self.coeff(0)

    def __repr__(self):
        if not self.terms:
            return "GrassmannElement(0)"
        bits = []
        for mask in sorted(self.terms):
            gens = "".join(f"f{i + 1}" for i in range(self.ngen) if mask >> i & 1) or "1"
            bits.append(f"({self.terms[mask].to_text()})*{gens}")
        return " + ".join(bits)


def fermi_derivative(e: GrassmannElement, j: int) -> GrassmannElement:
    """Left derivative with respect to generator j (1-based)."""
    if not 1 <= j <= e.ngen:
        raise ValueError(f"generator {j} out of range 1..{e.ngen}")
    bit = j - 1
    out: Dict[int, ExactScalar] = {}
    for mask, c in e.terms.items():
        if not mask >> bit & 1:
            continue
        s = derivative_sign(mask, bit)
        out[mask ^ (1 << bit)] = c if s > 0 else -c
    return GrassmannElement(e.ngen, out)


def fermi_norm_sq(n: int) -> GrassmannElement:
    """nsq = sum_k g_{2k-1} g_{2k} on 2n generators (the square of the odd radius)."""
    terms = {}
    for k in range(n):
        terms[(1 << (2 * k)) | (1 << (2 * k + 1))] = ExactScalar.rational(1)
    return GrassmannElement(2 * n, terms)


def fermi_pow(e: GrassmannElement, p: int) -> GrassmannElement:
    out = GrassmannElement.scalar(e.ngen, 1)
    for _ in range(p):
        out = out * e
    return out


def fermi_laplacian(e: GrassmannElement, n: int) -> GrassmannElement:
    """The purely anticommuting piece of the Laplacian: -4 sum_j d_{2j-1} d_{2j}."""
    out = GrassmannElement(e.ngen)
    for j in range(1, n + 1):
        out = out + fermi_derivative(fermi_derivative(e, 2 * j), 2 * j - 1) * (-4)
    return out


def berezin(e: GrassmannElement, n: int) -> ExactScalar:
    """Berezin integral with the pi^{-n} normalization: picks the top blade.

    Equals pi^{-n} d_{2n} ... d_1 applied to e; on the ascending top blade
    g_1...g_{2n} the iterated derivative gives +1, so this is just the top
    coefficient times pi^{-n}.
    """
    if e.ngen != 2 * n:
        raise ValueError(f"element has {e.ngen} generators, expected {2 * n}")
    top = (1 << (2 * n)) - 1
    return e.coeff(top) * ExactScalar.pi_pow(-2 * n)


def berezin_via_laplacian(e: GrassmannElement, n: int) -> ExactScalar:
    """Dual route: pi^{-n}/(4^n n!) (fermionic Laplacian)^n, scalar part.

    Kept as an independent cross-check of the normalization in ``berezin``.
    """
    import math

    cur = e
    for _ in range(n):
        cur = fermi_laplacian(cur, n)
    return cur.scalar_part() * ExactScalar.pi_pow(-2 * n, Fraction(1, 4**n * math.factorial(n)))


# -- numeric twin ------------------------------------------------------------


class NumericGrassmann:
    """Same algebra with complex coefficients, for quadrature-level work."""

    __slots__ = ("ngen", "terms")

    def __init__(self, ngen: int, terms: Dict[int, complex] | None = None, tol: float = 0.0):
        self.ngen = ngen
        self.terms: Dict[int, complex] = {}
        if terms:
            for mask, c in terms.items():
                c = complex(c)
                if abs(c) > tol:
                    self.terms[mask] = c

    @classmethod
    def scalar(cls, ngen: int, c: complex) -> "NumericGrassmann":
        return cls(ngen, {0: c})

    @classmethod
    def from_exact(cls, e: GrassmannElement) -> "NumericGrassmann":
        return cls(e.ngen, {m: complex(c.to_float()) for m, c in e.terms.items()})

    def __add__(self, other: "NumericGrassmann") -> "NumericGrassmann":
        out = dict(self.terms)
        for mask, c in other.terms.items():
            out[mask] = out.get(mask, 0j) + c
        return NumericGrassmann(self.ngen, out)

    def __neg__(self):
        return NumericGrassmann(self.ngen, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return NumericGrassmann(self.ngen, {m: v * other for m, v in self.terms.items()})
        out: Dict[int, complex] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                sm = blade_mul(ma, mb)
                if sm is None:
                    continue
                sign, mask = sm
                out[mask] = out.get(mask, 0j) + sign * ca * cb
        return NumericGrassmann(self.ngen, out)

    __rmul__ = __mul__

    def coeff(self, mask: int) -> complex:
        return self.terms.get(mask, 0j)

    def power(self, p: int) -> "NumericGrassmann":
        out = NumericGrassmann.scalar(self.ngen, 1.0)
        for _ in range(p):
            out = out * self
        return out

    def max_abs_diff(self, other: "NumericGrassmann") -> float:
        keys = set(self.terms) | set(other.terms)
        return max((abs(self.coeff(k) - other.coeff(k)) for k in keys), default=0.0)

    def __repr__(self):
        return f"NumericGrassmann({self.terms})"
