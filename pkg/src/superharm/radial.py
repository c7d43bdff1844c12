"""Spherically symmetric superfunctions.

A radial profile is a scalar function h on (0, oo) with derivative access; the
associated superfunction is the fermionic Taylor expansion

    h(R^2) = sum_{j=0}^n (-1)^j (x'^{2j} / j!) h^{(j)}(r^2),

where x'^2 is the anticommuting norm square and r^2 the bosonic one.  Profiles
come in two flavours: symbolic elements of the family

    u^beta * log(u)^delta * exp(-a u)        (beta, a rational, delta >= 0)

which is closed under d/du and products and covers powers, power-times-log,
exponentials, Laguerre-times-exponential and polynomials; or an opaque numeric
evaluator (j, u) -> h^{(j)}(u) with a declared maximal order.  Symbolic
profiles differentiate exactly and never expire; numeric ones fail fast once
the declared order is exhausted.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .grassmann import (
    NumericGrassmann,
    derivative_sign,
    fermi_norm_sq,
    fermi_pow,
)
from .harmonics import UnsupportedSignatureError
from .scalar import ExactScalar, gamma_exact, laguerre_coeffs
from .superpoly import Signature, SuperPolynomial, euler, r_squared

RatLike = int | Fraction

# term key: (beta, delta, a) represents u^beta * log(u)^delta * exp(-a u)
ProfileKey = Tuple[Fraction, int, Fraction]


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _coerce_scalar(c) -> ExactScalar:
    if isinstance(c, ExactScalar):
        return c
    return ExactScalar.rational(_as_fraction(c))


class SymbolicTerms:
    """Exact linear combination over the closed profile family."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[ProfileKey, ExactScalar] | None = None):
        self.terms: Dict[ProfileKey, ExactScalar] = {}
        if terms:
            for key, c in terms.items():
                if not c.is_zero:
                    self.terms[key] = c

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SymbolicTerms") -> "SymbolicTerms":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, ExactScalar()) + c
        return SymbolicTerms(out)

    def __neg__(self) -> "SymbolicTerms":
        return SymbolicTerms({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "SymbolicTerms") -> "SymbolicTerms":
        return self + (-other)

    def scale(self, c) -> "SymbolicTerms":
        c = c if isinstance(c, ExactScalar) else _coerce_scalar(c)
        return SymbolicTerms({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "SymbolicTerms") -> "SymbolicTerms":
        out: Dict[ProfileKey, ExactScalar] = {}
        for (b1, d1, a1), c1 in self.terms.items():
            for (b2, d2, a2), c2 in other.terms.items():
                key = (b1 + b2, d1 + d2, a1 + a2)
                out[key] = out.get(key, ExactScalar()) + c1 * c2
        return SymbolicTerms(out)

    def mul_power(self, delta_beta: RatLike) -> "SymbolicTerms":
        """Multiply by u^{delta_beta}."""
        db = _as_fraction(delta_beta)
        return SymbolicTerms({(b + db, d, a): c for (b, d, a), c in self.terms.items()})

    def derivative(self) -> "SymbolicTerms":
        out: Dict[ProfileKey, ExactScalar] = {}

        def put(key: ProfileKey, c: ExactScalar) -> None:
            out[key] = out.get(key, ExactScalar()) + c

        for (b, d, a), c in self.terms.items():
            if b:
                put((b - 1, d, a), c * b)
            if d:
                put((b - 1, d - 1, a), c * d)
            if a:
                put((b, d, a), c * (-a))
        return SymbolicTerms(out)

    def __call__(self, u: float) -> float:
        if u == 0:
            v = self.value_exact_at_zero()
            if v is None:
                raise ValueError("profile diverges at u = 0")
            return v.to_float()
        total = 0.0
        lu = math.log(u)
        for (b, d, a), c in self.terms.items():
            total += c.to_float() * u ** float(b) * lu**d * math.exp(-float(a) * u)
        return total

    def value_exact_at_zero(self) -> Optional[ExactScalar]:
        """Continuous limit at u -> 0+ when finite, else None."""
        total = ExactScalar()
        for (b, d, a), c in self.terms.items():
            if b < 0 or (b == 0 and d > 0):
                return None
            if b == 0:
                total = total + c  # u^0 log^0 e^{0} -> 1
        return total

    def value_exact_at_one(self) -> Optional[ExactScalar]:
        """Exact value at u = 1: defined when no exponential factor remains."""
        total = ExactScalar()
        for (b, d, a), c in self.terms.items():
            if a:
                return None
            if d == 0:
                total = total + c
        return total

    def polynomial_coeffs(self) -> Optional[Dict[int, ExactScalar]]:
        """{power: coeff} when the profile is a polynomial in u, else None."""
        out: Dict[int, ExactScalar] = {}
        for (b, d, a), c in self.terms.items():
            if d or a or b.denominator != 1 or b < 0:
                return None
            out[int(b)] = out.get(int(b), ExactScalar()) + c
        return out

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (b, d, a), c in sorted(self.terms.items()):
            s = c.to_text()
            if b:
                s += f" u^{b}"
            if d:
                s += f" log^{d}" if d > 1 else " log"
            if a:
                s += f" e^(-{a}u)"
            parts.append(s)
        return " + ".join(parts)


class RadialProfile:
    """Scalar radial profile with derivative access.

    Either exact-symbolic (``sym``) or numeric (``fn`` mapping (order, u) to
    h^{(order)}(u), valid up to ``j_max``).  ``decay`` is coarse metadata for
    integrability decisions: "gaussian", "polynomial", "power" or None.
    """

    __slots__ = ("sym", "fn", "j_max", "decay")

    def __init__(
        self,
        sym: SymbolicTerms | None = None,
        fn: Callable[[int, float], float] | None = None,
        j_max: int | None = None,
        decay: str | None = None,
    ):
        if (sym is None) == (fn is None):
            raise ValueError("exactly one of sym/fn required")
        self.sym = sym
        self.fn = fn
        self.j_max = j_max  # None means unlimited (symbolic)
        self.decay = decay

    # -- constructors ---------------------------------------------------------

    @classmethod
    def power(cls, alpha: RatLike) -> "RadialProfile":
        key = (_as_fraction(alpha), 0, Fraction(0))
        return cls(sym=SymbolicTerms({key: ExactScalar.rational(1)}), decay="power")

    @classmethod
    def power_log(cls, alpha: RatLike) -> "RadialProfile":
        key = (_as_fraction(alpha), 1, Fraction(0))
        return cls(sym=SymbolicTerms({key: ExactScalar.rational(1)}), decay="power")

    @classmethod
    def exponential(cls, a: RatLike = 1) -> "RadialProfile":
        key = (Fraction(0), 0, _as_fraction(a))
        return cls(sym=SymbolicTerms({key: ExactScalar.rational(1)}), decay="gaussian")

    @classmethod
    def polynomial(cls, coeffs: Sequence) -> "RadialProfile":
        terms = {
            (Fraction(i), 0, Fraction(0)): _coerce_scalar(c)
            for i, c in enumerate(coeffs)
        }
        return cls(sym=SymbolicTerms(terms), decay="polynomial")

    @classmethod
    def laguerre_exp(cls, j: int, q: RatLike, a: RatLike = Fraction(1, 2)) -> "RadialProfile":
        """L_j^{(q)}(u) * exp(-a u)."""
        af = _as_fraction(a)
        terms = {
            (Fraction(i), 0, af): ExactScalar.rational(c)
            for i, c in enumerate(laguerre_coeffs(j, _as_fraction(q)))
        }
        return cls(sym=SymbolicTerms(terms), decay="gaussian")

    @classmethod
    def from_evaluator(
        cls, fn: Callable[[int, float], float], j_max: int, decay: str | None = None
    ) -> "RadialProfile":
        return cls(fn=fn, j_max=j_max, decay=decay)

    @classmethod
    def zero(cls) -> "RadialProfile":
        return cls(sym=SymbolicTerms(), decay="polynomial")

    # -- serialization of the tagged closed-family forms ----------------------

    _TAG_RE = re.compile(r"^\s*(pow|powlog|exp|lagexp|poly)\s*\((.*)\)\s*$")
    _COEF_RE = re.compile(r"^\s*(-?\d+(?:/\d+)?)\s*\*\s*(.*)$")

    @classmethod
    def parse(cls, text: str) -> "RadialProfile":
        """Tagged forms: pow(alpha) = u^alpha, powlog(alpha) = u^alpha log u,
        exp(a) = e^{-au}, lagexp(j,q,a) = L_j^q(u) e^{-au}, poly([c0,c1,...]);
        an optional rational prefix scales, e.g. "-1*pow(-1/2)"."""
        coef = Fraction(1)
        mc = cls._COEF_RE.match(text)
        if mc:
            coef, text = Fraction(mc.group(1)), mc.group(2)
        elif text.strip().startswith("-"):
            coef, text = Fraction(-1), text.strip()[1:]
        m = cls._TAG_RE.match(text)
        if not m:
            raise ValueError(f"unrecognized profile: {text!r}")
        if coef != 1:
            return cls.parse(text) * coef
        tag, body = m.group(1), m.group(2).strip()
        if tag == "pow":
            return cls.power(Fraction(body))
        if tag == "powlog":
            return cls.power_log(Fraction(body))
        if tag == "exp":
            return cls.exponential(Fraction(body))
        if tag == "lagexp":
            j, q, a = (p.strip() for p in body.split(","))
            return cls.laguerre_exp(int(j), Fraction(q), Fraction(a))
        inner = body.strip()
        if not (inner.startswith("[") and inner.endswith("]")):
            raise ValueError(f"poly wants a bracketed list: {text!r}")
        items = [p.strip() for p in inner[1:-1].split(",") if p.strip()]
        return cls.polynomial([Fraction(p) for p in items])

    # -- evaluation -----------------------------------------------------------

    def eval_deriv(self, order: int, u: float) -> float:
        if self.sym is not None:
            d = self.sym
            for _ in range(order):
                d = d.derivative()
            return d(u)
        if self.j_max is not None and order > self.j_max:
            raise ValueError(
                f"derivative order {order} unavailable (declared max {self.j_max})"
            )
        return self.fn(order, u)

    def __call__(self, u: float) -> float:
        return self.eval_deriv(0, u)

    def derivative(self) -> "RadialProfile":
        if self.sym is not None:
            return RadialProfile(sym=self.sym.derivative(), decay=self.decay)
        if self.j_max is not None and self.j_max < 1:
            raise ValueError("derivative order unavailable (declared max 0)")
        fn = self.fn
        return RadialProfile(
            fn=lambda j, u: fn(j + 1, u),
            j_max=None if self.j_max is None else self.j_max - 1,
            decay=self.decay,
        )

    # -- exact hooks (duck-typed by the integral reduction) -------------------

    def value_exact_at_zero(self) -> Optional[ExactScalar]:
        return None if self.sym is None else self.sym.value_exact_at_zero()

    def value_exact_at_one(self) -> Optional[ExactScalar]:
        return None if self.sym is None else self.sym.value_exact_at_one()

    @property
    def gaussian_rate(self) -> Optional[Fraction]:
        """a when the profile is exactly exp(-a u) with a > 0."""
        if self.sym is None or len(self.sym.terms) != 1:
            return None
        ((b, d, a),) = self.sym.terms.keys()
        c = next(iter(self.sym.terms.values()))
        if b == 0 and d == 0 and a > 0 and (c - ExactScalar.rational(1)).is_zero:
            return a
        return None

    @property
    def is_zero(self) -> bool:
        return self.sym is not None and self.sym.is_zero

    def polynomial_coeffs(self) -> Optional[Dict[int, ExactScalar]]:
        return None if self.sym is None else self.sym.polynomial_coeffs()

    # -- arithmetic -----------------------------------------------------------

    def _need_sym(self, op: str) -> SymbolicTerms:
        if self.sym is None:
            raise ValueError(f"{op} needs a symbolic profile")
        return self.sym

    def __add__(self, other: "RadialProfile") -> "RadialProfile":
        return RadialProfile(
            sym=self._need_sym("+") + other._need_sym("+"),
            decay=self.decay if self.decay == other.decay else None,
        )

    def __sub__(self, other: "RadialProfile") -> "RadialProfile":
        return self + (-other)

    def __neg__(self) -> "RadialProfile":
        return RadialProfile(sym=-self._need_sym("-"), decay=self.decay)

    def __mul__(self, other):
        if isinstance(other, RadialProfile):
            a, b = self._need_sym("*"), other._need_sym("*")
            decay = "gaussian" if "gaussian" in (self.decay, other.decay) else self.decay
            return RadialProfile(sym=a * b, decay=decay)
        return RadialProfile(sym=self._need_sym("*").scale(other), decay=self.decay)

    __rmul__ = __mul__

    def mul_power(self, delta: RatLike) -> "RadialProfile":
        """Multiply by u^{delta} (also the exact division route for u-powers)."""
        return RadialProfile(sym=self._need_sym("u^k*").mul_power(delta), decay=self.decay)

    def to_text(self) -> str:
        if self.sym is not None:
            return self.sym.to_text()
        return f"<numeric profile, j_max={self.j_max}>"


@dataclass(frozen=True)
class RadialSuperfunction:
    """h(R^2) for a profile h on a fixed signature."""

    sig: Signature
    profile: RadialProfile

    def expansion_terms(self) -> List[Tuple[int, RadialProfile]]:
        """[(j, p_j)] with h(R^2) = sum_j p_j(r^2) x'^{2j}; p_j = (-1)^j h^{(j)}/j!."""
        out = []
        d = self.profile
        for j in range(self.sig.n + 1):
            out.append((j, d * Fraction((-1) ** j, math.factorial(j))))
            d = d.derivative()
        return out

    def expand(self, r: float) -> NumericGrassmann:
        return radial_expand(self.profile, self.sig, r)

    def as_polynomial(self) -> SuperPolynomial:
        """Exact polynomial form when the profile is a polynomial in u."""
        coeffs = self.profile.polynomial_coeffs()
        if coeffs is None:
            raise ValueError("profile is not polynomial")
        out = SuperPolynomial.zero(self.sig)
        R2 = r_squared(self.sig)
        for p, c in sorted(coeffs.items()):
            out = out + R2**p * c
        return out


def radial_expand(h: RadialProfile, sig: Signature, r: float) -> NumericGrassmann:
    """Grassmann-valued evaluation of h(R^2) at bosonic radius r > 0."""
    if r <= 0:
        raise ValueError("bosonic radius must be positive")
    n = sig.n
    if h.j_max is not None and h.j_max < n:
        raise ValueError(f"derivative order {n} unavailable (declared max {h.j_max})")
    u = r * r
    out = NumericGrassmann(2 * n)
    for j in range(n + 1):
        cj = ((-1) ** j / math.factorial(j)) * h.eval_deriv(j, u)
        blade = NumericGrassmann.from_exact(fermi_pow(fermi_norm_sq(n), j))
        out = out + blade * cj
    return out


def radial_power(sig: Signature, alpha: RatLike) -> RadialSuperfunction:
    """R^alpha as a radial superfunction (profile u^{alpha/2})."""
    return RadialSuperfunction(sig, RadialProfile.power(_as_fraction(alpha) / 2))


def compose_value(h: RadialProfile, value: NumericGrassmann, n: int) -> NumericGrassmann:
    """h(f) = sum_{j<=2n} f_1^j/j! h^{(j)}(f_0) on an evaluated even superfunction."""
    body_c = value.coeff(0)
    if abs(body_c.imag) > 1e-13 * max(1.0, abs(body_c)):
        raise ValueError("composition needs a real body")
    body = body_c.real
    nil = value - NumericGrassmann.scalar(value.ngen, body_c)
    out = NumericGrassmann(value.ngen)
    term = NumericGrassmann.scalar(value.ngen, 1.0)
    for j in range(2 * n + 1):
        if j:
            term = term * nil
        out = out + term * (h.eval_deriv(j, body) / math.factorial(j))
        if not term.terms:
            break
    return out


def compose(
    h: RadialProfile, f: SuperPolynomial, coords: Sequence[float]
) -> NumericGrassmann:
    """h(f(x)) at a bosonic point via the nilpotent Taylor expansion."""
    return compose_value(h, f.evaluate_bosonic(coords), f.sig.n)


# -- dimensional-reduction calculus ------------------------------------------


def radial_gradient(
    h: RadialProfile, sig: Signature
) -> Tuple[List[SuperPolynomial], RadialProfile]:
    """Factored gradient: grad h(R^2) = X_k * p(R^2) componentwise (lower
    index), with p = 2 h'."""
    vec = [SuperPolynomial.coordinate(sig, k) for k in range(1, sig.total_vars + 1)]
    return vec, h.derivative() * Fraction(2)


def euler_profile(h: RadialProfile) -> RadialProfile:
    """Profile of E h(R^2) = 2 R^2 h'(R^2)."""
    return h.derivative().mul_power(1) * Fraction(2)


def laplacian_profile(h: RadialProfile, M: int) -> RadialProfile:
    """Profile of the Laplacian on radial functions: 4 u h'' + 2 M h'."""
    d1 = h.derivative()
    if h.sym is not None:
        return d1.derivative().mul_power(1) * Fraction(4) + d1 * Fraction(2 * M)
    # numeric: g^{(j)}(u) = 4 u h^{(j+2)}(u) + (4j + 2M) h^{(j+1)}(u)
    if h.j_max is not None and h.j_max < 2:
        raise ValueError("derivative order unavailable for the radial Laplacian")
    fn = h.fn
    return RadialProfile(
        fn=lambda j, u: 4.0 * u * fn(j + 2, u) + (4 * j + 2 * M) * fn(j + 1, u),
        j_max=None if h.j_max is None else h.j_max - 2,
        decay=h.decay,
    )


def radial_laplacian(h: RadialProfile, sig: Signature) -> RadialProfile:
    return laplacian_profile(h, sig.superdim)


def laplacian_commutator_apply(
    h: RadialProfile, p: SuperPolynomial
) -> SuperPolynomial:
    """[lap, h(R^2)] p = 4 R^2 h''(R^2) p + h'(R^2)(4 E + 2M) p, exact for
    polynomial profiles."""
    sig = p.sig
    M = sig.superdim
    d1, d2 = h.derivative(), h.derivative().derivative()
    h1 = RadialSuperfunction(sig, d1).as_polynomial()
    h2 = RadialSuperfunction(sig, d2).as_polynomial()
    R2 = r_squared(sig)
    return R2 * h2 * p * Fraction(4) + h1 * (euler(p) * Fraction(4) + p * Fraction(2 * M))


# -- orthosymplectic invariance ----------------------------------------------


def _nfermi_derivative(v: NumericGrassmann, j: int) -> NumericGrassmann:
    bit = j - 1
    out: Dict[int, complex] = {}
    for mask, c in v.terms.items():
        if mask >> bit & 1:
            out[mask ^ (1 << bit)] = c * derivative_sign(mask, bit)
    return NumericGrassmann(v.ngen, out)


def _radial_lower_gradient(
    h: RadialProfile, sig: Signature, coords: Sequence[float]
) -> List[NumericGrassmann]:
    """Lower gradient components of h(R^2) at a bosonic point, Grassmann-valued."""
    m, n = sig.m, sig.n
    r = math.sqrt(sum(c * c for c in coords))
    vprime = radial_expand(h.derivative(), sig, r)
    v = radial_expand(h, sig, r)
    comps: List[NumericGrassmann] = []
    for k in range(m):
        comps.append(vprime * (2.0 * coords[k]))
    for j in range(1, 2 * n + 1):
        if j % 2 == 1:
            comps.append(_nfermi_derivative(v, j + 1) * 2.0)
        else:
            comps.append(_nfermi_derivative(v, j - 1) * (-2.0))
    return comps


def _numeric_generator_residual(
    h: RadialProfile, sig: Signature, coords: Sequence[float]
) -> float:
    """max_{i<=j} |L_ij h(R^2)| at a bosonic point (exact Grassmann structure,
    float profile values)."""
    m, n = sig.m, sig.n
    tv = sig.total_vars
    low = _radial_lower_gradient(h, sig, coords)

    def x_mul(i: int, v: NumericGrassmann) -> NumericGrassmann:
        if i <= m:
            return v * coords[i - 1]
        gen = NumericGrassmann(2 * n, {1 << (i - m - 1): 1.0})
        return gen * v

    worst = 0.0
    for i in range(1, tv + 1):
        for j in range(i, tv + 1):
            both_fermi = i > m and j > m
            term = x_mul(i, low[j - 1])
            other = x_mul(j, low[i - 1])
            val = term + other if both_fermi else term - other
            mags = [abs(c) for c in val.terms.values()]
            if mags:
                worst = max(worst, max(mags))
    return worst


@dataclass(frozen=True)
class InvarianceReport:
    max_residual: float
    exact: bool


def osp_invariance_check(
    obj, sig: Signature, samples: Sequence[Sequence[float]] | None = None
) -> InvarianceReport:
    """Residual of L_ij f = 0 over all rotation generators.

    Accepts a polynomial (exact path; nonzero for non-radial controls), a
    polynomial-profile RadialProfile (exact via the polynomial form) or any
    other profile (numeric path at sampled bosonic points).
    """
    from .superpoly import osp_generator  # local to avoid import noise at top

    if isinstance(obj, SuperPolynomial):
        worst = 0.0
        tv = obj.sig.total_vars
        for i in range(1, tv + 1):
            for j in range(i, tv + 1):
                g = osp_generator(obj, i, j)
                for c in g.terms.values():
                    if not c.is_zero:
                        worst = max(worst, abs(c.to_float()))
        return InvarianceReport(worst, exact=True)
    h: RadialProfile = obj
    if h.polynomial_coeffs() is not None:
        poly = RadialSuperfunction(sig, h).as_polynomial()
        return osp_invariance_check(poly, sig)
    if samples is None:
        samples = [
            [0.3 + 0.1 * k for k in range(sig.m)],
            [1.1 - 0.07 * k for k in range(sig.m)],
        ]
    worst = 0.0
    for coords in samples:
        worst = max(worst, _numeric_generator_residual(h, sig, coords))
    return InvarianceReport(worst, exact=False)


# -- fundamental solutions of iterated Laplacians ----------------------------


def iterated_laplacian_constant(l: int, M: int) -> ExactScalar:
    """2^{2l+1} l! * 2 pi^{M/2} / Gamma(M/2 - l - 1); exact for M odd."""
    if M % 2 == 0:
        raise ValueError("exact normalization available for odd superdimension only")
    num = ExactScalar.pi_pow(M, Fraction(2 ** (2 * l + 1) * math.factorial(l) * 2))
    return num / gamma_exact(Fraction(M, 2) - l - 1)


def fundamental_solution(sig: Signature, l: int) -> RadialSuperfunction:
    """Radial superfunction nu_{2l} with lap^l nu_{2l} = (-1)^l delta.

    Odd superdimension: exactly normalized power profile; two independent
    constructions (direct M-form and the bosonic-solution prefactor form) are
    built and must agree.  Even positive superdimension: the power or
    power-times-log profile with the normalization left at 1 (the even-case
    constants are not pinned here); only harmonicity off the origin is exact.
    """
    M = sig.superdim
    if l < 1:
        raise ValueError("l >= 1 required")
    if M <= 0 and M % 2 == 0:
        raise UnsupportedSignatureError(f"no fundamental solution family at M = {M}")
    s = Fraction(2 * l - M, 2)
    if M % 2:
        direct = RadialProfile.power(s) * (
            ExactScalar.rational(1) / iterated_laplacian_constant(l - 1, M)
        )
        n = sig.n
        pre = ExactScalar.pi_pow(
            2 * n, Fraction(4**n * math.factorial(n + l - 1), math.factorial(l - 1))
        )
        other = RadialProfile.power(s) * (
            pre / iterated_laplacian_constant(l + n - 1, sig.m)
        )
        if not (direct - other).is_zero:
            raise AssertionError("fundamental-solution constructions disagree")
        return RadialSuperfunction(sig, direct)
    if l < M // 2:
        return RadialSuperfunction(sig, RadialProfile.power(s))
    # -R^{2l-M} log R = -(1/2) u^{l-M/2} log u, normalization constant omitted
    return RadialSuperfunction(sig, RadialProfile.power_log(s) * Fraction(-1, 2))


def fundamental_normalization_check(sig: Signature, l: int) -> Tuple[ExactScalar, ExactScalar]:
    """Constant chain for the top-Grassmann route vs the direct constant.

    Returns (gamma_{l-1,m} * pi^{-n} * Gamma(m/2-l)/Gamma(M/2-l),
    gamma_{l-1,M}); the two must be equal, odd superdimension only.
    """
    M = sig.superdim
    if M % 2 == 0:
        raise ValueError("normalization chain is exact for odd superdimension only")
    lhs = (
        iterated_laplacian_constant(l - 1, sig.m)
        * ExactScalar.pi_pow(-2 * sig.n)
        * gamma_exact(Fraction(sig.m, 2) - l)
        / gamma_exact(Fraction(M, 2) - l)
    )
    rhs = iterated_laplacian_constant(l - 1, M)
    return lhs, rhs


def mean_value_weight(sig: Signature) -> RadialProfile:
    """Profile of E nu_2: equals -(1/sigma_M) u^{(2-M)/2}; its value at u = 1
    times the sphere functional reproduces -h(0) on harmonic h (odd M)."""
    nu2 = fundamental_solution(sig, 1)
    return euler_profile(nu2.profile)
