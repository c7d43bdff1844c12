"""Exact scalar arithmetic and the small zoo of special functions used everywhere else.

The exact coefficient field is Q adjoined pi^(1/2) and pi^(-1/2): every value is a
finite sum  sum_s q_s * pi^(s/2)  with rational q_s and integer s.  This is closed
under products of gamma-function values at half-integers, which is all the exact
layer ever needs (sphere areas, Pizzetti weights, Funk-Hecke multipliers, ...).

Numeric special functions (Laguerre, Gegenbauer, normalized Jacobi, Bessel J) live
here too so the higher modules share one implementation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Tuple, Union

import mpmath

RatLike = Union[int, Fraction]


class GammaPoleError(ZeroDivisionError):
    """Gamma evaluated at a nonpositive integer."""


def _as_fraction(q: RatLike) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    raise TypeError(f"expected int or Fraction, got {type(q).__name__}")


class ExactScalar:
    """A finite sum  sum_s q_s * pi^(s/2)  (s integer, q_s rational, no zero terms).

    Immutable in practice: never mutate ``terms`` after construction.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, RatLike] | None = None):
        clean: Dict[int, Fraction] = {}
        if terms:
            for s, q in terms.items():
                q = _as_fraction(q)
                if q != 0:
                    clean[int(s)] = clean.get(int(s), Fraction(0)) + q
            clean = {s: q for s, q in clean.items() if q != 0}
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def rational(cls, q: RatLike) -> "ExactScalar":
        return cls({0: _as_fraction(q)})

    @classmethod
    def pi_pow(cls, s: int, coef: RatLike = 1) -> "ExactScalar":
        """coef * pi^(s/2)."""
        return cls({s: _as_fraction(coef)})

    @classmethod
    def coerce(cls, v: "ExactScalar | RatLike") -> "ExactScalar":
        if isinstance(v, ExactScalar):
            return v
        return cls.rational(v)

    # -- predicates / extraction -----------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_rational(self) -> bool:
        return set(self.terms) <= {0}

    def as_fraction(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if set(self.terms) != {0}:
            raise ValueError(f"not a rational scalar: {self}")
        return self.terms[0]

    def to_float(self) -> float:
        return float(sum(float(q) * math.pi ** (s / 2.0) for s, q in self.terms.items()))

    __float__ = to_float

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = ExactScalar.coerce(other)
        out = dict(self.terms)
        for s, q in other.terms.items():
            out[s] = out.get(s, Fraction(0)) + q
        return ExactScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar({s: -q for s, q in self.terms.items()})

    def __sub__(self, other):
        return self + (-ExactScalar.coerce(other))

    def __rsub__(self, other):
        return ExactScalar.coerce(other) + (-self)

    def __mul__(self, other):
        other = ExactScalar.coerce(other)
        out: Dict[int, Fraction] = {}
        for s1, q1 in self.terms.items():
            for s2, q2 in other.terms.items():
                s = s1 + s2
                out[s] = out.get(s, Fraction(0)) + q1 * q2
        return ExactScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = ExactScalar.coerce(other)
        if len(other.terms) != 1:
            raise ZeroDivisionError(
                "can only divide by a nonzero monomial scalar q*pi^(s/2)"
            )
        ((s0, q0),) = other.terms.items()
        return ExactScalar({s - s0: q / q0 for s, q in self.terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = ExactScalar.rational(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.rational(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    # -- text form ---------------------------------------------------------
    # Grammar (round-trip exact):   scalar := term ('+' term)*
    #   term  := rational | rational '*' pipow | pipow
    #   pipow := 'pi' | 'pi^' int | 'pi^(' int '/2)'
    # Negative coefficients keep their sign on the rational part.

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for s in sorted(self.terms, reverse=True):
            q = self.terms[s]
            if s == 0:
                parts.append(str(q))
                continue
            if s % 2 == 0:
                p = "pi" if s == 2 else f"pi^{s // 2}"
            else:
                p = f"pi^({s}/2)"
            parts.append(p if q == 1 else f"{q}*{p}")
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "ExactScalar":
        text = text.strip()
        if text == "0":
            return cls()
        out = cls()
        # split on '+' that separates terms; coefficients carry their own '-'
        for chunk in text.replace("- ", "+ -").split("+"):
            chunk = chunk.strip()
            if not chunk:
                continue
            out = out + _parse_scalar_term(chunk)
        return out

    def __repr__(self):
        return f"ExactScalar({self.to_text()!r})"


def _parse_scalar_term(chunk: str) -> ExactScalar:
    chunk = chunk.strip()
    if chunk.startswith("-pi"):
        return _parse_scalar_term(chunk[1:]) * Fraction(-1)
    coef = Fraction(1)
    s = 0
    for factor in chunk.split("*"):
        factor = factor.strip()
        if not factor:
            continue
        if factor.startswith("pi"):
            rest = factor[2:]
            if rest == "":
                s += 2
            elif rest.startswith("^(") and rest.endswith("/2)"):
                s += int(rest[2:-3])
            elif rest.startswith("^"):
                s += 2 * int(rest[1:])
            else:
                raise ValueError(f"bad pi power: {factor!r}")
        else:
            coef *= Fraction(factor)
    return ExactScalar.pi_pow(s, coef)


ZERO = ExactScalar()
ONE = ExactScalar.rational(1)


# -- exact gamma machinery ---------------------------------------------------


def _check_half_integer(z: Fraction) -> Fraction:
    z = _as_fraction(z)
    if z.denominator not in (1, 2):
        raise ValueError(f"gamma argument must have denominator 1 or 2, got {z}")
    return z


def pochhammer(a: RatLike, j: int) -> Fraction:
    """Ascending factorial (a)_j = a (a+1) ... (a+j-1), exact."""
    if j < 0:
        raise ValueError("pochhammer needs j >= 0")
    a = _as_fraction(a)
    out = Fraction(1)
    for i in range(j):
        out *= a + i
    return out


def recip_gamma(z: RatLike) -> ExactScalar:
    """1/Gamma(z) for half-integer z, exactly; zero at the poles of Gamma."""
    z = _check_half_integer(_as_fraction(z))
    if z.denominator == 1:
        zi = int(z)
        if zi <= 0:
            return ExactScalar()  # pole of Gamma
        return ExactScalar.rational(Fraction(1, math.factorial(zi - 1)))
    # z = j + 1/2
    j = int(z - Fraction(1, 2))
    if j >= 0:
        q = Fraction(4**j * math.factorial(j), math.factorial(2 * j))
        return ExactScalar.pi_pow(-1, q)
    # 1/Gamma(z) = (z)_k / Gamma(z + k): climb into the positive range
    k = -j
    return recip_gamma(z + k) * pochhammer(z, k)


def gamma_exact(z: RatLike) -> ExactScalar:
    """Gamma(z) for half-integer z; raises GammaPoleError at nonpositive integers."""
    z = _check_half_integer(_as_fraction(z))
    if z.denominator == 1 and z <= 0:
        raise GammaPoleError(f"Gamma pole at {z}")
    r = recip_gamma(z)
    return ExactScalar.rational(1) / r


def sphere_area(M: int) -> ExactScalar:
    """Total weight 2 pi^(M/2) / Gamma(M/2) of the unit supersphere integral.

    Vanishes exactly when M is a nonpositive even integer.
    """
    return ExactScalar.pi_pow(M, 2) * recip_gamma(Fraction(M, 2))


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


# -- orthogonal polynomial evaluations --------------------------------------


def laguerre(p: int, q: float, u: float) -> float:
    """Generalized Laguerre L_p^{(q)}(u) by the standard three-term recurrence."""
    if p < 0:
        raise ValueError("laguerre needs p >= 0")
    lm, l0 = 0.0, 1.0
    for i in range(p):
        lm, l0 = l0, ((2 * i + 1 + q - u) * l0 - (i + q) * lm) / (i + 1)
    return l0


def laguerre_coeffs(p: int, q: RatLike) -> List[Fraction]:
    """Exact power-basis coefficients of L_p^{(q)}:  L = sum_i c[i] u^i."""
    q = _as_fraction(q)
    return [
        Fraction((-1) ** i) * pochhammer(q + i + 1, p - i)
        / (math.factorial(p - i) * math.factorial(i))
        for i in range(p + 1)
    ]


def gegenbauer(k: int, lam: float, t: float) -> float:
    """Gegenbauer C_k^{(lam)}(t) by recurrence (lam may be negative or zero)."""
    if k < 0:
        raise ValueError("gegenbauer needs k >= 0")
    if k == 0:
        return 1.0
    cm, c0 = 1.0, 2.0 * lam * t
    for i in range(2, k + 1):
        cm, c0 = c0, (2 * (i + lam - 1) * t * c0 - (i + 2 * lam - 2) * cm) / i
    return c0


def gegenbauer_coeffs(k: int, lam: RatLike) -> Dict[int, Fraction]:
    """Exact coefficients {power: coeff} of C_k^{(lam)} in the monomial basis."""
    lam = _as_fraction(lam)
    out: Dict[int, Fraction] = {}
    for i in range(k // 2 + 1):
        c = (
            Fraction((-1) ** i)
            * pochhammer(lam, k - i)
            * 2 ** (k - 2 * i)
            / (math.factorial(i) * math.factorial(k - 2 * i))
        )
        if c != 0:
            out[k - 2 * i] = c
    return out


def chebyshev_t_coeffs(k: int) -> Dict[int, Fraction]:
    """Exact monomial coefficients of the Chebyshev polynomial T_k."""
    if k == 0:
        return {0: Fraction(1)}
    prev = {0: Fraction(1)}
    cur = {1: Fraction(1)}
    for _ in range(k - 1):
        nxt: Dict[int, Fraction] = {}
        for p, c in cur.items():
            nxt[p + 1] = nxt.get(p + 1, Fraction(0)) + 2 * c
        for p, c in prev.items():
            nxt[p] = nxt.get(p, Fraction(0)) - c
        prev, cur = cur, {p: c for p, c in nxt.items() if c != 0}
    return cur


def binom_frac(top: RatLike, k: int) -> Fraction:
    """binom(top, k) = (top-k+1)_k / k! for rational top, exact."""
    top = _as_fraction(top)
    return pochhammer(top - k + 1, k) / math.factorial(k)


def jacobi_p_m(l: int, M: int, t: float) -> float:
    """Legendre-type kernel polynomial: C_l^{((M-2)/2)}(t) / binom(l+M-3, l).

    Normalized so the value at t=1 is 1; this is the weight-side polynomial of
    the one-dimensional Funk-Hecke reduction.  Requires the normalizing binomial
    to be nonzero, i.e. M > 2 - l.
    """
    denom = binom_frac(Fraction(l + M - 3), l)
    if denom == 0:
        raise ValueError(f"normalizing binomial C({l + M - 3},{l}) vanishes (M={M}, l={l})")
    return gegenbauer(l, (M - 2) / 2.0, t) / float(denom)


# -- Bessel ------------------------------------------------------------------

_MP_DPS = 30


@lru_cache(maxsize=100_000)
def _bessel_j_cached(nu: float, t: float) -> float:
    with mpmath.workdps(_MP_DPS):
        return float(mpmath.besselj(mpmath.mpf(nu), mpmath.mpf(t)))


def bessel_j(nu: RatLike | float, t: float) -> float:
    """J_nu(t) for t >= 0.  Backed by arbitrary-precision evaluation so the
    ascending series' cancellation never costs accuracy at desk-scale t."""
    if t < 0:
        raise ValueError("bessel_j expects t >= 0")
    return _bessel_j_cached(float(nu), float(t))


@lru_cache(maxsize=100_000)
def bessel_profile(nu: float, s: float) -> float:
    """W_nu(s) = J_nu(sqrt(s)) / sqrt(s)^nu, the entire profile with
    W_nu(0) = 1/(2^nu Gamma(nu+1)) and  W_nu'(s) = -W_{nu+1}(s)/2."""
    if s < 0:
        raise ValueError("bessel_profile expects s >= 0")
    with mpmath.workdps(_MP_DPS):
        if s == 0:
            return float(1 / (mpmath.mpf(2) ** nu * mpmath.gamma(nu + 1)))
        r = mpmath.sqrt(mpmath.mpf(s))
        return float(mpmath.besselj(mpmath.mpf(nu), r) / r ** mpmath.mpf(nu))


# -- misc --------------------------------------------------------------------


def factorial_frac(k: int) -> Fraction:
    return Fraction(math.factorial(k))


def sum_exact(vals: Iterable[ExactScalar]) -> ExactScalar:
    out = ExactScalar()
    for v in vals:
        out = out + v
    return out
