"""Polynomials on a space with m commuting and 2n anticommuting coordinates.

Monomials are keyed by (bosonic exponent tuple, fermionic bitmask) and carry
ExactScalar coefficients.  A polynomial may live on one coordinate set or on a
doubled set (two supervectors x and y) for two-point kernels; the doubled
fermionic generators share one Grassmann algebra, x-block on bits 0..2n-1 and
y-block on bits 2n..4n-1.

Conventions (fixed once, used everywhere):

* coordinates: X_1..X_m bosonic, X_{m+j} the j-th anticommuting generator;
* metric: diagonal +1 on the bosonic block, antisymmetric -1/2, +1/2 pattern on
  each anticommuting pair, so raising acts by  v^{m+2j-1} = v_{m+2j}/2,
  v^{m+2j} = -v_{m+2j-1}/2  and bosonic components are unchanged;
* gradient (lower components): (d_1, ..., d_m, 2 df_2, -2 df_1, ..., 2 df_{2n},
  -2 df_{2n-1}) where df_j is the left derivative on generator j;
* Laplacian: sum_i d_i^2 - 4 sum_j df_{2j-1} df_{2j};  super-dimension M = m-2n.

Textual form (bit-exact round trip): terms joined by " + ", each term a scalar
coefficient followed by space-separated factors, e.g.

    3/2*pi^(1/2) x1^2 f1 f2 + (1 + -2*pi^(-1/2)) x2

Variables are x1..xm / f1..f2n, and y1..ym / g1..g2n on the doubled set.
Multi-term scalars are parenthesized; scalars follow ExactScalar.to_text.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

from .grassmann import NumericGrassmann, blade_mul, derivative_sign
from .scalar import ExactScalar, RatLike

TermKey = Tuple[Tuple[int, ...], int]


@dataclass(frozen=True)
class Signature:
    """m bosonic coordinates, 2n anticommuting generators."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 0:
            raise ValueError(f"need m >= 1, n >= 0; got m={self.m}, n={self.n}")

    @property
    def superdim(self) -> int:
        return self.m - 2 * self.n

    @property
    def total_vars(self) -> int:
        return self.m + 2 * self.n

    def __str__(self):
        return f"R^({self.m}|{2 * self.n})"


class SuperPolynomial:
    __slots__ = ("sig", "copies", "terms")

    def __init__(self, sig: Signature, terms: Dict[TermKey, "ExactScalar | RatLike"] | None = None,
                 copies: int = 1):
        if copies not in (1, 2):
            raise ValueError("copies must be 1 or 2")
        self.sig = sig
        self.copies = copies
        self.terms: Dict[TermKey, ExactScalar] = {}
        nb = copies * sig.m
        if terms:
            for (bos, mask), c in terms.items():
                c = ExactScalar.coerce(c)
                if c.is_zero:
                    continue
                if len(bos) != nb:
                    raise ValueError(f"exponent tuple has length {len(bos)}, expected {nb}")
                if mask >> (copies * 2 * sig.n):
                    raise ValueError("fermionic mask outside the algebra")
                self.terms[(tuple(bos), mask)] = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, sig: Signature, copies: int = 1) -> "SuperPolynomial":
        return cls(sig, {}, copies)

    @classmethod
    def constant(cls, sig: Signature, c, copies: int = 1) -> "SuperPolynomial":
        return cls(sig, {((0,) * (copies * sig.m), 0): ExactScalar.coerce(c)}, copies)

    @classmethod
    def coordinate(cls, sig: Signature, k: int, copies: int = 1, copy: int = 0) -> "SuperPolynomial":
        """X_k (1-based, k in 1..m+2n) on the chosen copy."""
        m, n = sig.m, sig.n
        if not 1 <= k <= m + 2 * n:
            raise ValueError(f"coordinate {k} out of range")
        bos = [0] * (copies * m)
        mask = 0
        if k <= m:
            bos[copy * m + k - 1] = 1
        else:
            mask = 1 << (copy * 2 * n + (k - m - 1))
        return cls(sig, {(tuple(bos), mask): ExactScalar.rational(1)}, copies)

    # -- bookkeeping -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, bos: Sequence[int], mask: int) -> ExactScalar:
        return self.terms.get((tuple(bos), mask), ExactScalar())

    def constant_term(self) -> ExactScalar:
        return self.coeff((0,) * (self.copies * self.sig.m), 0)

    def _deg(self, key: TermKey, copy: int | None) -> int:
        bos, mask = key
        m, n = self.sig.m, self.sig.n
        if copy is None:
            return sum(bos) + mask.bit_count()
        lo, hi = copy * m, (copy + 1) * m
        fmask = (mask >> (copy * 2 * n)) & ((1 << (2 * n)) - 1)
        return sum(bos[lo:hi]) + fmask.bit_count()

    def degree(self, copy: int | None = None) -> int:
        """Total degree (or degree in one copy's variables); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self._deg(k, copy) for k in self.terms)

    def homogeneous_components(self, copy: int | None = None) -> Dict[int, "SuperPolynomial"]:
        parts: Dict[int, Dict[TermKey, ExactScalar]] = {}
        for key, c in self.terms.items():
            parts.setdefault(self._deg(key, copy), {})[key] = c
        return {d: SuperPolynomial(self.sig, t, self.copies) for d, t in sorted(parts.items())}

    def map_coeffs(self, fn) -> "SuperPolynomial":
        return SuperPolynomial(self.sig, {k: fn(c) for k, c in self.terms.items()}, self.copies)

    # -- ring operations ---------------------------------------------------

    def _compat(self, other: "SuperPolynomial"):
        if self.sig != other.sig or self.copies != other.copies:
            raise ValueError("polynomials live on different coordinate sets")

    def __add__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        self._compat(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, ExactScalar()) + c
        return SuperPolynomial(self.sig, out, self.copies)

    def __neg__(self):
        return SuperPolynomial(self.sig, {k: -c for k, c in self.terms.items()}, self.copies)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ExactScalar)):
            c = ExactScalar.coerce(other)
            return SuperPolynomial(self.sig, {k: v * c for k, v in self.terms.items()}, self.copies)
        self._compat(other)
        out: Dict[TermKey, ExactScalar] = {}
        for (ba, ma), ca in self.terms.items():
            for (bb, mb), cb in other.terms.items():
                sm = blade_mul(ma, mb)
                if sm is None:
                    continue
                sign, mask = sm
                bos = tuple(a + b for a, b in zip(ba, bb))
                add = ca * cb if sign > 0 else -(ca * cb)
                key = (bos, mask)
                out[key] = out.get(key, ExactScalar()) + add
        return SuperPolynomial(self.sig, out, self.copies)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ExactScalar)):
            return self * other
        return NotImplemented

    def __pow__(self, p: int):
        if p < 0:
            raise ValueError("negative power")
        out = SuperPolynomial.constant(self.sig, 1, self.copies)
        base = self
        while p:
            if p & 1:
                out = out * base
            base = base * base if p > 1 else base
            p >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return (self.sig, self.copies, self.terms) == (other.sig, other.copies, other.terms)

    def __hash__(self):
        return hash((self.sig, self.copies, tuple(sorted(self.terms.items()))))

    # -- evaluation --------------------------------------------------------

    def evaluate_bosonic(self, coords: Sequence[float]) -> NumericGrassmann:
        """Evaluate the commuting variables at ``coords`` (length copies*m); the
        anticommuting part is kept symbolic as a NumericGrassmann element."""
        nb = self.copies * self.sig.m
        if len(coords) != nb:
            raise ValueError(f"expected {nb} coordinates")
        ngen = self.copies * 2 * self.sig.n
        out: Dict[int, complex] = {}
        for (bos, mask), c in self.terms.items():
            v = complex(c.to_float())
            for e, x in zip(bos, coords):
                if e:
                    v *= x**e
            out[mask] = out.get(mask, 0j) + v
        return NumericGrassmann(ngen, out)

    # -- copy plumbing -----------------------------------------------------

    def embed_doubled(self) -> "SuperPolynomial":
        """View a single-copy polynomial inside the doubled algebra (x-block)."""
        if self.copies == 2:
            return self
        m, n = self.sig.m, self.sig.n
        out = {}
        for (bos, mask), c in self.terms.items():
            out[(bos + (0,) * m, mask)] = c
        return SuperPolynomial(self.sig, out, 2)

    def to_y_copy(self) -> "SuperPolynomial":
        """Send x-variables to the matching y-variables (doubled algebra).

        Only valid for elements supported on the x-block; the ascending order
        inside a block is preserved, so no signs appear.
        """
        m, n = self.sig.m, self.sig.n
        src = self.embed_doubled()
        fullx = (1 << (2 * n)) - 1
        out = {}
        for (bos, mask), c in src.terms.items():
            if any(bos[m:]) or mask >> (2 * n):
                raise ValueError("polynomial already involves y-variables")
            out[((0,) * m + bos[:m], mask << (2 * n))] = c
        return SuperPolynomial(self.sig, out, 2)

    # -- text form ---------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        m, n = self.sig.m, self.sig.n
        chunks = []
        for key in sorted(self.terms, key=lambda k: (self._deg(k, None), k[0], k[1])):
            bos, mask = key
            c = self.terms[key]
            ctext = c.to_text()
            if len(c.terms) > 1:
                ctext = f"({ctext})"
            factors = []
            for i, e in enumerate(bos):
                if not e:
                    continue
                name = f"x{i + 1}" if i < m else f"y{i - m + 1}"
                factors.append(name if e == 1 else f"{name}^{e}")
            for b in range(self.copies * 2 * n):
                if mask >> b & 1:
                    factors.append(f"f{b + 1}" if b < 2 * n else f"g{b - 2 * n + 1}")
            chunks.append(" ".join([ctext] + factors) if factors else ctext)
        return " + ".join(chunks)

    @classmethod
    def parse(cls, text: str, sig: Signature, copies: int = 1) -> "SuperPolynomial":
        out = cls.zero(sig, copies)
        for term in _split_terms(text):
            out = out + _parse_poly_term(term, sig, copies)
        return out

    def __repr__(self):
        return f"SuperPolynomial({self.to_text()!r})"


def _split_terms(text: str) -> List[str]:
    terms, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            terms.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    terms.append("".join(cur))
    return [t.strip() for t in terms if t.strip()]


def _parse_poly_term(term: str, sig: Signature, copies: int) -> SuperPolynomial:
    m, n = sig.m, sig.n
    if term.startswith("("):
        depth, i = 0, 0
        for i, ch in enumerate(term):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0:
                break
        coef = ExactScalar.parse(term[1:i])
        rest = term[i + 1:].split()
    else:
        bits = term.split()
        try:
            coef = ExactScalar.parse(bits[0])
            rest = bits[1:]
        except (ValueError, ZeroDivisionError):
            # bare monomial like "x1^2 f1" — implicit unit coefficient
            coef = ExactScalar.rational(1)
            rest = bits
    bos = [0] * (copies * m)
    mask = 0
    poly = SuperPolynomial(sig, {(tuple(bos), 0): ExactScalar.rational(1)}, copies)
    for factor in rest:
        if "^" in factor:
            name, _, e = factor.partition("^")
            e = int(e)
        else:
            name, e = factor, 1
        kind, idx = name[0], int(name[1:])
        if kind == "x":
            k, copy = idx, 0
        elif kind == "y":
            k, copy = idx, 1
        elif kind == "f":
            k, copy = m + idx, 0
        elif kind == "g":
            k, copy = m + idx, 1
        else:
            raise ValueError(f"unknown variable {name!r}")
        if copy == 1:
            if copies == 1:
                raise ValueError("y/g variables need the doubled algebra")
            if kind == "g":
                k = m + idx  # generator index inside its copy
        var = SuperPolynomial.coordinate(sig, k, copies, copy)
        poly = poly * var**e
    return poly * coef


# -- coordinate polynomials --------------------------------------------------


def r_squared(sig: Signature, copies: int = 1, copy: int = 0) -> SuperPolynomial:
    """R^2 = sum x_i^2 - sum f_{2k-1} f_{2k} on the chosen copy."""
    m, n = sig.m, sig.n
    terms: Dict[TermKey, ExactScalar] = {}
    nb = copies * m
    for i in range(m):
        bos = [0] * nb
        bos[copy * m + i] = 2
        terms[(tuple(bos), 0)] = ExactScalar.rational(1)
    base = copy * 2 * n
    zeros = (0,) * nb
    for k in range(n):
        mask = (1 << (base + 2 * k)) | (1 << (base + 2 * k + 1))
        terms[(zeros, mask)] = ExactScalar.rational(-1)
    return SuperPolynomial(sig, terms, copies)


def fermi_norm_poly(sig: Signature, copies: int = 1, copy: int = 0) -> SuperPolynomial:
    """nsq = sum_k f_{2k-1} f_{2k} as a polynomial (so R^2 = r^2 - nsq)."""
    m, n = sig.m, sig.n
    nb = copies * m
    zeros = (0,) * nb
    terms: Dict[TermKey, ExactScalar] = {}
    base = copy * 2 * n
    for k in range(n):
        mask = (1 << (base + 2 * k)) | (1 << (base + 2 * k + 1))
        terms[(zeros, mask)] = ExactScalar.rational(1)
    return SuperPolynomial(sig, terms, copies)


def pairing(sig: Signature) -> SuperPolynomial:
    """The invariant two-point pairing <x,y> on the doubled algebra:

    sum_i x_i y_i - 1/2 sum_j (f_{2j-1} g_{2j} - f_{2j} g_{2j-1}).
    """
    m, n = sig.m, sig.n
    terms: Dict[TermKey, ExactScalar] = {}
    for i in range(m):
        bos = [0] * (2 * m)
        bos[i] = 1
        bos[m + i] = 1
        terms[(tuple(bos), 0)] = ExactScalar.rational(1)
    zeros = (0,) * (2 * m)
    for j in range(n):
        mask1 = (1 << (2 * j)) | (1 << (2 * n + 2 * j + 1))      # f_{2j-1} g_{2j}
        mask2 = (1 << (2 * j + 1)) | (1 << (2 * n + 2 * j))      # f_{2j} g_{2j-1}
        terms[(zeros, mask1)] = ExactScalar.rational(Fraction(-1, 2))
        terms[(zeros, mask2)] = ExactScalar.rational(Fraction(1, 2))
    return SuperPolynomial(sig, terms, 2)


def fermi_pairing(sig: Signature) -> SuperPolynomial:
    """The anticommuting part of the pairing alone."""
    return pairing(sig) - _bosonic_pairing(sig)


def _bosonic_pairing(sig: Signature) -> SuperPolynomial:
    m = sig.m
    terms: Dict[TermKey, ExactScalar] = {}
    for i in range(m):
        bos = [0] * (2 * m)
        bos[i] = 1
        bos[m + i] = 1
        terms[(tuple(bos), 0)] = ExactScalar.rational(1)
    return SuperPolynomial(sig, terms, 2)


# -- first-order operators ---------------------------------------------------


def dbos(f: SuperPolynomial, i: int, copy: int = 0) -> SuperPolynomial:
    """d/dx_i (1-based within the chosen copy)."""
    m = f.sig.m
    if not 1 <= i <= m:
        raise ValueError(f"bosonic index {i} out of range")
    pos = copy * m + i - 1
    out: Dict[TermKey, ExactScalar] = {}
    for (bos, mask), c in f.terms.items():
        e = bos[pos]
        if not e:
            continue
        nb = list(bos)
        nb[pos] = e - 1
        key = (tuple(nb), mask)
        out[key] = out.get(key, ExactScalar()) + c * e
    return SuperPolynomial(f.sig, out, f.copies)


def dferm(f: SuperPolynomial, j: int, copy: int = 0) -> SuperPolynomial:
    """Left derivative on anticommuting generator j (1-based within the copy)."""
    n = f.sig.n
    if not 1 <= j <= 2 * n:
        raise ValueError(f"fermionic index {j} out of range")
    bit = copy * 2 * n + j - 1
    out: Dict[TermKey, ExactScalar] = {}
    for (bos, mask), c in f.terms.items():
        if not mask >> bit & 1:
            continue
        s = derivative_sign(mask, bit)
        key = (bos, mask ^ (1 << bit))
        out[key] = out.get(key, ExactScalar()) + (c if s > 0 else -c)
    return SuperPolynomial(f.sig, out, f.copies)


def mul_coordinate(f: SuperPolynomial, k: int, copy: int = 0) -> SuperPolynomial:
    """Left multiplication by coordinate X_k on the chosen copy."""
    return SuperPolynomial.coordinate(f.sig, k, f.copies, copy) * f


def nabla_lower(f: SuperPolynomial, k: int, copy: int = 0) -> SuperPolynomial:
    """Component k of the gradient (lower index), 1-based:

    bosonic slots are plain derivatives; the anticommuting pair (2i-1, 2i) maps
    to  (+2 df_{2i}, -2 df_{2i-1}).
    """
    m, n = f.sig.m, f.sig.n
    if k <= m:
        return dbos(f, k, copy)
    j = k - m
    if not 1 <= j <= 2 * n:
        raise ValueError(f"gradient slot {k} out of range")
    if j % 2 == 1:
        return dferm(f, j + 1, copy) * 2
    return dferm(f, j - 1, copy) * (-2)


def nabla_raised(f: SuperPolynomial, k: int, copy: int = 0) -> SuperPolynomial:
    """Raised component k of the gradient: bosonic unchanged, fermionic -df_j."""
    m = f.sig.m
    if k <= m:
        return dbos(f, k, copy)
    return dferm(f, k - m, copy) * (-1)


def gradient(f: SuperPolynomial, copy: int = 0) -> List[SuperPolynomial]:
    """All lower components (length m+2n)."""
    return [nabla_lower(f, k, copy) for k in range(1, f.sig.total_vars + 1)]


def raise_vector(comps: Sequence[SuperPolynomial], sig: Signature) -> List[SuperPolynomial]:
    """Raise a supervector's components: v^{m+2j-1} = v_{m+2j}/2, v^{m+2j} = -v_{m+2j-1}/2."""
    m, n = sig.m, sig.n
    out = list(comps[:m])
    half = Fraction(1, 2)
    for j in range(n):
        lo = comps[m + 2 * j]
        hi = comps[m + 2 * j + 1]
        out.append(hi * half)
        out.append(lo * (-half))
    return out


def vector_pairing(u: Sequence[SuperPolynomial], v: Sequence[SuperPolynomial],
                   sig: Signature) -> SuperPolynomial:
    """<u, v> = sum_k u^k v_k, products taken in that order."""
    ur = raise_vector(u, sig)
    out = SuperPolynomial.zero(sig, u[0].copies)
    for uk, vk in zip(ur, v):
        out = out + uk * vk
    return out


# -- second-order / composite operators -------------------------------------


def laplacian(f: SuperPolynomial, copy: int = 0) -> SuperPolynomial:
    """sum_i d_i^2 - 4 sum_j df_{2j-1} df_{2j} on the chosen copy."""
    m, n = f.sig.m, f.sig.n
    out = SuperPolynomial.zero(f.sig, f.copies)
    for i in range(1, m + 1):
        out = out + dbos(dbos(f, i, copy), i, copy)
    for j in range(1, n + 1):
        out = out + dferm(dferm(f, 2 * j, copy), 2 * j - 1, copy) * (-4)
    return out


def euler(f: SuperPolynomial, copy: int = 0) -> SuperPolynomial:
    """Degree operator sum X_k d_{X_k}: multiplies each term by its degree."""
    out: Dict[TermKey, ExactScalar] = {}
    for key, c in f.terms.items():
        d = f._deg(key, copy)
        if d:
            out[key] = c * d
    return SuperPolynomial(f.sig, out, f.copies)


def laplace_beltrami(f: SuperPolynomial, copy: int = 0) -> SuperPolynomial:
    """R^2 lap - E(M - 2 + E), the spherical part of the Laplacian."""
    M = f.sig.superdim
    ef = euler(f, copy)
    return r_squared(f.sig, f.copies, copy) * laplacian(f, copy) \
        - ef * (M - 2) - euler(ef, copy)


def osp_generator(f: SuperPolynomial, i: int, j: int, copy: int = 0,
                  cross: Tuple[int, int] | None = None) -> SuperPolynomial:
    """Rotation generator L_{ij} = X_i d_{X^j} - (-1)^{[i][j]} X_j d_{X^i}.

    Indices are 1-based in 1..m+2n.  ``d_{X^j}`` (derivative along the raised
    coordinate) is exactly the lower gradient component j.  With ``cross`` =
    (copy_i, copy_j) the two halves act on different copies, which gives the
    two-point invariance operators on the doubled algebra.
    """
    m = f.sig.m
    ci, cj = cross if cross is not None else (copy, copy)
    pi = 0 if i <= m else 1
    pj = 0 if j <= m else 1
    # first half lives entirely on copy ci, second half entirely on copy cj
    first = mul_coordinate(nabla_lower(f, j, ci), i, ci)
    second = mul_coordinate(nabla_lower(f, i, cj), j, cj)
    if pi * pj:
        return first + second
    return first - second


def nabla_pair_with_x(f: SuperPolynomial, copy: int = 0) -> SuperPolynomial:
    """<nabla, x f> = sum_k nabla^k (X_k f); equals (M + E) f."""
    out = SuperPolynomial.zero(f.sig, f.copies)
    for k in range(1, f.sig.total_vars + 1):
        out = out + nabla_raised(mul_coordinate(f, k, copy), k, copy)
    return out


def metric_entries(sig: Signature) -> List[Tuple[int, int, Fraction]]:
    """Nonzero entries (a, b, g^{ab}) of the contravariant metric, 1-based.

    Identity on the bosonic block; each fermionic pair contributes the
    antisymmetric 2x2 block with g^{2j-1+m, 2j+m} = -1/2.
    """
    m, n = sig.m, sig.n
    out = [(i, i, Fraction(1)) for i in range(1, m + 1)]
    for k in range(1, n + 1):
        out.append((m + 2 * k - 1, m + 2 * k, Fraction(-1, 2)))
        out.append((m + 2 * k, m + 2 * k - 1, Fraction(1, 2)))
    return out


def laplace_beltrami_via_generators(f: SuperPolynomial, copy: int = 0) -> SuperPolynomial:
    """Quadratic Casimir route: -1/2 sum_{ijkl} L_{ij} g^{jk} g^{il} L_{kl}.

    The trace-style contraction (inner index of the left generator against the
    outer index of the right one) is the reading that agrees with
    ``laplace_beltrami`` — both purely bosonically, where it reduces to the
    classical sum over squared rotation generators, and in the presence of
    anticommuting directions.  Pairing i with k and j with l instead flips the
    bosonic block's sign, so it cannot be the intended contraction.
    """
    out = SuperPolynomial.zero(f.sig, f.copies)
    ent = metric_entries(f.sig)
    half = Fraction(-1, 2)
    for (j, k, gjk) in ent:
        for (i, l, gil) in ent:
            inner = osp_generator(f, k, l, copy)
            out = out + osp_generator(inner, i, j, copy) * (gjk * gil * half)
    return out
