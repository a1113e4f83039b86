"""
Polynomials over finite fields

Polynomials over a FieldCtx, stored as coefficient codes and computed with galois,
plus integer cyclotomic polynomials from sympy. Also home to the counting formulas
(irreducible, separable, a-invariant), the factorisation of x^n - 1, and
continued/partial fraction expansions.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd as int_gcd

import galois
import numpy as np
import sympy
from sympy import divisors, factorint, totient

from qdesign.config import Config
from qdesign.errors import (
    BadParameters,
    DegreeOrder,
    DivisionByZeroPoly,
    FieldMismatch,
    NonSplittingDenominator,
    NotCoprimeCharacteristic,
    NotInvertible,
    OrderMismatch,
    SizeExceeded,
    VerificationMismatch,
)
from qdesign.field import FieldCtx, FieldElem, field_from_order, primitive_element

logger = logging.getLogger(__name__)


def _trim(codes) -> tuple[int, ...]:
    out = [int(c) for c in codes]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Poly:
    """Polynomial over a finite field; codes are coefficient codes, lowest degree first."""

    ctx: FieldCtx
    codes: tuple[int, ...] = ()

    def __post_init__(self):
        codes = _trim(self.codes)
        if any(not 0 <= c < self.ctx.q for c in codes):
            raise BadParameters(f"Coefficient code out of range for F_{self.ctx.spec}: {codes}")
        object.__setattr__(self, "codes", codes)

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, (1,))

    @classmethod
    def x(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, (0, 1))

    @classmethod
    def constant(cls, ctx: FieldCtx, code: int) -> "Poly":
        return cls(ctx, (int(code),))

    @classmethod
    def monomial(cls, ctx: FieldCtx, degree: int, code: int = 1) -> "Poly":
        return cls(ctx, (0,) * degree + (int(code),))

    @classmethod
    def linear(cls, ctx: FieldCtx, root) -> "Poly":
        """x - root."""
        return cls(ctx, (ctx.neg(int(root)), 1))

    @classmethod
    def xn_minus_1(cls, ctx: FieldCtx, n: int) -> "Poly":
        return cls(ctx, (ctx.neg(1),) + (0,) * (n - 1) + (1,))

    @classmethod
    def from_galois(cls, ctx: FieldCtx, g: galois.Poly) -> "Poly":
        return cls(ctx, g.coeffs[::-1].view(np.ndarray).astype(np.int64))

    @cached_property
    def gpoly(self) -> galois.Poly:
        return galois.Poly(list(self.codes) or [0], field=self.ctx.GF, order="asc")

    # ------------------------------------------------------------------
    # Basic properties
    # ------------------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.codes) - 1

    @property
    def coeffs(self) -> list[FieldElem]:
        return [FieldElem(self.ctx, c) for c in self.codes]

    @property
    def lc(self) -> int:
        return self.codes[-1] if self.codes else 0

    def is_zero(self) -> bool:
        return not self.codes

    def is_monic(self) -> bool:
        return self.lc == 1

    def sort_key(self) -> tuple[int, int]:
        return (self.degree, sum(c * self.ctx.q**i for i, c in enumerate(self.codes)))

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise FieldMismatch(f"F_{self.ctx.spec} vs F_{other.ctx.spec}")
            return other
        if isinstance(other, FieldElem):
            return Poly.constant(self.ctx, other.code)
        return Poly.constant(self.ctx, int(other))

    def _wrap(self, g: galois.Poly) -> "Poly":
        return Poly.from_galois(self.ctx, g)

    # ------------------------------------------------------------------
    # Ring operations
    # ------------------------------------------------------------------
    def __add__(self, other) -> "Poly":
        return self._wrap(self.gpoly + self._coerce(other).gpoly)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        return self._wrap(self.gpoly - self._coerce(other).gpoly)

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __neg__(self) -> "Poly":
        return self._wrap(-self.gpoly)

    def __mul__(self, other) -> "Poly":
        return self._wrap(self.gpoly * self._coerce(other).gpoly)

    __rmul__ = __mul__

    def __pow__(self, m: int) -> "Poly":
        return self._wrap(self.gpoly**m)

    def scale(self, code) -> "Poly":
        # A galois Poly times a Python int is repeated addition, so scale by a constant Poly
        return self * Poly.constant(self.ctx, int(code))

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZeroPoly("Division by the zero polynomial")
        quot, rem = divmod(self.gpoly, other.gpoly)
        return self._wrap(quot), self._wrap(rem)

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def __call__(self, x):
        """Evaluate at a code, a FieldElem, or an array of codes."""
        as_elem = isinstance(x, FieldElem)
        value = self.ctx._out(self.gpoly(self.ctx.array(x.code if as_elem else x)))
        return FieldElem(self.ctx, value) if as_elem else value

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.ctx.inv(self.lc))

    def derivative(self) -> "Poly":
        if self.degree < 1:
            return Poly.zero(self.ctx)
        return self._wrap(self.gpoly.derivative())

    def compose_scale(self, a) -> "Poly":
        """f(a x)."""
        a = int(a)
        scales = [self.ctx.pow(a, i) for i in range(len(self.codes))]
        return Poly(self.ctx, self.ctx.mul(np.array(self.codes, dtype=np.int64), np.array(scales, dtype=np.int64)))

    def powmod(self, exponent: int, modulus: "Poly") -> "Poly":
        modulus = self._coerce(modulus)
        if modulus.is_zero():
            raise DivisionByZeroPoly("Reduction modulo the zero polynomial")
        return self._wrap(pow(self.gpoly, exponent, modulus.gpoly))

    # ------------------------------------------------------------------
    # Text
    # ------------------------------------------------------------------
    def to_text(self) -> str:
        """Lowest-first space separated codes; the zero polynomial is "0"."""
        return " ".join(str(c) for c in self.codes) if self.codes else "0"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.codes[i]
            if not c:
                continue
            coeff = "" if c == 1 and i > 0 else str(c)
            var = "" if i == 0 else "x" if i == 1 else f"x^{i}"
            terms.append(f"{coeff}{var}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"Poly({self} over F_{self.ctx.spec})"


@dataclass(frozen=True)
class IntPoly:
    """Polynomial with integer coefficients, lowest degree first."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def reduce(self, ctx: FieldCtx) -> Poly:
        """Image in F_p[x] embedded in ctx's prime subfield."""
        return Poly(ctx, [ctx.from_int(c) for c in self.coeffs])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            coeff = "" if mag == 1 and i > 0 else str(mag)
            var = "" if i == 0 else "x" if i == 1 else f"x^{i}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, f"{coeff}{var}"))
        head_sign, head = terms[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


# ----------------------------------------------------------------------
# Euclid
# ----------------------------------------------------------------------
def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g and g monic (or zero)."""
    b = a._coerce(b)
    if a.is_zero() and b.is_zero():
        return a, Poly.one(a.ctx), Poly.zero(a.ctx)
    g, s, t = galois.egcd(a.gpoly, b.gpoly)
    return a._wrap(g), a._wrap(s), a._wrap(t)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    b = a._coerce(b)
    if a.is_zero() and b.is_zero():
        return a
    return a._wrap(galois.gcd(a.gpoly, b.gpoly))


def inverse_mod(a: Poly, modulus: Poly) -> Poly:
    g, s, _ = poly_xgcd(a, modulus)
    if g != Poly.one(a.ctx):
        raise NotInvertible(f"{a} is not invertible modulo {modulus}")
    return s % modulus


# ----------------------------------------------------------------------
# Irreducibility
# ----------------------------------------------------------------------
def is_irreducible(f: Poly) -> bool:
    """Constants and zero are not irreducible; everything else is galois' test on the monic associate."""
    if f.degree < 1:
        return False
    return bool(f.monic().gpoly.is_irreducible())


def _monic_with_lower(ctx: FieldCtx, degree: int, code: int) -> Poly:
    lower = []
    for _ in range(degree):
        code, r = divmod(code, ctx.q)
        lower.append(r)
    return Poly(ctx, lower + [1])


def irreducible_polys(ctx: FieldCtx, degree: int):
    """Monic irreducible polynomials of the given degree in sort_key order.

    Over a prime field galois lists them in that order directly. Over F_{p^e} our
    modulus need not be galois' default one, so candidates are enumerated in code
    order and tested one by one.
    """
    if ctx.e == 1:
        for g in galois.irreducible_polys(ctx.p, degree):
            yield Poly.from_galois(ctx, g)
        return
    for code in range(ctx.q**degree):
        f = _monic_with_lower(ctx, degree, code)
        if is_irreducible(f):
            yield f


def is_primitive_poly(f: Poly) -> bool:
    """True iff f is irreducible and x has order q^deg - 1 modulo f."""
    if not f.codes or f.codes[0] == 0 or not is_irreducible(f):
        return False
    return bool(f.monic().gpoly.is_primitive())


# ----------------------------------------------------------------------
# Counting
# ----------------------------------------------------------------------
def moebius(n: int) -> int:
    if n < 1:
        raise BadParameters(f"Moebius function needs n >= 1, got {n}")
    exponents = factorint(n).values()
    if any(e > 1 for e in exponents):
        return 0
    return -1 if len(exponents) % 2 else 1


def count_irreducible(q: int, l: int) -> int:
    """Number of monic irreducible polynomials of degree l over F_q (Moebius formula)."""
    if q < 2 or l < 1:
        raise BadParameters(f"Need q >= 2 and l >= 1, got q={q}, l={l}")
    total = sum(moebius(d) * q ** (l // d) for d in divisors(l))
    return total // l


def count_separable(q: int, l: int) -> int:
    if l < 1:
        raise BadParameters(f"Need l >= 1, got {l}")
    return q**l


def count_separable_sum(q: int, l: int) -> int:
    """Summation form sum_{i=2..l} (q^i - q^(i-1)) + q, which telescopes to q^l."""
    if l < 1:
        raise BadParameters(f"Need l >= 1, got {l}")
    return sum(q**i - q ** (i - 1) for i in range(2, l + 1)) + q


def count_squarefree_brute(ctx: FieldCtx, l: int, budget: int | None = None) -> int:
    """Count monic squarefree polynomials of degree 1..l by enumeration."""
    budget = budget or Config.ENUM_BUDGET
    if 2 * ctx.q**l > budget:
        raise SizeExceeded(f"Enumerating monic polynomials up to degree {l} over F_{ctx.spec} exceeds {budget}")
    count = 0
    for degree in range(1, l + 1):
        for code in range(ctx.q**degree):
            if _monic_with_lower(ctx, degree, code).gpoly.is_square_free():
                count += 1
    return count


def invariant_irreducible_formula(q: int, k: int, m: int) -> int:
    """phi(k)/(k m) * sum over d | m with gcd(d, k) = 1 of mu(d) (q^(m/d) - 1)."""
    total = sum(moebius(d) * (q ** (m // d) - 1) for d in divisors(m) if int_gcd(d, k) == 1)
    value = Fraction(int(totient(k)) * total, k * m)
    if value.denominator != 1:
        raise VerificationMismatch(f"Invariant count formula is not integral for q={q}, k={k}, m={m}")
    return int(value)


def count_invariant_irreducible(q: int, k: int, m: int, method: str = "auto", budget: int | None = None) -> int:
    """Count monic irreducible f of degree k*m over F_q with f(a x) = f(x), a of order k.

    Args:
        q: Field size (prime power)
        k: Multiplicative order of a; must divide q - 1
        m: Degree quotient, so deg f = k*m
        method: "brute", "formula" or "auto" (brute force while q^m fits the budget)
        budget: Largest q^m enumerated by brute force

    Returns:
        The number of such polynomials
    """
    ctx = field_from_order(q)
    if k < 2 or (q - 1) % k:
        raise OrderMismatch(f"No element of order {k} in F_{q}^*")
    if m < 1:
        raise BadParameters(f"Need m >= 1, got {m}")
    if method not in ("auto", "brute", "formula"):
        raise BadParameters(f"Unknown method: {method}")
    budget = budget or Config.INVARIANT_BRUTE_BUDGET
    if method == "formula" or (method == "auto" and q**m > budget):
        return invariant_irreducible_formula(q, k, m)
    if q**m > budget:
        raise SizeExceeded(f"Brute force over {q}^{m} candidates exceeds {budget}")

    a = (primitive_element(ctx) ** ((q - 1) // k)).code
    n = k * m
    count = 0
    # f(ax) = f(x) forces every nonzero coefficient onto a multiple of k
    for lower in itertools.product(range(q), repeat=m):
        codes = [0] * (n + 1)
        codes[n] = 1
        for j, c in enumerate(lower):
            codes[j * k] = c
        f = Poly(ctx, codes)
        if f.compose_scale(a) != f:
            raise VerificationMismatch(f"{f} is not invariant under x -> {a}x")
        if is_irreducible(f):
            count += 1
    logger.info(f"Brute-force invariant count q={q} k={k} m={m}: {count}")
    return count


# ----------------------------------------------------------------------
# Cyclotomics and x^n - 1
# ----------------------------------------------------------------------
@lru_cache(maxsize=256)
def cyclotomic_poly(n: int) -> IntPoly:
    """Phi_n over the integers."""
    if n < 1:
        raise BadParameters(f"Need n >= 1, got {n}")
    coeffs = sympy.cyclotomic_poly(n, polys=True).all_coeffs()
    return IntPoly(tuple(int(c) for c in reversed(coeffs)))


def factor_xn_minus_1(ctx: FieldCtx, n: int) -> list[Poly]:
    """Monic irreducible factors of x^n - 1 over ctx, sorted by (degree, code).

    galois factors x^n - 1 directly; since p does not divide n every factor must
    appear once, and the product and each factor's irreducibility are re-checked.
    """
    if n < 1:
        raise BadParameters(f"Need n >= 1, got {n}")
    if n % ctx.p == 0:
        raise NotCoprimeCharacteristic(f"p={ctx.p} divides n={n}")
    target = Poly.xn_minus_1(ctx, n)
    polys, multiplicities = target.gpoly.factors()
    if any(int(m) != 1 for m in multiplicities):
        raise VerificationMismatch(f"x^{n} - 1 over F_{ctx.spec} has a repeated factor")
    factors = sorted((Poly.from_galois(ctx, g) for g in polys), key=Poly.sort_key)

    product = Poly.one(ctx)
    for f in factors:
        if not is_irreducible(f):
            raise VerificationMismatch(f"Factor {f} of x^{n} - 1 is reducible")
        product = product * f
    if product != target:
        raise VerificationMismatch(f"Factors of x^{n} - 1 over F_{ctx.spec} do not multiply back")
    logger.debug(f"x^{n} - 1 over F_{ctx.spec}: {len(factors)} factors")
    return factors


# ----------------------------------------------------------------------
# Fractions
# ----------------------------------------------------------------------
def poly_continued_fraction(f: Poly, g: Poly) -> list[Poly]:
    """Quotients of the Euclidean algorithm on (f, g)."""
    if g.is_zero():
        raise DivisionByZeroPoly("Continued fraction of f/0")
    g = f._coerce(g)
    quotients = []
    a, b = f, g
    while not b.is_zero():
        quot, rem = divmod(a, b)
        quotients.append(quot)
        a, b = b, rem
    return quotients


def continued_fraction_value(quotients: list[Poly]) -> tuple[Poly, Poly]:
    """Fold q_1 + 1/(q_2 + 1/(...)) back into (numerator, denominator)."""
    if not quotients:
        raise BadParameters("Empty quotient list")
    num, den = quotients[-1], Poly.one(quotients[-1].ctx)
    for quot in reversed(quotients[:-1]):
        num, den = quot * num + den, num
    return num, den


@dataclass(frozen=True)
class PartialFraction:
    """numerator / (x - root)^power."""

    numerator: Poly
    root: FieldElem
    power: int

    def to_text(self) -> str:
        return f"{self.numerator}/(x - {self.root.code})^{self.power}"


def _taylor(f: Poly, root: int, count: int) -> list[int]:
    """First `count` coefficients of f in powers of (x - root)."""
    lin = Poly.linear(f.ctx, root)
    out = []
    for _ in range(count):
        f, rem = divmod(f, lin)
        out.append(rem.codes[0] if rem.codes else 0)
    return out


def poly_partial_fractions(f: Poly, g: Poly) -> list[PartialFraction]:
    """Decompose f/g into sum c/(x - a)^j for a denominator that splits into linear factors.

    Terms are sorted by (root code, power); zero numerators are dropped.
    """
    if g.is_zero():
        raise DivisionByZeroPoly("Partial fractions of f/0")
    g = f._coerce(g)
    ctx = f.ctx
    if f.degree >= g.degree:
        raise DegreeOrder(f"deg f = {f.degree} >= deg g = {g.degree}")
    if f.is_zero():
        return []

    roots, counts = g.gpoly.roots(multiplicity=True)
    multiplicities = {int(r): int(m) for r, m in zip(roots.view(np.ndarray), counts)}
    if sum(multiplicities.values()) < g.degree:
        rest = g
        for root, m in multiplicities.items():
            rest = rest // (Poly.linear(ctx, root) ** m)
        raise NonSplittingDenominator(f"{g} has the non-linear factor {rest.monic()} over F_{ctx.spec}")

    terms = []
    for root, m in sorted(multiplicities.items()):
        cofactor = g // (Poly.linear(ctx, root) ** m)
        numer = _taylor(f, root, m)
        denom = _taylor(cofactor, root, m)
        inv0 = ctx.inv(denom[0])
        series = []
        for i in range(m):
            acc = numer[i]
            for j in range(1, i + 1):
                acc = ctx.sub(acc, ctx.mul(denom[j], series[i - j]))
            series.append(ctx.mul(acc, inv0))
        for i, c in enumerate(series):
            if c:
                terms.append(PartialFraction(Poly.constant(ctx, c), FieldElem(ctx, root), m - i))
    terms.sort(key=lambda term: (term.root.code, term.power))
    return terms


def recombine_partial_fractions(terms: list[PartialFraction], g: Poly) -> Poly:
    """Numerator N with N/g equal to the sum of the terms."""
    total = Poly.zero(g.ctx)
    for term in terms:
        total = total + term.numerator * (g // (Poly.linear(g.ctx, term.root.code) ** term.power))
    return total
