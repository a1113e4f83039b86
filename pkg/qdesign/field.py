"""
Finite Fields

Exact arithmetic in F_{p^e} on top of galois. An element sum c_i x^i (reduced modulo
the field's modulus polynomial) is encoded by the integer code sum c_i p^i, which is
galois' integer representation, so codes run over [0, q) and give the total order
used for all canonical sorting.

All arithmetic methods on FieldCtx accept plain ints or numpy arrays of codes and
return the same kind, so matrices over F_q are just int64 arrays of codes.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache, total_ordering

import galois
import numpy as np
from sympy import factorint, isprime

from qdesign.config import Config
from qdesign.errors import BadParameters, FieldMismatch, NotPrime, SizeExceeded

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldCtx:
    """The field F_{p^e} with a fixed monic irreducible modulus (lowest degree first).

    For prime fields (e = 1) the modulus is stored as (0, 1) and never used.
    """

    p: int
    e: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def spec(self) -> str:
        return f"{self.p}^{self.e}"

    def __repr__(self) -> str:
        return f"FieldCtx({self.spec})"

    @cached_property
    def GF(self) -> type[galois.FieldArray]:
        """The galois field class carrying this context's modulus."""
        if self.e == 1:
            return galois.GF(self.p)
        modulus = galois.Poly(list(self.modulus), field=galois.GF(self.p), order="asc")
        return galois.GF(self.q, irreducible_poly=modulus)

    def array(self, a) -> galois.FieldArray:
        return self.GF(np.asarray(a, dtype=np.int64))

    @cached_property
    def primitive_code(self) -> int:
        """Smallest code of multiplicative order q - 1."""
        for code in range(1, self.q):
            if int(self.GF(code).multiplicative_order()) == self.q - 1:
                return code
        raise BadParameters(f"No primitive element found in {self.spec}")

    @staticmethod
    def _out(r: galois.FieldArray):
        r = r.view(np.ndarray).astype(np.int64)
        return int(r) if r.ndim == 0 else r

    def add(self, a, b):
        return self._out(self.array(a) + self.array(b))

    def neg(self, a):
        return self._out(-self.array(a))

    def sub(self, a, b):
        return self._out(self.array(a) - self.array(b))

    def mul(self, a, b):
        return self._out(self.array(a) * self.array(b))

    def inv(self, a):
        a = self.array(a)
        if np.any(a == 0):
            raise ZeroDivisionError(f"Zero has no inverse in {self.spec}")
        return self._out(np.reciprocal(a))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, m: int):
        if m < 0:
            return self.pow(self.inv(a), -m)
        # galois gives 0^0 = 1, matching the empty product
        return self._out(self.array(a) ** m)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def elem(self, code: int) -> "FieldElem":
        return FieldElem(self, int(code))

    def from_int(self, value: int) -> int:
        """Code of the image of an integer in the prime subfield."""
        return value % self.p


@total_ordering
@dataclass(frozen=True)
class FieldElem:
    """A single element of a FieldCtx; ordered by code."""

    ctx: FieldCtx
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.ctx.q:
            raise BadParameters(f"Code {self.code} out of range for {self.ctx.spec}")

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise FieldMismatch(f"{self.ctx.spec} vs {other.ctx.spec}")
            return other.code
        return int(other)

    def __add__(self, other):
        return FieldElem(self.ctx, self.ctx.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self._other(other), self.code))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.code))

    def __mul__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.ctx, self.ctx.div(self.code, self._other(other)))

    def __pow__(self, m: int):
        return FieldElem(self.ctx, self.ctx.pow(self.code, m))

    def __lt__(self, other):
        return self.code < self._other(other)

    def __bool__(self) -> bool:
        return self.code != 0

    def __int__(self) -> int:
        return self.code

    def __repr__(self) -> str:
        return f"{self.code}@{self.ctx.spec}"

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv(self.code))

    def order(self) -> int:
        """Multiplicative order."""
        if self.code == 0:
            raise ZeroDivisionError("Zero has no multiplicative order")
        return int(self.ctx.GF(self.code).multiplicative_order())


@lru_cache(maxsize=None)
def field_create(p: int, e: int = 1) -> FieldCtx:
    """Build F_{p^e} with the lexicographically smallest monic irreducible modulus.

    galois yields irreducible polynomials over F_p in increasing order of their integer
    value, which for monic degree-e candidates is increasing order of sum c_i p^i, so the
    first one is the modulus and the choice is deterministic across runs.
    """
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise BadParameters(f"Extension degree must be >= 1, got {e}")
    if p**e > Config.MAX_FIELD_SIZE:
        raise SizeExceeded(f"Field size {p}^{e} exceeds {Config.MAX_FIELD_SIZE}")
    if e == 1:
        modulus = (0, 1)
    else:
        smallest = next(galois.irreducible_polys(p, e))
        modulus = tuple(int(c) for c in smallest.coeffs[::-1])
    logger.debug(f"Created F_{p}^{e} with modulus {modulus}")
    return FieldCtx(p, e, modulus)


def field_from_order(q: int) -> FieldCtx:
    """Field context for a prime power given as an integer."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    factors = factorint(q)
    if len(factors) != 1:
        raise NotPrime(f"{q} is not a prime power")
    ((base, e),) = factors.items()
    return field_create(int(base), int(e))


def primitive_element(ctx: FieldCtx) -> FieldElem:
    """The FieldElem of smallest code whose multiplicative order is q - 1."""
    return FieldElem(ctx, ctx.primitive_code)
