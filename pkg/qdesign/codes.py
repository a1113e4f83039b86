"""
Linear codes

An [n,k]_q code is a k-subspace of F_q^n with a canonical RREF generator matrix.
Constructions: duals, Reed-Solomon evaluation codes, cyclic codes from divisors of
x^n - 1, Goppa subfield codes. Queries: brute-force minimum distance and weight
distribution, quasi-cyclic index, group actions and code-to-code distance, cyclic
code counts, coset leaders and standard arrays.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, partial

import numpy as np
from sympy import divisors

from qdesign.config import Config
from qdesign.errors import (
    BadDimension,
    BadParameters,
    BudgetExceeded,
    DimensionMismatch,
    DuplicatePoints,
    FieldMismatch,
    FormatError,
    NotADivisor,
    RootInLocatorSet,
    UnsupportedSubfield,
    VerificationMismatch,
)
from qdesign.field import FieldCtx, FieldElem, field_create
from qdesign.groups import GLElem, permutation_matrix
from qdesign.models import CyclicCodeCount
from qdesign.poly import Poly, factor_xn_minus_1, inverse_mod
from qdesign.subspace import MatQ, Subspace, _rref_array, mat_mul, null_space, subspace_distance, subspace_image
from qdesign.utils import hamming_weight, iter_words, lex_min_index, map_chunks_sync

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearCode:
    """[n,k]_q code with an RREF generator matrix."""

    ctx: FieldCtx
    n: int
    k: int
    generator: MatQ

    def __post_init__(self):
        if self.generator.ctx != self.ctx:
            raise FieldMismatch(f"Generator over F_{self.generator.ctx.spec}, code over F_{self.ctx.spec}")
        if self.generator.shape != (self.k, self.n):
            raise DimensionMismatch(f"Generator is {self.generator.shape}, expected ({self.k}, {self.n})")
        R, pivots = _rref_array(self.ctx, self.generator.data)
        if len(pivots) != self.k or not np.array_equal(R, self.generator.data):
            raise FormatError("Generator must be a full-rank RREF matrix")

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows, n: int | None = None) -> "LinearCode":
        """Code spanned by arbitrary rows (duplicates and dependencies allowed)."""
        return cls.from_subspace(Subspace.span(ctx, rows, n))

    @classmethod
    def from_subspace(cls, U: Subspace) -> "LinearCode":
        return cls(U.ctx, U.ambient, U.dim, U.basis)

    @classmethod
    def full(cls, ctx: FieldCtx, n: int) -> "LinearCode":
        return cls.from_subspace(Subspace.full(ctx, n))

    @property
    def subspace(self) -> Subspace:
        return Subspace(self.ctx, self.n, self.generator)

    @cached_property
    def parity_check(self) -> MatQ:
        """(n-k) x n matrix H with G H^T = 0."""
        return null_space(self.generator)

    def contains(self, word) -> bool:
        return self.subspace.contains_vector(word)

    def syndrome(self, word) -> tuple[int, ...]:
        s = mat_mul(self.ctx, np.asarray(word, dtype=np.int64), self.parity_check.data.T)
        return tuple(int(c) for c in np.atleast_1d(s))

    def label(self, budget: int | None = None) -> str:
        """Parameters as [n,k,d]_q, dropping d for the zero code or past the budget."""
        try:
            d = min_distance(self, budget)
        except (BadDimension, BudgetExceeded):
            return f"[{self.n},{self.k}]_{self.ctx.q}"
        return f"[{self.n},{self.k},{d}]_{self.ctx.q}"

    def __repr__(self) -> str:
        return f"LinearCode(F_{self.ctx.spec}, n={self.n}, k={self.k}, {self.generator.data.tolist()})"


def dual_code(C: LinearCode) -> LinearCode:
    return LinearCode.from_rows(C.ctx, C.parity_check.data, C.n)


# ----------------------------------------------------------------------
# Codeword enumeration
# ----------------------------------------------------------------------
def _check_budget(C: LinearCode, budget: int | None) -> None:
    budget = budget or Config.CODEWORD_BUDGET
    if C.ctx.q**C.k > budget:
        raise BudgetExceeded(f"{C.ctx.q}^{C.k} codewords exceed the budget {budget}")


def iter_codewords(C: LinearCode, budget: int | None = None, prefixes=None):
    """Codewords in message order, as (m, n) code arrays.

    `prefixes` restricts the first message symbol, for splitting work across workers.
    """
    _check_budget(C, budget)
    if C.k == 0:
        yield np.zeros((1, C.n), dtype=np.int64)
        return
    G = C.generator.data
    prefixes = range(C.ctx.q) if prefixes is None else prefixes
    for a in prefixes:
        for rest in iter_words(C.ctx.q, C.k - 1):
            msgs = np.hstack([np.full((rest.shape[0], 1), a, dtype=np.int64), rest])
            yield mat_mul(C.ctx, msgs, G)


def _min_weight(C: LinearCode, prefixes: list[int]) -> int:
    best = C.n + 1
    for words in iter_codewords(C, C.ctx.q**C.k, prefixes):
        w = hamming_weight(words)
        w = w[w > 0]
        if w.size:
            best = min(best, int(w.min()))
    return best


def min_distance(C: LinearCode, budget: int | None = None, threads: int | None = None) -> int:
    """Least weight of a nonzero codeword, by enumeration of all q^k codewords."""
    if C.k == 0:
        raise BadDimension("The zero code has no minimum distance")
    _check_budget(C, budget)
    parts = map_chunks_sync(partial(_min_weight, C), list(range(C.ctx.q)), threads or Config.DEFAULT_THREADS)
    return min(parts)


def weight_distribution(C: LinearCode, budget: int | None = None) -> list[int]:
    """A_w for w = 0..n."""
    counts = np.zeros(C.n + 1, dtype=np.int64)
    for words in iter_codewords(C, budget):
        counts += np.bincount(hamming_weight(words), minlength=C.n + 1)
    return [int(c) for c in counts]


# ----------------------------------------------------------------------
# Constructions
# ----------------------------------------------------------------------
def _codes_of(ctx: FieldCtx, points) -> list[int]:
    out = []
    for x in points:
        if isinstance(x, FieldElem):
            if x.ctx != ctx:
                raise FieldMismatch(f"Point in F_{x.ctx.spec}, expected F_{ctx.spec}")
            out.append(x.code)
        else:
            code = int(x)
            if not 0 <= code < ctx.q:
                raise BadParameters(f"Code {code} out of range for F_{ctx.spec}")
            out.append(code)
    return out


def rs_code(ctx: FieldCtx, eval_points, k: int, budget: int | None = None) -> LinearCode:
    """Evaluations of all polynomials of degree < k at distinct points.

    The generator rows are the evaluations of 1, x, ..., x^(k-1). Minimum distance
    n - k + 1 is confirmed by enumeration when q^k is within the budget.
    """
    points = _codes_of(ctx, eval_points)
    n = len(points)
    if len(set(points)) != n:
        raise DuplicatePoints(f"Evaluation points repeat: {points}")
    if not 0 <= k <= n:
        raise BadDimension(f"Need 0 <= k <= n, got k={k}, n={n}")
    xs = np.array(points, dtype=np.int64)
    V = np.array([ctx.pow(xs, i) for i in range(k)], dtype=np.int64).reshape(k, n)
    C = LinearCode.from_rows(ctx, V, n)
    if C.k != k:
        raise VerificationMismatch(f"Evaluation map not injective: rank {C.k} < {k}")
    budget = budget or Config.MDS_CHECK_BUDGET
    if k and ctx.q**k <= budget and min_distance(C) != n - k + 1:
        raise VerificationMismatch(f"RS code [{n},{k}] is not MDS")
    return C


def cyclic_code(ctx: FieldCtx, n: int, g: Poly) -> LinearCode:
    """Ideal generated by g in F_q[x]/(x^n - 1): rows are the shifts x^i g."""
    if g.ctx != ctx:
        raise FieldMismatch(f"Generator polynomial over F_{g.ctx.spec}, code over F_{ctx.spec}")
    if g.is_zero() or g.degree > n or not (Poly.xn_minus_1(ctx, n) % g).is_zero():
        raise NotADivisor(f"{g} does not divide x^{n} - 1 over F_{ctx.spec}")
    g = g.monic()
    k = n - g.degree
    rows = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        rows[i, i : i + g.degree + 1] = g.codes
    return LinearCode.from_rows(ctx, rows, n)


def _is_shift_invariant(C: LinearCode, shift: int) -> bool:
    shifted = np.roll(C.generator.data, shift, axis=1)
    return len(_rref_array(C.ctx, np.vstack([C.generator.data, shifted]))[1]) == C.k


def quasi_cyclic_index(C: LinearCode) -> tuple[int, int]:
    """(l, n/l) for the least l | n with C invariant under the l-fold cyclic shift."""
    if C.n == 0:
        return 1, 0
    for ell in divisors(C.n):
        if _is_shift_invariant(C, ell):
            return int(ell), C.n // int(ell)
    raise VerificationMismatch("No shift index found")


def _expand_over_prime(big: FieldCtx, H: np.ndarray) -> np.ndarray:
    """Replace each row of codes by e rows of base-p digits."""
    rows = []
    for row in H:
        for d in range(big.e):
            rows.append((row // big.p**d) % big.p)
    return np.array(rows, dtype=np.int64).reshape(len(rows), H.shape[1])


def goppa_code(locators, f: Poly, subfield: FieldCtx) -> LinearCode:
    """Subfield code {a : sum a_i / (x - alpha_i) = 0 mod f}.

    Parity checks are the rows alpha_i^j / f(alpha_i), j < deg f, over F_{q^m};
    each is expanded in the power basis of the field modulus when the subfield is
    the prime field. Every generator row is re-checked against the congruence.
    """
    big = f.ctx
    if subfield == big:
        expand = False
    elif subfield.e == 1 and subfield.p == big.p:
        expand = True
    else:
        raise UnsupportedSubfield(f"F_{subfield.spec} is neither F_{big.spec} nor its prime field")
    if f.is_zero():
        raise BadParameters("Goppa polynomial must be nonzero")
    points = _codes_of(big, locators)
    n = len(points)
    if len(set(points)) != n:
        raise DuplicatePoints(f"Locators repeat: {points}")
    xs = np.array(points, dtype=np.int64)
    values = np.atleast_1d(np.asarray(f(xs), dtype=np.int64))
    if np.any(values == 0):
        root = points[int(np.nonzero(values == 0)[0][0])]
        raise RootInLocatorSet(f"Locator {root} is a root of {f}")

    r = f.degree
    if r == 0:
        return LinearCode.full(subfield, n)
    scale = big.inv(values)
    H = np.array([big.mul(big.pow(xs, j), scale) for j in range(r)], dtype=np.int64).reshape(r, n)
    if expand:
        H = _expand_over_prime(big, H)
    C = LinearCode.from_rows(subfield, null_space(MatQ(subfield, H)).data, n)

    inverses = [inverse_mod(Poly.linear(big, a), f) for a in points]
    for word in C.generator.data:
        total = Poly.zero(big)
        for a, inv in zip(word, inverses):
            if a:
                total = total + inv.scale(int(a))
        if not (total % f).is_zero():
            raise VerificationMismatch(f"Goppa generator row {word.tolist()} fails the congruence")
    logger.info(f"Goppa code over F_{subfield.spec}: [{n},{C.k}] from f = {f}")
    return C


# ----------------------------------------------------------------------
# Actions and distances
# ----------------------------------------------------------------------
def reversal_permutation(n: int) -> list[int]:
    return list(range(n - 1, -1, -1))


def code_action(C: LinearCode, sigma) -> LinearCode:
    """C^sigma = {c sigma : c in C}; a list is read as a coordinate permutation."""
    if not isinstance(sigma, GLElem):
        sigma = permutation_matrix(C.ctx, sigma)
    if sigma.ctx != C.ctx:
        raise FieldMismatch(f"Action over F_{sigma.ctx.spec}, code over F_{C.ctx.spec}")
    if sigma.n != C.n:
        raise DimensionMismatch(f"{sigma.n}x{sigma.n} action on a code of length {C.n}")
    return LinearCode.from_subspace(subspace_image(C.subspace, sigma.matrix))


def code_pair_distance(C1: LinearCode, C2: LinearCode) -> int:
    """dim(C1 + C2) - dim(C1 n C2)."""
    return subspace_distance(C1.subspace, C2.subspace)


def is_reversible(C: LinearCode) -> bool:
    return code_action(C, reversal_permutation(C.n)) == C


# ----------------------------------------------------------------------
# Counting cyclic codes
# ----------------------------------------------------------------------
def _falling_factorial(q: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= q - i
    return out


def count_cyclic_codes(ctx: FieldCtx, n: int) -> CyclicCodeCount:
    """Cyclic codes of length n by dimension: subsets of the irreducible factors of x^n - 1.

    The reading (q)_k / (q^2 - q) with a falling factorial is reported next to the
    divisor count; the two generally disagree.
    """
    factors = factor_xn_minus_1(ctx, n)
    by_degree = {0: 1}
    for f in factors:
        step = dict(by_degree)
        for deg, count in by_degree.items():
            step[deg + f.degree] = step.get(deg + f.degree, 0) + count
        by_degree = step
    by_dimension = {n - deg: count for deg, count in sorted(by_degree.items(), reverse=True)}
    q = ctx.q
    reading = {k: str(Fraction(_falling_factorial(q, k), q * q - q)) for k in range(n + 1)}
    return CyclicCodeCount(
        n=n,
        q=q,
        factor_degrees=[f.degree for f in factors],
        by_dimension=by_dimension,
        total=sum(by_dimension.values()),
        falling_factorial_reading=reading,
    )


# ----------------------------------------------------------------------
# Cosets
# ----------------------------------------------------------------------
def coset_leader(C: LinearCode, word, budget: int | None = None) -> tuple[int, ...]:
    """Least-weight word of word + C; ties go to the lexicographically smallest."""
    v = np.asarray(_codes_of(C.ctx, word), dtype=np.int64)
    if v.shape != (C.n,):
        raise DimensionMismatch(f"Word of length {v.size}, code of length {C.n}")
    budget = budget or Config.CODEWORD_BUDGET
    if C.ctx.q ** (C.n - C.k) > budget:
        raise BudgetExceeded(f"{C.ctx.q}^{C.n - C.k} cosets exceed the budget {budget}")
    best = None
    for words in iter_codewords(C, budget):
        coset = np.asarray(C.ctx.sub(v[None, :], words), dtype=np.int64).reshape(words.shape)
        i = lex_min_index(hamming_weight(coset), coset)
        candidate = (int(hamming_weight(coset[i])), tuple(int(c) for c in coset[i]))
        if best is None or candidate < best:
            best = candidate
    return best[1]


def standard_array(C: LinearCode, budget: int | None = None) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Coset leader for every syndrome, by a sweep over all of F_q^n."""
    budget = budget or Config.CODEWORD_BUDGET
    if C.ctx.q**C.n > budget:
        raise BudgetExceeded(f"{C.ctx.q}^{C.n} words exceed the budget {budget}")
    H = C.parity_check.data
    leaders: dict[tuple[int, ...], tuple[int, tuple[int, ...]]] = {}
    for words in iter_words(C.ctx.q, C.n):
        syndromes = mat_mul(C.ctx, words, H.T)
        weights = hamming_weight(words)
        for s, w, word in zip(syndromes, weights, words):
            key = tuple(int(c) for c in s)
            candidate = (int(w), tuple(int(c) for c in word))
            if key not in leaders or candidate < leaders[key]:
                leaders[key] = candidate
    return {s: leader for s, (_, leader) in sorted(leaders.items())}


def default_subfield(f: Poly) -> FieldCtx:
    """Prime field under the field of f."""
    return field_create(f.ctx.p, 1)
