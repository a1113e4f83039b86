"""
Subspaces of F_q^n

Matrices over F_q are int64 arrays of element codes wrapped in MatQ. A Subspace
keeps its basis in reduced row-echelon form, which makes equality, hashing and
deduplication exact. Also: Gaussian binomials, Grassmannian enumeration in a fixed
order, sums/intersections, duals and the subspace distance.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from qdesign.config import Config
from qdesign.errors import AmbientMismatch, BadParameters, DimensionMismatch, FieldMismatch, FormatError, SizeExceeded
from qdesign.field import FieldCtx, FieldElem

logger = logging.getLogger(__name__)


def mat_mul(ctx: FieldCtx, a, b) -> np.ndarray:
    """Matrix product over F_q. `a` may carry leading batch axes; `b` is 2-D."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.ndim == 1:
        return mat_mul(ctx, a[None, :], b)[0]
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatch(f"Cannot multiply {a.shape} by {b.shape}")
    if ctx.e == 1:
        return (a @ b) % ctx.p
    out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    for j in range(a.shape[-1]):
        out = ctx.add(out, ctx.mul(a[..., j : j + 1], b[j : j + 1, :]))
    return out


def _rref_array(ctx: FieldCtx, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    R = np.array(a, dtype=np.int64)
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.nonzero(R[r:, c])[0]
        if nonzero.size == 0:
            continue
        i = r + int(nonzero[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = ctx.mul(ctx.inv(int(R[r, c])), R[r])
        col = R[:, c].copy()
        col[r] = 0
        others = np.nonzero(col)[0]
        if others.size:
            R[others] = ctx.sub(R[others], ctx.mul(col[others, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


@dataclass(frozen=True, eq=False)
class MatQ:
    """Immutable matrix over a finite field, stored as codes."""

    ctx: FieldCtx
    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.int64)
        if arr.ndim != 2:
            raise DimensionMismatch(f"Matrix data must be 2-D, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= self.ctx.q):
            raise BadParameters(f"Matrix entry out of range for F_{self.ctx.spec}")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "MatQ":
        return cls(ctx, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, ctx: FieldCtx, rows: int, cols: int) -> "MatQ":
        return cls(ctx, np.zeros((rows, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def entries(self) -> list[FieldElem]:
        return [FieldElem(self.ctx, int(c)) for c in self.data.ravel()]

    @property
    def T(self) -> "MatQ":
        return MatQ(self.ctx, self.data.T)

    @cached_property
    def rank(self) -> int:
        return len(_rref_array(self.ctx, self.data)[1])

    def _same_field(self, other: "MatQ") -> None:
        if other.ctx != self.ctx:
            raise FieldMismatch(f"F_{self.ctx.spec} vs F_{other.ctx.spec}")

    def __matmul__(self, other: "MatQ") -> "MatQ":
        self._same_field(other)
        return MatQ(self.ctx, mat_mul(self.ctx, self.data, other.data))

    def __add__(self, other: "MatQ") -> "MatQ":
        self._same_field(other)
        return MatQ(self.ctx, self.ctx.add(self.data, other.data))

    def __sub__(self, other: "MatQ") -> "MatQ":
        self._same_field(other)
        return MatQ(self.ctx, self.ctx.sub(self.data, other.data))

    def vstack(self, other: "MatQ") -> "MatQ":
        self._same_field(other)
        if other.cols != self.cols:
            raise DimensionMismatch(f"Cannot stack {self.shape} on {other.shape}")
        return MatQ(self.ctx, np.vstack([self.data, other.data]))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatQ)
            and other.ctx == self.ctx
            and other.shape == self.shape
            and np.array_equal(other.data, self.data)
        )

    def __hash__(self) -> int:
        return hash((self.ctx, self.shape, self.data.tobytes()))

    def to_text(self) -> str:
        """Header "p^e rows cols" then one line of codes per row."""
        lines = [f"{self.ctx.spec} {self.rows} {self.cols}"]
        lines.extend(" ".join(str(int(c)) for c in row) for row in self.data)
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"MatQ(F_{self.ctx.spec}, {self.data.tolist()})"


def rref(M: MatQ) -> tuple[MatQ, int]:
    """Reduced row-echelon form and rank."""
    R, pivots = _rref_array(M.ctx, M.data)
    return MatQ(M.ctx, R), len(pivots)


def null_space(M: MatQ) -> MatQ:
    """Rows spanning {x : M x^T = 0}."""
    ctx = M.ctx
    R, pivots = _rref_array(ctx, M.data)
    pivot_set = set(pivots)
    free = [j for j in range(M.cols) if j not in pivot_set]
    out = np.zeros((len(free), M.cols), dtype=np.int64)
    for r, f in enumerate(free):
        out[r, f] = 1
        for i, p in enumerate(pivots):
            out[r, p] = ctx.neg(int(R[i, f]))
    return MatQ(ctx, out)


@dataclass(frozen=True)
class Subspace:
    """Subspace of F_q^ambient with an RREF basis (one row per dimension)."""

    ctx: FieldCtx
    ambient: int
    basis: MatQ

    def __post_init__(self):
        if self.basis.ctx != self.ctx:
            raise FieldMismatch(f"Basis over F_{self.basis.ctx.spec}, subspace over F_{self.ctx.spec}")
        if self.basis.cols != self.ambient:
            raise DimensionMismatch(f"Basis has {self.basis.cols} columns, ambient is {self.ambient}")

    @classmethod
    def span(cls, ctx: FieldCtx, rows, ambient: int | None = None) -> "Subspace":
        arr = np.asarray(rows, dtype=np.int64)
        if arr.size == 0:
            if ambient is None:
                raise BadParameters("Ambient dimension needed to span an empty set")
            arr = np.zeros((0, ambient), dtype=np.int64)
        if arr.ndim == 1:
            arr = arr[None, :]
        R, pivots = _rref_array(ctx, arr)
        return cls(ctx, arr.shape[1], MatQ(ctx, R[: len(pivots)]))

    @classmethod
    def from_matrix(cls, M: MatQ) -> "Subspace":
        return cls.span(M.ctx, M.data, M.cols)

    @classmethod
    def from_rref(cls, M: MatQ) -> "Subspace":
        """Wrap a matrix that must already be a full-rank RREF basis."""
        R, pivots = _rref_array(M.ctx, M.data)
        if len(pivots) != M.rows or not np.array_equal(R, M.data):
            raise FormatError("Subspace basis is not in full-rank reduced row-echelon form")
        return cls(M.ctx, M.cols, M)

    @classmethod
    def zero(cls, ctx: FieldCtx, n: int) -> "Subspace":
        return cls(ctx, n, MatQ.zeros(ctx, 0, n))

    @classmethod
    def full(cls, ctx: FieldCtx, n: int) -> "Subspace":
        return cls(ctx, n, MatQ.identity(ctx, n))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(int(np.nonzero(row)[0][0]) for row in self.basis.data)

    @cached_property
    def sort_key(self) -> tuple:
        """(pivot columns, free entries row-major): the enumeration order."""
        pivot_set = set(self.pivots)
        free = tuple(
            int(self.basis.data[i, j])
            for i, p in enumerate(self.pivots)
            for j in range(p + 1, self.ambient)
            if j not in pivot_set
        )
        return (self.pivots, free)

    @property
    def key(self) -> bytes:
        return self.basis.data.tobytes()

    def _check(self, other: "Subspace") -> None:
        if other.ctx != self.ctx or other.ambient != self.ambient:
            raise AmbientMismatch(f"F_{self.ctx.spec}^{self.ambient} vs F_{other.ctx.spec}^{other.ambient}")

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        if other.dim > self.dim:
            return False
        return self.basis.vstack(other.basis).rank == self.dim

    def contains_vector(self, v) -> bool:
        row = MatQ(self.ctx, np.asarray(v, dtype=np.int64)[None, :])
        return self.basis.vstack(row).rank == self.dim

    def points(self) -> list["Subspace"]:
        """The 1-subspaces of this subspace, in enumeration order of their coordinates."""
        if self.dim == 0:
            return []
        # A product of RREF matrices with the right shapes is again RREF
        return [
            Subspace(self.ctx, self.ambient, MatQ(self.ctx, mat_mul(self.ctx, coords.basis.data, self.basis.data)))
            for coords in _iter_subspaces(self.ctx, self.dim, 1)
        ]

    def to_text(self) -> str:
        return self.basis.to_text()

    def __repr__(self) -> str:
        return f"Subspace(F_{self.ctx.spec}^{self.ambient}, dim={self.dim}, {self.basis.data.tolist()})"


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def projective_count(r: int, n: int, q: int) -> int:
    """Number of projective r-flats of PG(n, q)."""
    return gaussian_binomial(n + 1, r + 1, q)


def _iter_subspaces(ctx: FieldCtx, n: int, k: int):
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivot_set]
        template = np.zeros((k, n), dtype=np.int64)
        template[list(range(k)), list(pivots)] = 1
        free_rows = [i for i, _ in free]
        free_cols = [j for _, j in free]
        for values in itertools.product(range(ctx.q), repeat=len(free)):
            arr = template.copy()
            if free:
                arr[free_rows, free_cols] = values
            yield Subspace(ctx, n, MatQ(ctx, arr))


def enumerate_subspaces(ctx: FieldCtx, n: int, k: int, budget: int | None = None):
    """All k-subspaces of F_q^n, by pivot set then free entries.

    Raises:
        SizeExceeded: when the Grassmannian is larger than the budget
    """
    if not 0 <= k <= n:
        raise BadParameters(f"Need 0 <= k <= n, got k={k}, n={n}")
    total = gaussian_binomial(n, k, ctx.q)
    budget = budget or Config.ENUM_BUDGET
    if total > budget:
        raise SizeExceeded(f"Grassmannian G({k},{n}) over F_{ctx.spec} has {total} members, budget {budget}")
    logger.debug(f"Enumerating {total} subspaces G({k},{n}) over F_{ctx.spec}")
    return _iter_subspaces(ctx, n, k)


def subspace_sum(U: Subspace, W: Subspace) -> Subspace:
    U._check(W)
    return Subspace.from_matrix(U.basis.vstack(W.basis))


def subspace_intersect(U: Subspace, W: Subspace) -> Subspace:
    U._check(W)
    if U.dim == 0 or W.dim == 0:
        return Subspace.zero(U.ctx, U.ambient)
    # Left kernel of [U; W]: x U = -y W picks out the common vectors
    kernel = null_space(U.basis.vstack(W.basis).T)
    if kernel.rows == 0:
        return Subspace.zero(U.ctx, U.ambient)
    coords = MatQ(U.ctx, kernel.data[:, : U.dim])
    return Subspace.from_matrix(coords @ U.basis)


def subspace_distance(U: Subspace, W: Subspace) -> int:
    """dim(U + W) - dim(U n W)."""
    return subspace_sum(U, W).dim - subspace_intersect(U, W).dim


def dual_subspace(U: Subspace) -> Subspace:
    """Orthogonal complement for the standard bilinear form."""
    return Subspace.from_matrix(null_space(U.basis)) if U.dim else Subspace.full(U.ctx, U.ambient)


def subspace_image(U: Subspace, A: MatQ) -> Subspace:
    """Right action U -> U A, re-canonicalised."""
    if A.rows != U.ambient:
        raise DimensionMismatch(f"Cannot act on F_q^{U.ambient} with a {A.rows}x{A.cols} matrix")
    return Subspace.from_matrix(U.basis @ A)
