"""
Group actions

Invertible matrices over F_q and abstract cyclic groups, groups given by generators
with breadth-first closure, orbits on Grassmannians, Singer cycles and tori,
splitting subspaces, PGL(2,q) element types and Cayley graphs.

Group elements share a small protocol: `*` for the group law, `inverse()`, `one()`
and hashability, so closure, orders and Cayley graphs work for any of them.
"""

import logging
from collections import deque
from dataclasses import dataclass, replace
from itertools import product

import numpy as np
from sympy import factorint

from qdesign.config import Config
from qdesign.errors import (
    BadParameters,
    BudgetExceeded,
    DegenerateField,
    DimensionMismatch,
    FieldMismatch,
    NotAbelian,
    NotInvertible,
    NotSubset,
    NotTwoByTwo,
    SizeExceeded,
    VerificationMismatch,
)
from qdesign.field import FieldCtx, field_from_order, primitive_element
from qdesign.models import Pgl2Class
from qdesign.poly import Poly, irreducible_polys, is_primitive_poly
from qdesign.subspace import MatQ, Subspace, _rref_array, enumerate_subspaces, mat_mul, null_space, subspace_image

logger = logging.getLogger(__name__)


def _det(ctx: FieldCtx, a: np.ndarray) -> int:
    A = np.array(a, dtype=np.int64)
    det = 1
    for c in range(A.shape[0]):
        nonzero = np.nonzero(A[c:, c])[0]
        if nonzero.size == 0:
            return 0
        i = c + int(nonzero[0])
        if i != c:
            A[[c, i]] = A[[i, c]]
            det = ctx.neg(det)
        pivot = int(A[c, c])
        det = ctx.mul(det, pivot)
        rows = np.nonzero(A[c + 1 :, c])[0] + c + 1
        if rows.size:
            factors = ctx.mul(A[rows, c], ctx.inv(pivot))
            A[rows] = ctx.sub(A[rows], ctx.mul(factors[:, None], A[c][None, :]))
    return det


@dataclass(frozen=True)
class GLElem:
    """An invertible n x n matrix acting on row vectors from the right."""

    matrix: MatQ

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols:
            raise DimensionMismatch(f"GL element must be square, got {self.matrix.shape}")
        if _det(self.matrix.ctx, self.matrix.data) == 0:
            raise NotInvertible("Matrix has zero determinant")

    @classmethod
    def _trusted(cls, matrix: MatQ) -> "GLElem":
        obj = object.__new__(cls)
        object.__setattr__(obj, "matrix", matrix)
        return obj

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "GLElem":
        return cls._trusted(MatQ.identity(ctx, n))

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows) -> "GLElem":
        return cls(MatQ(ctx, rows))

    @classmethod
    def diagonal(cls, ctx: FieldCtx, codes) -> "GLElem":
        return cls(MatQ(ctx, np.diag(np.asarray(codes, dtype=np.int64))))

    @property
    def ctx(self) -> FieldCtx:
        return self.matrix.ctx

    @property
    def n(self) -> int:
        return self.matrix.rows

    def one(self) -> "GLElem":
        return GLElem.identity(self.ctx, self.n)

    def __mul__(self, other: "GLElem") -> "GLElem":
        return GLElem._trusted(self.matrix @ other.matrix)

    def inverse(self) -> "GLElem":
        n = self.n
        augmented = np.hstack([self.matrix.data, np.eye(n, dtype=np.int64)])
        R, _ = _rref_array(self.ctx, augmented)
        return GLElem._trusted(MatQ(self.ctx, R[:, n:]))

    def power(self, m: int) -> "GLElem":
        base = self if m >= 0 else self.inverse()
        m = abs(m)
        result = self.one()
        while m:
            if m & 1:
                result = result * base
            base = base * base
            m >>= 1
        return result

    __pow__ = power

    def det(self) -> int:
        return _det(self.ctx, self.matrix.data)

    def has_order(self, order: int) -> bool:
        """True iff this element's multiplicative order is exactly `order`."""
        one = self.one()
        if self.power(order) != one:
            return False
        return all(self.power(order // r) != one for r in factorint(order))

    def to_text(self) -> str:
        return self.matrix.to_text()

    def __repr__(self) -> str:
        return f"GLElem(F_{self.ctx.spec}, {self.matrix.data.tolist()})"


@dataclass(frozen=True)
class CyclicElem:
    """Residue r of Z_N; the group law is addition."""

    N: int
    r: int = 0

    def __post_init__(self):
        if self.N < 1 or not 0 <= self.r < self.N:
            raise BadParameters(f"Invalid element {self.r} of Z_{self.N}")

    def one(self) -> "CyclicElem":
        return CyclicElem(self.N, 0)

    def __mul__(self, other: "CyclicElem") -> "CyclicElem":
        return CyclicElem(self.N, (self.r + other.r) % self.N)

    __add__ = __mul__

    def inverse(self) -> "CyclicElem":
        return CyclicElem(self.N, (-self.r) % self.N)

    def __repr__(self) -> str:
        return f"{self.r} mod {self.N}"


def permutation_matrix(ctx: FieldCtx, perm) -> GLElem:
    """Matrix P with (c P)_j = c_{perm[j]}."""
    perm = [int(i) for i in perm]
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise BadParameters(f"Not a permutation of 0..{n - 1}: {perm}")
    P = np.zeros((n, n), dtype=np.int64)
    P[perm, list(range(n))] = 1
    return GLElem._trusted(MatQ(ctx, P))


def companion_matrix(f: Poly) -> GLElem:
    """Multiplication by x on F_q[x]/(f) in the basis 1, x, ..., x^(n-1), row-vector convention."""
    ctx = f.ctx
    n = f.degree
    f = f.monic()
    M = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        M[i, i + 1] = 1
    M[n - 1, :] = ctx.neg(np.array(f.codes[:n], dtype=np.int64))
    return GLElem(MatQ(ctx, M))


@dataclass(frozen=True)
class GroupSpec:
    """A finite group given by generators, optionally with its materialised elements."""

    generators: tuple
    identity: object
    ctx: FieldCtx | None = None
    n: int | None = None
    elements: tuple | None = None

    @classmethod
    def matrix(cls, ctx: FieldCtx, n: int, generators) -> "GroupSpec":
        generators = tuple(generators)
        for g in generators:
            if g.ctx != ctx:
                raise FieldMismatch(f"Generator over F_{g.ctx.spec}, group over F_{ctx.spec}")
            if g.n != n:
                raise DimensionMismatch(f"Generator of size {g.n} in GL({n})")
        return cls(generators, GLElem.identity(ctx, n), ctx, n)

    @classmethod
    def cyclic(cls, N: int) -> "GroupSpec":
        return cls((CyclicElem(N, 1 % N),), CyclicElem(N, 0))

    @classmethod
    def dihedral(cls, N: int) -> "GroupSpec":
        from qdesign.crypto import DihedralElem

        return cls((DihedralElem(N, 1 % N, 0), DihedralElem(N, 0, 1)), DihedralElem(N, 0, 0))

    @property
    def is_matrix(self) -> bool:
        return self.ctx is not None

    def materialized(self, budget: int | None = None) -> "GroupSpec":
        return replace(self, elements=tuple(group_closure(self, budget)))


def group_closure(spec: GroupSpec, budget: int | None = None) -> list:
    """Every element reachable by right-multiplying generators, in breadth-first order."""
    if spec.elements is not None:
        return list(spec.elements)
    budget = budget or Config.CLOSURE_BUDGET
    seen = {spec.identity}
    order = [spec.identity]
    queue = deque(order)
    while queue:
        g = queue.popleft()
        for s in spec.generators:
            h = g * s
            if h not in seen:
                if len(order) >= budget:
                    raise BudgetExceeded(f"Group closure exceeds {budget} elements")
                seen.add(h)
                order.append(h)
                queue.append(h)
    logger.debug(f"Group closure: {len(order)} elements from {len(spec.generators)} generators")
    return order


def element_order(g, budget: int | None = None) -> int:
    budget = budget or Config.ORDER_BUDGET
    one = g.one()
    current = g
    m = 1
    while current != one:
        current = current * g
        m += 1
        if m > budget:
            raise BudgetExceeded(f"Element order exceeds {budget}")
    return m


def is_abelian(spec: GroupSpec) -> bool:
    gens = spec.generators
    return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1 :])


def orbit_subspaces(spec: GroupSpec, k: int, budget: int | None = None) -> list[list[Subspace]]:
    """Partition the k-subspaces into orbits under U -> U A.

    Each orbit is sorted canonically and the orbits come out ordered by least member.
    """
    if not spec.is_matrix:
        raise BadParameters("Orbits on subspaces need a matrix group")
    seen: set[Subspace] = set()
    orbits = []
    for start in enumerate_subspaces(spec.ctx, spec.n, k, budget):
        if start in seen:
            continue
        seen.add(start)
        orbit = [start]
        queue = deque(orbit)
        while queue:
            W = queue.popleft()
            for g in spec.generators:
                image = subspace_image(W, g.matrix)
                if image not in seen:
                    seen.add(image)
                    orbit.append(image)
                    queue.append(image)
        orbit.sort(key=lambda S: S.sort_key)
        orbits.append(orbit)
    logger.info(f"{len(orbits)} orbits on G({k},{spec.n}) over F_{spec.ctx.spec}")
    return orbits


def singer_cycle(ctx: FieldCtx, n: int) -> GLElem:
    """Companion matrix of the smallest primitive polynomial of degree n over ctx."""
    if n < 1:
        raise BadParameters(f"Need n >= 1, got {n}")
    if ctx.q**n > Config.SINGER_MAX:
        raise SizeExceeded(f"q^n = {ctx.q}^{n} exceeds {Config.SINGER_MAX}")
    f = next(f for f in irreducible_polys(ctx, n) if is_primitive_poly(f))
    T = companion_matrix(f)
    if not T.has_order(ctx.q**n - 1):
        raise VerificationMismatch(f"Companion of {f} does not have order {ctx.q**n - 1}")
    logger.debug(f"Singer cycle of GL({n},{ctx.q}) from {f}")
    return T


def torus_generators(q: int) -> tuple[GLElem, GLElem]:
    """Generators of the split (order q-1) and nonsplit (order q+1) tori of GL(2,q)."""
    ctx = field_from_order(q)
    if q == 2:
        raise DegenerateField("The split torus of GL(2,2) is trivial")
    split = GLElem.diagonal(ctx, [primitive_element(ctx).code, 1])
    nonsplit = singer_cycle(ctx, 2).power(q - 1)
    if not split.has_order(q - 1) or not nonsplit.has_order(q + 1):
        raise VerificationMismatch(f"Torus generator orders wrong for q={q}")
    return split, nonsplit


def is_splitting(W: Subspace, T: GLElem, d: int) -> bool:
    """True iff W + W T + ... + W T^(d-1) is the whole space (and so a direct sum)."""
    n = W.ambient
    if T.n != n:
        raise DimensionMismatch(f"T is {T.n}x{T.n}, ambient is {n}")
    if W.dim * d != n:
        raise DimensionMismatch(f"dim W * d = {W.dim * d} != n = {n}")
    blocks = []
    current = W.basis.data
    for _ in range(d):
        blocks.append(current)
        current = mat_mul(W.ctx, current, T.matrix.data)
    stacked = np.vstack(blocks) if blocks else np.zeros((0, n), dtype=np.int64)
    return len(_rref_array(W.ctx, stacked)[1]) == n


def count_splitting(T: GLElem, r: int, budget: int | None = None) -> int:
    n = T.n
    if r < 1 or n % r:
        raise DimensionMismatch(f"r={r} does not divide n={n}")
    return sum(1 for W in enumerate_subspaces(T.ctx, n, r, budget) if is_splitting(W, T, n // r))


def classify_pgl2(A: GLElem) -> Pgl2Class:
    if A.n != 2:
        raise NotTwoByTwo(f"Expected a 2x2 matrix, got {A.n}x{A.n}")
    ctx = A.ctx
    (a, b), (c, d) = A.matrix.data.tolist()
    if b == 0 and c == 0 and a == d:
        return Pgl2Class.CENTRAL
    char = Poly(ctx, (A.det(), ctx.neg(ctx.add(a, d)), 1))
    roots = int(np.count_nonzero(np.asarray(char(ctx.elements())) == 0))
    if roots == 0:
        return Pgl2Class.NONSPLIT
    if roots == 1:
        return Pgl2Class.UNIPOTENT
    return Pgl2Class.SPLIT


def dihedral_reflection(tau: GLElem) -> GLElem:
    """Smallest involution sigma outside <tau> with sigma tau sigma = tau^-1."""
    if tau.n != 2:
        raise NotTwoByTwo(f"Expected a 2x2 matrix, got {tau.n}x{tau.n}")
    ctx = tau.ctx
    t = tau.matrix.data
    t_inv = tau.inverse().matrix.data
    # Linear map X -> X tau - tau^-1 X on the four entries of X
    columns = []
    for idx in range(4):
        E = np.zeros((2, 2), dtype=np.int64)
        E.flat[idx] = 1
        columns.append(np.asarray(ctx.sub(mat_mul(ctx, E, t), mat_mul(ctx, t_inv, E))).ravel())
    kernel = null_space(MatQ(ctx, np.array(columns).T))
    rotations = set(group_closure(GroupSpec.matrix(ctx, 2, [tau])))
    identity = np.eye(2, dtype=np.int64)
    for coeffs in product(range(ctx.q), repeat=kernel.rows):
        X = mat_mul(ctx, np.array(coeffs, dtype=np.int64).reshape(1, -1), kernel.data).reshape(2, 2)
        if _det(ctx, X) == 0 or not np.array_equal(mat_mul(ctx, X, X), identity):
            continue
        sigma = GLElem(MatQ(ctx, X))
        if sigma not in rotations:
            return sigma
    raise VerificationMismatch("No involution inverts the rotation")


@dataclass(frozen=True)
class Graph:
    """Multigraph on vertices 0..vertex_count-1."""

    vertex_count: int
    directed: bool
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise BadParameters(f"Edge ({u}, {v}) out of range for {self.vertex_count} vertices")
        if self.labels is not None and len(self.labels) != self.vertex_count:
            raise BadParameters("One label per vertex required")

    def adjacency_matrix(self) -> np.ndarray:
        A = np.zeros((self.vertex_count, self.vertex_count), dtype=np.int64)
        for u, v in self.edges:
            A[u, v] += 1
            if not self.directed and u != v:
                A[v, u] += 1
        return A

    def out_degrees(self) -> list[int]:
        return [int(d) for d in self.adjacency_matrix().sum(axis=1)]

    def neighbours(self, v: int) -> list[int]:
        return [int(u) for u in np.nonzero(self.adjacency_matrix()[v])[0]]

    def common_neighbours(self, u: int, v: int) -> int:
        A = (self.adjacency_matrix() > 0).astype(np.int64)
        return int(A[u] @ A[v])

    def is_connected(self) -> bool:
        """Connectivity of the underlying undirected graph."""
        if self.vertex_count == 0:
            return True
        A = self.adjacency_matrix()
        A = (A + A.T) > 0
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in np.nonzero(A[u])[0]:
                if int(v) not in seen:
                    seen.add(int(v))
                    queue.append(int(v))
        return len(seen) == self.vertex_count

    def to_dot(self) -> str:
        kind, arrow = ("digraph", "->") if self.directed else ("graph", "--")
        lines = [f"{kind} G {{"]
        if self.labels is not None:
            lines.extend(f'  {i} [label="{label}"];' for i, label in enumerate(self.labels))
        lines.extend(f"  {u} {arrow} {v};" for u, v in self.edges)
        lines.append("}")
        return "\n".join(lines)

    def summary(self) -> dict:
        A = self.adjacency_matrix()
        return {
            "vertices": self.vertex_count,
            "directed": self.directed,
            "edges": len(self.edges),
            "out_degrees": self.out_degrees(),
            "adjacency": {str(v): [int(u) for u in np.nonzero(A[v])[0]] for v in range(self.vertex_count)},
        }


def cayley_graph(elements: list, connection_set) -> Graph:
    """Directed graph with an edge (e1, e2) whenever e1 e2^-1 lies in the connection set."""
    index = {e: i for i, e in enumerate(elements)}
    connection_set = list(connection_set)
    missing = [s for s in connection_set if s not in index]
    if missing:
        raise NotSubset(f"{len(missing)} connection elements are not group elements")
    edges = []
    for i, e in enumerate(elements):
        for s in connection_set:
            j = index.get(s.inverse() * e)
            if j is None:
                raise NotSubset("Element list is not closed under the group law")
            edges.append((i, j))
    return Graph(len(elements), True, tuple(edges))


def sum_free_check(S, group: GroupSpec) -> bool:
    """True iff no x, y in S have x + y in S."""
    if not is_abelian(group):
        raise NotAbelian("Sum-free check needs an abelian group")
    members = set(S)
    if not members <= set(group_closure(group)):
        raise NotSubset("S is not contained in the group")
    return not any(x * y in members for x in members for y in members)
