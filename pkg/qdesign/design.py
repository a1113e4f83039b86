"""
Designs over finite fields

t-(n,k,lambda;q) designs: verification, the Kramer-Mesner incidence system and its
0/1 backtracking solver, group divisible designs, large sets, the design/graph and
design/constant-weight-code correspondences, PG(2,p) lines, normal rational curves
and arcs, and families of codes read as designs.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, partial
from itertools import combinations
from math import comb, gcd

import numpy as np
from sympy import divisors, isprime

from qdesign.codes import LinearCode, rs_code
from qdesign.config import Config
from qdesign.errors import (
    AmbientMismatch,
    BadDimension,
    BadParameters,
    BudgetExceeded,
    DimensionMismatch,
    MixedParameters,
    NotPrime,
    VerificationMismatch,
)
from qdesign.field import FieldCtx, field_create, field_from_order, primitive_element
from qdesign.groups import GLElem, Graph, GroupSpec, count_splitting, orbit_subspaces
from qdesign.models import CwCodeReport, DesignMode, DesignReport, FamilyReport, GddReport
from qdesign.subspace import Subspace, _rref_array, enumerate_subspaces, gaussian_binomial, mat_mul
from qdesign.utils import map_chunks_sync

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DesignInstance:
    """A set of distinct k-subspaces of F_q^n claimed to form a t-(n,k,lam;q) design."""

    ctx: FieldCtx
    n: int
    t: int
    k: int
    blocks: tuple[Subspace, ...]
    lam: int
    mode: DesignMode = DesignMode.EXACT

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        object.__setattr__(self, "mode", DesignMode(self.mode))
        if not 0 <= self.t <= self.k <= self.n:
            raise BadParameters(f"Need 0 <= t <= k <= n, got t={self.t}, k={self.k}, n={self.n}")
        if self.lam < 1:
            raise BadParameters(f"lambda must be >= 1, got {self.lam}")
        for B in self.blocks:
            if B.ctx != self.ctx or B.ambient != self.n:
                raise AmbientMismatch(f"Block lives in F_{B.ctx.spec}^{B.ambient}")
            if B.dim != self.k:
                raise BadDimension(f"Block of dimension {B.dim} in a design with k={self.k}")
        if len(set(self.blocks)) != len(self.blocks):
            raise BadParameters("Blocks must be distinct")

    @cached_property
    def report(self) -> DesignReport:
        return verify_design(self)


# ----------------------------------------------------------------------
# Coverage counting
# ----------------------------------------------------------------------
def _local_stack(ctx: FieldCtx, k: int, t: int) -> np.ndarray:
    """RREF bases of every t-subspace of F_q^k, shape (L, t, k)."""
    subs = list(enumerate_subspaces(ctx, k, t))
    return np.array([S.basis.data for S in subs], dtype=np.int64).reshape(len(subs), t, k)


def _block_keys(ctx: FieldCtx, local: np.ndarray, block: Subspace) -> list[bytes]:
    # RREF coordinates times an RREF basis is the RREF basis of the image
    images = mat_mul(ctx, local, block.basis.data)
    return [np.ascontiguousarray(img).tobytes() for img in images]


def _count_chunk(ctx: FieldCtx, local: np.ndarray, blocks: list[Subspace]) -> Counter:
    counts = Counter()
    for B in blocks:
        counts.update(_block_keys(ctx, local, B))
    return counts


def coverage(ctx: FieldCtx, t: int, blocks, threads: int | None = None) -> Counter:
    """How many blocks contain each t-subspace, keyed by Subspace.key."""
    blocks = list(blocks)
    if not blocks:
        return Counter()
    local = _local_stack(ctx, blocks[0].dim, t)
    parts = map_chunks_sync(partial(_count_chunk, ctx, local), blocks, threads or Config.DEFAULT_THREADS)
    return sum(parts, Counter())


def _measure(
    ctx: FieldCtx,
    n: int,
    t: int,
    blocks,
    lam: int,
    mode: DesignMode,
    threads: int | None,
    budget: int | None,
) -> DesignReport:
    budget = budget or Config.ENUM_BUDGET
    total = gaussian_binomial(n, t, ctx.q)
    if total > budget:
        raise BudgetExceeded(f"{total} t-subspaces to check, budget {budget}")
    blocks = list(blocks)
    counts = coverage(ctx, t, blocks, threads)
    lam_min = None
    lam_max = 0
    violation = None
    for T in enumerate_subspaces(ctx, n, t, budget):
        c = counts.get(T.key, 0)
        lam_min = c if lam_min is None else min(lam_min, c)
        lam_max = max(lam_max, c)
        bad = c != lam if mode == DesignMode.EXACT else c < lam
        if bad and violation is None:
            violation = T
    return DesignReport(
        ok=violation is None,
        mode=mode,
        lam=lam,
        lam_min=lam_min or 0,
        lam_max=lam_max,
        t_subspaces=total,
        blocks=len(blocks),
        violation=violation,
    )


def verify_design(D: DesignInstance, threads: int | None = None, budget: int | None = None) -> DesignReport:
    """Measure how many blocks contain each t-subspace and compare with lambda."""
    report = _measure(D.ctx, D.n, D.t, D.blocks, D.lam, D.mode, threads, budget)
    logger.info(
        f"{D.t}-({D.n},{D.k},{D.lam};{D.ctx.q}) [{D.mode}]: ok={report.ok} "
        f"lambda in [{report.lam_min}, {report.lam_max}]"
    )
    return report


# ----------------------------------------------------------------------
# Kramer-Mesner
# ----------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class IncidenceSystem:
    """Rows index t-subspace orbits, columns k-subspace orbits (singletons without a group)."""

    ctx: FieldCtx
    n: int
    t: int
    k: int
    row_orbits: tuple[tuple[Subspace, ...], ...]
    col_orbits: tuple[tuple[Subspace, ...], ...]
    matrix: np.ndarray
    group: GroupSpec | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def row_sums(self) -> list[int]:
        return [int(s) for s in self.matrix.sum(axis=1)]


def incidence_matrix(
    ctx: FieldCtx,
    n: int,
    t: int,
    k: int,
    group: GroupSpec | None = None,
    budget: int | None = None,
) -> IncidenceSystem:
    """Containment matrix of t-subspaces in k-subspaces, collapsed to orbits when a group is given.

    With a group, entry (i, j) counts the members of column orbit j that contain the
    least member of row orbit i.
    """
    if t > k:
        raise BadParameters(f"t={t} > k={k}")
    if not 0 <= t <= n or not 0 <= k <= n:
        raise BadParameters(f"Need 0 <= t <= k <= n, got t={t}, k={k}, n={n}")
    budget = budget or Config.ENUM_BUDGET
    if group is None:
        rows = [(T,) for T in enumerate_subspaces(ctx, n, t, budget)]
        cols = [(K,) for K in enumerate_subspaces(ctx, n, k, budget)]
    else:
        if group.ctx != ctx or group.n != n:
            raise AmbientMismatch(f"Group acts on F_{group.ctx.spec}^{group.n}, not F_{ctx.spec}^{n}")
        rows = [tuple(o) for o in orbit_subspaces(group, t, budget)]
        cols = [tuple(o) for o in orbit_subspaces(group, k, budget)]
    if len(rows) * len(cols) > budget:
        raise BudgetExceeded(f"Incidence matrix {len(rows)}x{len(cols)} exceeds {budget}")

    rep_index = {orbit[0].key: i for i, orbit in enumerate(rows)}
    local = _local_stack(ctx, k, t)
    A = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, orbit in enumerate(cols):
        for K in orbit:
            for key in _block_keys(ctx, local, K):
                i = rep_index.get(key)
                if i is not None:
                    A[i, j] += 1
    logger.info(f"Incidence system {A.shape[0]}x{A.shape[1]} for t={t}, k={k}, n={n} over F_{ctx.spec}")
    return IncidenceSystem(ctx, n, t, k, tuple(rows), tuple(cols), A, group)


def expand_solution(system: IncidenceSystem, x) -> list[Subspace]:
    """Blocks selected by a 0/1 column vector."""
    return [K for j, chosen in enumerate(x) if chosen for K in system.col_orbits[j]]


def _zero_one_search(
    A: np.ndarray,
    lam: int,
    exact: bool,
    max_solutions: int,
    node_budget: int,
) -> tuple[list[tuple[int, ...]], int]:
    """Depth-first 0/1 search for A x = lam (or >= lam); returns (solutions, nodes visited)."""
    rows, cols = A.shape
    suffix = np.zeros((rows, cols + 1), dtype=np.int64)
    if cols:
        suffix[:, :cols] = np.cumsum(A[:, ::-1], axis=1)[:, ::-1]

    def feasible(j: int) -> bool:
        if exact and np.any(sums > lam):
            return False
        return not np.any(sums + suffix[:, j] < lam)

    sums = np.zeros(rows, dtype=np.int64)
    choices: list[int] = []
    solutions: list[tuple[int, ...]] = []
    nodes = 0
    j = 0
    while True:
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(f"Search exceeded {node_budget} nodes")
        if feasible(j):
            if j == cols:
                solutions.append(tuple(choices))
                if len(solutions) >= max_solutions:
                    logger.info(f"Stopping at {max_solutions} solutions")
                    break
            else:
                choices.append(0)
                j += 1
                continue
        # Backtrack to the deepest 0 and flip it to 1
        while choices:
            value = choices.pop()
            j -= 1
            if value == 1:
                sums -= A[:, j]
            else:
                choices.append(1)
                sums += A[:, j]
                j += 1
                break
        else:
            break
    return solutions, nodes


def km_solve(
    system: IncidenceSystem,
    lam: int,
    mode: DesignMode = DesignMode.EXACT,
    max_solutions: int | None = None,
    node_budget: int | None = None,
) -> list[tuple[int, ...]]:
    """All 0/1 vectors x with A x = lam (or >= lam), in lexicographic order.

    Depth-first over columns trying 0 before 1. A branch is cut when a row can no
    longer reach lam with the remaining columns, or (exact mode) already exceeds it.
    Every solution is expanded and re-checked with verify_design.
    """
    if lam < 1:
        raise BadParameters(f"lambda must be >= 1, got {lam}")
    mode = DesignMode(mode)
    solutions, nodes = _zero_one_search(
        system.matrix,
        lam,
        mode == DesignMode.EXACT,
        max_solutions or Config.MAX_SOLUTIONS,
        node_budget or Config.SEARCH_NODE_BUDGET,
    )
    logger.info(f"Kramer-Mesner search: {len(solutions)} solutions, {nodes} nodes")

    for x in solutions:
        D = DesignInstance(system.ctx, system.n, system.t, system.k, expand_solution(system, x), lam, mode)
        if not D.report.ok:
            raise VerificationMismatch(f"Solver output {x} fails design verification")
    return solutions


# ----------------------------------------------------------------------
# Designs on a point set
# ----------------------------------------------------------------------
def point_orbits(n: int, size: int, permutations: list[tuple[int, ...]], budget: int | None = None) -> list[tuple]:
    """Orbits of the size-subsets of range(n) under a permutation group given by all its elements.

    Each orbit is a sorted tuple of sorted point tuples; orbits are ordered by their least member.
    """
    budget = budget or Config.ENUM_BUDGET
    total = comb(n, size)
    if total * max(len(permutations), 1) > budget:
        raise BudgetExceeded(f"{total} {size}-subsets under {len(permutations)} permutations exceed {budget}")
    seen = set()
    orbits = []
    for S in combinations(range(n), size):
        if S in seen:
            continue
        orbit = sorted({tuple(sorted(perm[x] for x in S)) for perm in permutations} | {S})
        seen.update(orbit)
        orbits.append(tuple(orbit))
    return orbits


@dataclass(frozen=True, eq=False)
class PointIncidenceSystem:
    """Rows index t-subset orbits, columns k-subset orbits, of a group acting on range(n)."""

    n: int
    t: int
    k: int
    row_orbits: tuple[tuple[tuple[int, ...], ...], ...]
    col_orbits: tuple[tuple[tuple[int, ...], ...], ...]
    matrix: np.ndarray

    def expand(self, x) -> list[tuple[int, ...]]:
        return [B for j, chosen in enumerate(x) if chosen for B in self.col_orbits[j]]


def point_incidence_matrix(
    n: int,
    t: int,
    k: int,
    permutations: list[tuple[int, ...]],
    budget: int | None = None,
) -> PointIncidenceSystem:
    """Entry (i, j) counts the members of column orbit j containing the least member of row orbit i."""
    if not 0 <= t <= k <= n:
        raise BadParameters(f"Need 0 <= t <= k <= n, got t={t}, k={k}, n={n}")
    rows = point_orbits(n, t, permutations, budget)
    cols = point_orbits(n, k, permutations, budget)
    rep_index = {orbit[0]: i for i, orbit in enumerate(rows)}
    A = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, orbit in enumerate(cols):
        for B in orbit:
            for T in combinations(B, t):
                i = rep_index.get(T)
                if i is not None:
                    A[i, j] += 1
    logger.info(f"Point incidence system {A.shape[0]}x{A.shape[1]} for t={t}, k={k}, n={n}")
    return PointIncidenceSystem(n, t, k, tuple(rows), tuple(cols), A)


def verify_point_design(n: int, t: int, blocks, lam: int, budget: int | None = None) -> DesignReport:
    """Measure how many blocks contain each t-subset of range(n) and compare with lambda."""
    budget = budget or Config.ENUM_BUDGET
    total = comb(n, t)
    if total > budget:
        raise BudgetExceeded(f"{total} {t}-subsets to check, budget {budget}")
    blocks = [tuple(sorted(B)) for B in blocks]
    counts = Counter()
    for B in blocks:
        counts.update(combinations(B, t))
    lam_min = None
    lam_max = 0
    violation = None
    for T in combinations(range(n), t):
        c = counts.get(T, 0)
        lam_min = c if lam_min is None else min(lam_min, c)
        lam_max = max(lam_max, c)
        if c != lam and violation is None:
            violation = T
    return DesignReport(
        ok=violation is None,
        mode=DesignMode.EXACT,
        lam=lam,
        lam_min=lam_min or 0,
        lam_max=lam_max,
        t_subspaces=total,
        blocks=len(blocks),
        violation=violation,
    )


def point_km_solve(
    system: PointIncidenceSystem,
    lam: int,
    max_solutions: int | None = None,
    node_budget: int | None = None,
) -> list[tuple[int, ...]]:
    """Exact 0/1 solutions of the point incidence system; each is re-checked with verify_point_design."""
    if lam < 1:
        raise BadParameters(f"lambda must be >= 1, got {lam}")
    solutions, nodes = _zero_one_search(
        system.matrix,
        lam,
        True,
        max_solutions or Config.MAX_SOLUTIONS,
        node_budget or Config.SEARCH_NODE_BUDGET,
    )
    logger.info(f"Point Kramer-Mesner search: {len(solutions)} solutions, {nodes} nodes")
    for x in solutions:
        if not verify_point_design(system.n, system.t, system.expand(x), lam).ok:
            raise VerificationMismatch(f"Solver output {x} fails design verification")
    return solutions


# ----------------------------------------------------------------------
# Classical set systems
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class SetSystem:
    """Points, a partition of them into groups, and blocks."""

    points: tuple
    groups: tuple[tuple, ...]
    blocks: tuple[tuple, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "groups", tuple(tuple(G) for G in self.groups))
        object.__setattr__(self, "blocks", tuple(tuple(A) for A in self.blocks))
        grouped = [x for G in self.groups for x in G]
        if len(grouped) != len(set(grouped)) or set(grouped) != set(self.points):
            raise BadParameters("Groups must partition the point set")
        if len(set(self.points)) != len(self.points):
            raise BadParameters("Points must be distinct")
        known = set(self.points)
        for A in self.blocks:
            if not set(A) <= known:
                raise BadParameters(f"Block {A} uses unknown points")


def verify_gdd(S: SetSystem) -> GddReport:
    """Check |A n G| <= 1 for all blocks and groups, and that cross-group pairs are covered once."""
    group_of = {x: gi for gi, G in enumerate(S.groups) for x in G}
    for bi, A in enumerate(S.blocks):
        hits = Counter(group_of[x] for x in A)
        for gi, c in sorted(hits.items()):
            if c > 1:
                return GddReport(False, f"block {bi} meets group {gi} in {c} points", tuple(A))

    pair_counts = Counter()
    for A in S.blocks:
        pair_counts.update(frozenset(pair) for pair in combinations(set(A), 2))
    for a, b in combinations(S.points, 2):
        if group_of[a] == group_of[b]:
            continue
        c = pair_counts[frozenset((a, b))]
        if c != 1:
            detail = "uncovered" if c == 0 else f"covered {c} times"
            return GddReport(False, f"pair ({a}, {b}) {detail}", (a, b))
    return GddReport(True)


def large_set_check(designs: list[DesignInstance], budget: int | None = None) -> bool:
    """True iff the designs partition all k-subspaces and each one verifies."""
    if not designs:
        return False
    first = designs[0]
    params = (first.ctx, first.n, first.k, first.t)
    for D in designs:
        if (D.ctx, D.n, D.k, D.t) != params:
            raise MixedParameters("Large set members must share field, n, k and t")
    blocks = [B for D in designs for B in D.blocks]
    if len(set(blocks)) != len(blocks):
        logger.info("Large set check: designs share a block")
        return False
    if len(blocks) != gaussian_binomial(first.n, first.k, first.ctx.q):
        logger.info("Large set check: union is not the whole Grassmannian")
        return False
    return all(verify_design(D, budget=budget).ok for D in designs)


# ----------------------------------------------------------------------
# Graphs and constant weight codes
# ----------------------------------------------------------------------
def _point_index(ctx: FieldCtx, n: int, budget: int | None) -> dict[bytes, int]:
    return {P.key: i for i, P in enumerate(enumerate_subspaces(ctx, n, 1, budget))}


def design_to_graph(D: DesignInstance, budget: int | None = None) -> tuple[Graph, dict]:
    """Point graph: 1-subspaces adjacent when some block contains both."""
    if not verify_design(D, budget=budget).ok:
        raise BadParameters("Design does not verify; refusing to build its graph")
    index = _point_index(D.ctx, D.n, budget)
    edges = set()
    for B in D.blocks:
        ids = sorted(index[P.key] for P in B.points())
        edges.update(combinations(ids, 2))
    graph = Graph(len(index), False, tuple(sorted(edges)))
    degrees = graph.out_degrees()
    regular = len(set(degrees)) <= 1
    return graph, {"regular": regular, "degree": degrees[0] if regular and degrees else None}


def two_design_graph_check(G: Graph, lam: int) -> bool:
    """Regular, and any two distinct vertices have exactly lam common neighbours."""
    A = G.adjacency_matrix() > 0
    if G.directed:
        A = A | A.T
    A = A.astype(np.int64)
    np.fill_diagonal(A, 0)
    degrees = A.sum(axis=1)
    if len(set(degrees.tolist())) > 1:
        return False
    common = A @ A
    off_diagonal = ~np.eye(G.vertex_count, dtype=bool)
    return bool(np.all(common[off_diagonal] == lam))


def design_to_cw_code(D: DesignInstance, budget: int | None = None) -> tuple[CwCodeReport, np.ndarray]:
    """Block incidence vectors over the points, read as a binary constant weight code."""
    index = _point_index(D.ctx, D.n, budget)
    V = np.zeros((len(D.blocks), len(index)), dtype=np.int64)
    for i, B in enumerate(D.blocks):
        for P in B.points():
            V[i, index[P.key]] = 1
    weights = V.sum(axis=1)
    constant = len(set(weights.tolist())) == 1
    weight = int(weights[0]) if constant else None
    s = d = matches = None
    if len(D.blocks) >= 2:
        inter = V @ V.T
        upper = np.triu_indices(len(D.blocks), 1)
        s = int(inter[upper].max())
        distances = weights[:, None] + weights[None, :] - 2 * inter
        d = int(distances[upper].min())
        matches = constant and d == 2 * (weight - s)
    report = CwCodeReport(
        length=len(index),
        blocks=len(D.blocks),
        constant_weight=constant,
        weight=weight,
        max_intersection=s,
        min_distance=d,
        distance_matches=matches,
    )
    return report, V


# ----------------------------------------------------------------------
# Projective planes and arcs
# ----------------------------------------------------------------------
def to_set_system(D: DesignInstance, budget: int | None = None) -> SetSystem:
    """Points are the 1-subspaces (numbered in enumeration order), each its own group."""
    index = _point_index(D.ctx, D.n, budget)
    blocks = [tuple(sorted(index[P.key] for P in B.points())) for B in D.blocks]
    points = tuple(range(len(index)))
    return SetSystem(points, tuple((x,) for x in points), tuple(blocks))


def pg2_line_design(p: int, budget: int | None = None) -> DesignInstance:
    """Lines of PG(2,p) as 2-subspaces of F_p^3; any two points lie on exactly one line."""
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    ctx = field_create(p, 1)
    blocks = tuple(enumerate_subspaces(ctx, 3, 2, budget))
    D = DesignInstance(ctx, 3, 2, 2, blocks, 1)
    if not D.report.ok or not verify_gdd(to_set_system(D, budget)).ok:
        raise VerificationMismatch(f"PG(2,{p}) lines do not form a 2-design")
    return D


def nrc_points(ctx: FieldCtx, n: int) -> list[Subspace]:
    """(1, x, ..., x^n) for x in F_q, then the point at infinity (0, ..., 0, 1)."""
    if n < 1:
        raise BadParameters(f"Need n >= 1, got {n}")
    points = [Subspace.span(ctx, [[ctx.pow(x, i) for i in range(n + 1)]]) for x in range(ctx.q)]
    points.append(Subspace.span(ctx, [[0] * n + [1]]))
    return points


def arc_check(points: list[Subspace], s: int, budget: int | None = None) -> bool:
    """True iff every min(s, |points|) of the points are linearly independent."""
    if not points:
        return True
    ctx = points[0].ctx
    ambient = points[0].ambient
    if any(P.dim != 1 or P.ambient != ambient for P in points):
        raise BadDimension("Arc points must be 1-subspaces of a common space")
    if s > ambient:
        raise BadParameters(f"s={s} exceeds the vector dimension {ambient}")
    m = min(s, len(points))
    budget = budget or Config.ARC_BUDGET
    if comb(len(points), m) > budget:
        raise BudgetExceeded(f"{comb(len(points), m)} subsets to test, budget {budget}")
    vectors = np.array([P.basis.data[0] for P in points], dtype=np.int64)
    for subset in combinations(range(len(points)), m):
        if len(_rref_array(ctx, vectors[list(subset)])[1]) < m:
            return False
    return True


def kr_arc_parameters(points: list[Subspace]) -> tuple[int, int]:
    """(k, r) for a point set of PG(2,q): k points, at most r on any line."""
    if not points:
        return 0, 0
    ctx = points[0].ctx
    if points[0].ambient != 3:
        raise DimensionMismatch("(k;r)-arcs live in PG(2,q), i.e. F_q^3")
    r = max(sum(1 for P in points if L.contains(P)) for L in enumerate_subspaces(ctx, 3, 2))
    return len(points), r


# ----------------------------------------------------------------------
# Code families
# ----------------------------------------------------------------------
def verify_code_family_design(
    codes: list[LinearCode],
    t: int,
    mode: DesignMode = DesignMode.EXACT,
    alpha: GLElem | None = None,
    threads: int | None = None,
    budget: int | None = None,
) -> FamilyReport:
    """Treat each distinct code as a k-subspace block and measure t-subspace coverage."""
    if not codes:
        raise BadParameters("Empty code family")
    mode = DesignMode(mode)
    first = codes[0]
    if any(C.ctx != first.ctx or C.n != first.n for C in codes):
        raise MixedParameters("Codes differ in field or length")
    if any(C.k != first.k for C in codes):
        raise MixedParameters("Codes differ in dimension")
    if t > first.k:
        raise BadParameters(f"t={t} exceeds the code dimension {first.k}")

    blocks = list(dict.fromkeys(C.subspace for C in codes))
    report = _measure(first.ctx, first.n, t, blocks, 1, mode, threads, budget)
    if mode == DesignMode.EXACT:
        is_design = report.lam_min == report.lam_max >= 1
    else:
        is_design = report.lam_min >= 1
    splitting = None
    if alpha is not None and first.k >= 1 and first.n % first.k == 0:
        splitting = count_splitting(alpha, first.k, budget)
    return FamilyReport(
        codes=len(codes),
        distinct_blocks=len(blocks),
        n=first.n,
        k=first.k,
        t=t,
        mode=mode,
        lam_min=report.lam_min,
        lam_max=report.lam_max,
        is_design=is_design,
        splitting_count=splitting,
    )


def rs_family_design(q: int, r: int | None = None, t: int = 1, budget: int | None = None) -> dict:
    """The family of RS codes of length q - 1, one per generator of F_q^*, read as a design.

    Generator gamma orders the evaluation points 1, gamma, ..., gamma^(q-2); the m =
    phi(q - 1) codes of dimension r (default the largest proper divisor of q - 1) are
    the blocks. Their t-subspace coverage is measured, and the rank over Q of the
    block/t-subspace incidence matrix is compared with the claimed window
    ceil((q + 1) / r) <= rank <= floor((q - 1) / 2).
    """
    ctx = field_from_order(q)
    n = q - 1
    if n < 2:
        raise BadParameters(f"Need q >= 3, got {q}")
    r = r or divisors(n)[-2]
    if not 1 <= r <= n:
        raise BadDimension(f"Need 1 <= r <= {n}, got {r}")
    alpha = primitive_element(ctx)
    generators = [alpha**j for j in range(1, n) if gcd(j, n) == 1]
    codes = [rs_code(ctx, [(g**i).code for i in range(n)], r) for g in generators]
    family = verify_code_family_design(codes, t, budget=budget)

    blocks = list(dict.fromkeys(C.subspace for C in codes))
    index = {T.key: i for i, T in enumerate(enumerate_subspaces(ctx, n, t, budget))}
    local = _local_stack(ctx, r, t)
    A = np.zeros((len(blocks), len(index)), dtype=np.int64)
    for b, B in enumerate(blocks):
        for key in _block_keys(ctx, local, B):
            A[b, index[key]] = 1
    rank = int(np.linalg.matrix_rank(A))
    lower, upper = -(-(q + 1) // r), (q - 1) // 2
    logger.info(f"RS family over F_{q}: {len(codes)} codes, {len(blocks)} blocks, rank {rank} vs [{lower}, {upper}]")
    return {
        "q": q,
        "n": n,
        "r": r,
        "t": t,
        "m": len(generators),
        "generators": [g.code for g in generators],
        "family": family.to_dict(),
        "incidence_shape": list(A.shape),
        "rank": rank,
        "rank_bounds": [lower, upper],
        "bound_holds": lower <= rank <= upper,
        "ok": family.is_design and lower <= rank <= upper,
    }
