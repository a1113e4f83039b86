import numpy as np
import pytest

from qdesign.errors import AmbientMismatch, FormatError, SizeExceeded
from qdesign.field import field_create, field_from_order
from qdesign.subspace import (
    MatQ,
    Subspace,
    dual_subspace,
    enumerate_subspaces,
    gaussian_binomial,
    null_space,
    projective_count,
    rref,
    subspace_distance,
    subspace_image,
    subspace_intersect,
    subspace_sum,
)


@pytest.fixture
def F2():
    return field_create(2)


@pytest.fixture
def F3():
    return field_create(3)


def test_gaussian_binomial_values():
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(6, 3, 2) == 1395
    assert gaussian_binomial(4, 0, 3) == 1
    assert gaussian_binomial(4, 5, 3) == 0
    assert projective_count(0, 2, 3) == 13


def test_gaussian_binomial_symmetry():
    for n in range(1, 7):
        for k in range(n + 1):
            assert gaussian_binomial(n, k, 3) == gaussian_binomial(n, n - k, 3)


@pytest.mark.parametrize("q,n,k", [(2, 4, 2), (3, 3, 1), (4, 3, 2), (2, 5, 3)])
def test_enumeration_matches_count(q, n, k):
    """Enumeration yields each subspace once and as many as the Gaussian binomial."""
    ctx = field_from_order(q)
    subs = list(enumerate_subspaces(ctx, n, k))

    assert len(subs) == gaussian_binomial(n, k, q)
    assert len({S.key for S in subs}) == len(subs)
    assert all(S.dim == k for S in subs)
    assert [S.sort_key for S in subs] == sorted(S.sort_key for S in subs)


def test_enumeration_budget(F2):
    with pytest.raises(SizeExceeded):
        enumerate_subspaces(F2, 6, 3, budget=100)


def test_span_is_canonical(F3):
    """Different spanning sets of the same subspace give equal objects."""
    U = Subspace.span(F3, [[1, 2, 0], [0, 1, 1]])
    W = Subspace.span(F3, [[1, 0, 1], [2, 1, 0], [0, 2, 2]])

    assert U == W
    assert U.key == W.key
    assert U.dim == 2


def test_rref_and_null_space(F3):
    M = MatQ(F3, [[1, 2, 0], [2, 1, 0]])

    R, rank = rref(M)
    N = null_space(M)

    assert rank == 1
    np.testing.assert_array_equal(R.data, [[1, 2, 0], [0, 0, 0]])
    assert N.rows == 2
    assert not np.any((M @ N.T).data)


def test_from_rref_rejects_non_canonical_basis(F2):
    with pytest.raises(FormatError):
        Subspace.from_rref(MatQ(F2, [[1, 1, 0], [1, 0, 1]]))


def test_containment(F2):
    U = Subspace.span(F2, [[1, 0, 0, 0], [0, 1, 0, 0]])
    P = Subspace.span(F2, [[1, 1, 0, 0]])

    assert U.contains(P)
    assert not P.contains(U)
    assert U.contains_vector([1, 1, 0, 0])
    assert not U.contains_vector([0, 0, 1, 0])


def test_points_of_a_plane(F3):
    """A 2-subspace of F_3^3 has q + 1 points, all inside it."""
    U = Subspace.span(F3, [[1, 0, 2], [0, 1, 1]])
    points = U.points()

    assert len(points) == 4
    assert all(U.contains(P) for P in points)
    assert len({P.key for P in points}) == 4


def test_sum_intersection_and_distance(F2):
    U = Subspace.span(F2, [[1, 0, 0, 0], [0, 1, 0, 0]])
    W = Subspace.span(F2, [[0, 1, 0, 0], [0, 0, 1, 0]])

    assert subspace_sum(U, W).dim == 3
    assert subspace_intersect(U, W) == Subspace.span(F2, [[0, 1, 0, 0]])
    assert subspace_distance(U, W) == 2
    assert subspace_distance(U, U) == 0


def test_disjoint_intersection(F2):
    U = Subspace.span(F2, [[1, 0, 0, 0], [0, 1, 0, 0]])
    W = Subspace.span(F2, [[0, 0, 1, 0], [0, 0, 0, 1]])

    assert subspace_intersect(U, W).dim == 0
    assert subspace_distance(U, W) == 4


def test_ambient_mismatch(F2):
    with pytest.raises(AmbientMismatch):
        subspace_sum(Subspace.full(F2, 3), Subspace.full(F2, 4))


def test_dual_subspace(F3):
    U = Subspace.span(F3, [[1, 1, 1]])
    D = dual_subspace(U)

    assert D.dim == 2
    assert not np.any((U.basis @ D.basis.T).data)
    assert dual_subspace(D) == U
    assert dual_subspace(Subspace.zero(F3, 3)) == Subspace.full(F3, 3)


def test_subspace_image_under_permutation(F2):
    swap = MatQ(F2, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    U = Subspace.span(F2, [[1, 0, 0]])

    assert subspace_image(U, swap) == Subspace.span(F2, [[0, 1, 0]])


def test_matrix_text(F3):
    M = MatQ(F3, [[1, 2], [0, 1]])

    assert M.to_text() == "3^1 2 2\n1 2\n0 1"


@pytest.fixture(scope="module")
def all_of_f2_4():
    F2 = field_create(2)
    subs = [S for k in range(5) for S in enumerate_subspaces(F2, 4, k)]
    dist = np.zeros((len(subs), len(subs)), dtype=np.int64)
    for i, U in enumerate(subs):
        for j in range(i, len(subs)):
            dist[i, j] = dist[j, i] = subspace_distance(U, subs[j])
    return subs, dist


def test_every_subspace_of_f2_4_is_listed(all_of_f2_4):
    subs, _ = all_of_f2_4

    assert len(subs) == 1 + 15 + 35 + 15 + 1


def test_subspace_distance_is_a_metric_on_f2_4(all_of_f2_4):
    """Exhaustive: zero exactly on the diagonal, symmetric, triangle inequality on every triple."""
    subs, dist = all_of_f2_4

    assert np.array_equal(dist == 0, np.eye(len(subs), dtype=bool))
    assert np.array_equal(dist, dist.T)
    assert np.all(dist[:, None, :] <= dist[:, :, None] + dist[None, :, :])


def test_duality_preserves_distance_on_f2_4(all_of_f2_4):
    subs, dist = all_of_f2_4
    duals = [dual_subspace(U) for U in subs]
    position = {U.key: i for i, U in enumerate(subs)}

    for i, U in enumerate(subs):
        assert duals[i].dim == 4 - U.dim
        assert dual_subspace(duals[i]) == U
    perm = [position[D.key] for D in duals]
    assert np.array_equal(dist[np.ix_(perm, perm)], dist)


def random_subspace(rng, ctx, n):
    rows = rng.integers(0, ctx.q, (int(rng.integers(0, n + 1)), n))
    return Subspace.span(ctx, rows.tolist(), n) if len(rows) else Subspace.zero(ctx, n)


@pytest.mark.parametrize("seed", range(200))
def test_subspace_distance_metric_on_random_f3_4_triples(seed):
    rng = np.random.default_rng(seed)
    F3 = field_create(3)
    U, V, W = (random_subspace(rng, F3, 4) for _ in range(3))

    assert subspace_distance(U, W) <= subspace_distance(U, V) + subspace_distance(V, W)
    assert subspace_distance(U, V) == subspace_distance(V, U)
    assert (subspace_distance(U, V) == 0) == (U == V)
    assert subspace_distance(U, V) == U.dim + V.dim - 2 * subspace_intersect(U, V).dim


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", range(1, 6))
def test_enumeration_count_is_gaussian_binomial_for_every_k(q, n):
    ctx = field_from_order(q)

    for k in range(n + 1):
        assert sum(1 for _ in enumerate_subspaces(ctx, n, k)) == gaussian_binomial(n, k, q)
