from itertools import product

import numpy as np
import pytest

from qdesign.codes import (
    LinearCode,
    code_action,
    code_pair_distance,
    count_cyclic_codes,
    coset_leader,
    cyclic_code,
    dual_code,
    goppa_code,
    is_reversible,
    iter_codewords,
    min_distance,
    quasi_cyclic_index,
    reversal_permutation,
    rs_code,
    standard_array,
    weight_distribution,
)
from qdesign.errors import (
    BadDimension,
    DuplicatePoints,
    FormatError,
    NotADivisor,
    RootInLocatorSet,
    UnsupportedSubfield,
)
from qdesign.field import field_create, field_from_order
from qdesign.poly import Poly
from qdesign.subspace import MatQ


@pytest.fixture
def F2():
    return field_create(2)


@pytest.fixture
def hamming(F2):
    """The [7,4,3] cyclic Hamming code generated by x^3 + x + 1."""
    return cyclic_code(F2, 7, Poly(F2, [1, 1, 0, 1]))


@pytest.fixture
def repetition(F2):
    return LinearCode.from_rows(F2, [[1, 1, 1]])


def test_generator_must_be_rref(F2):
    with pytest.raises(FormatError):
        LinearCode(F2, 3, 2, MatQ(F2, [[1, 1, 0], [1, 0, 1]]))


def test_hamming_parameters(hamming):
    assert (hamming.n, hamming.k) == (7, 4)
    assert min_distance(hamming) == 3
    assert hamming.label() == "[7,4,3]_2"
    assert weight_distribution(hamming) == [1, 0, 0, 7, 7, 0, 0, 1]


def test_min_distance_independent_of_threads(hamming):
    assert min_distance(hamming, threads=2) == min_distance(hamming, threads=1)


def test_zero_code_has_no_distance(F2):
    zero = LinearCode.from_rows(F2, np.zeros((0, 4), dtype=np.int64), 4)

    with pytest.raises(BadDimension):
        min_distance(zero)
    assert zero.label() == "[4,0]_2"


def test_codewords_are_in_the_code(hamming):
    words = np.vstack(list(iter_codewords(hamming)))

    assert words.shape == (16, 7)
    assert all(hamming.contains(w) for w in words)
    assert all(not any(hamming.syndrome(w)) for w in words)


def test_dual_code(hamming):
    """The dual of the [7,4] Hamming code is the [7,3,4] simplex code."""
    simplex = dual_code(hamming)

    assert simplex.k == 3
    assert min_distance(simplex) == 4
    assert dual_code(simplex) == hamming
    assert not np.any((hamming.generator @ simplex.generator.T).data)


def test_rs_code_is_mds():
    F5 = field_create(5)

    C = rs_code(F5, [1, 2, 3, 4], 2)

    assert (C.n, C.k) == (4, 2)
    assert min_distance(C) == 3


def test_rs_code_over_extension_field():
    F8 = field_create(2, 3)

    C = rs_code(F8, range(1, 8), 3)

    assert min_distance(C) == 5


def test_rs_code_errors():
    F5 = field_create(5)

    with pytest.raises(DuplicatePoints):
        rs_code(F5, [1, 1, 2], 2)
    with pytest.raises(BadDimension):
        rs_code(F5, [1, 2], 3)


def test_cyclic_code_needs_a_divisor(F2):
    with pytest.raises(NotADivisor):
        cyclic_code(F2, 7, Poly(F2, [1, 0, 1]))


def test_quasi_cyclic_index(F2, hamming):
    C = LinearCode.from_rows(F2, [[1, 1, 0, 0], [0, 0, 1, 1]])

    assert quasi_cyclic_index(C) == (2, 2)
    assert quasi_cyclic_index(hamming) == (1, 7)
    assert quasi_cyclic_index(LinearCode.from_rows(F2, [[1, 0, 0, 0]])) == (4, 1)


def test_goppa_repetition_code():
    """L = F_4^*, f = x over F_2: sum c_i / alpha_i = 0 forces c = 000 or 111."""
    F4 = field_create(2, 2)
    f = Poly(F4, [0, 1])

    C = goppa_code([1, 2, 3], f, field_create(2))

    assert C == LinearCode.from_rows(field_create(2), [[1, 1, 1]])
    assert C.label() == "[3,1,3]_2"


def test_goppa_over_the_big_field():
    F5 = field_create(5)

    C = goppa_code([1, 2, 3, 4], Poly(F5, [0, 0, 1]), F5)

    assert (C.n, C.k) == (4, 2)


def test_goppa_errors():
    F4 = field_create(2, 2)
    f = Poly(F4, [0, 1])

    with pytest.raises(RootInLocatorSet):
        goppa_code([0, 1], f, field_create(2))
    with pytest.raises(DuplicatePoints):
        goppa_code([1, 1], f, field_create(2))
    with pytest.raises(UnsupportedSubfield):
        goppa_code([1, 2], f, field_create(3))


def test_code_action_and_reversibility(F2, repetition, hamming):
    C = LinearCode.from_rows(F2, [[1, 1, 0]])
    image = code_action(C, [2, 0, 1])

    assert image == LinearCode.from_rows(F2, [[0, 1, 1]])
    assert code_pair_distance(C, image) == 2
    assert code_pair_distance(C, C) == 0
    assert is_reversible(repetition)
    assert not is_reversible(C)
    assert reversal_permutation(4) == [3, 2, 1, 0]
    # x^3 + x + 1 reversed is x^3 + x^2 + 1, a different cyclic code
    assert not is_reversible(hamming)


def test_count_cyclic_codes(F2):
    count = count_cyclic_codes(F2, 3)

    assert count.factor_degrees == [1, 2]
    assert count.by_dimension == {3: 1, 2: 1, 1: 1, 0: 1}
    assert count.total == 4


def test_count_cyclic_codes_length_7(F2):
    count = count_cyclic_codes(F2, 7)

    assert count.total == 8
    assert count.by_dimension[4] == 2
    assert count.falling_factorial_reading[2] == "1"


def test_coset_leaders(repetition, hamming):
    assert coset_leader(repetition, [1, 1, 1]) == (0, 0, 0)
    assert coset_leader(repetition, [0, 1, 0]) == (0, 1, 0)
    assert coset_leader(repetition, [1, 1, 0]) == (0, 0, 1)
    for word in ([1, 0, 1, 1, 0, 0, 1], [0, 0, 0, 0, 1, 1, 1]):
        assert sum(coset_leader(hamming, word)) <= 1


def test_standard_array_partitions_the_space(hamming):
    """The Hamming code is perfect: 8 cosets, leaders of weight at most 1."""
    leaders = standard_array(hamming)

    assert len(leaders) == 8
    assert sorted(sum(v) for v in leaders.values()) == [0] + [1] * 7
    seen = set()
    for leader in leaders.values():
        coset = {tuple((np.array(leader) + w) % 2) for words in iter_codewords(hamming) for w in words}
        assert not coset & seen
        seen |= coset
    assert len(seen) == 2**7


RS_CASES = [(q, n, k) for q in (5, 7, 8, 9) for n in range(1, min(q, 8) + 1) for k in range(1, n + 1) if q**k <= 10**4]


@pytest.mark.parametrize("q,n,k", RS_CASES)
def test_rs_codes_meet_the_singleton_bound(q, n, k):
    ctx = field_from_order(q)

    C = rs_code(ctx, range(q - n, q), k)

    assert (C.n, C.k) == (n, k)
    assert min_distance(C) == n - k + 1


@pytest.mark.parametrize(
    "q,rows",
    [
        (2, [[1, 1, 1]]),
        (2, [[1, 0, 1, 1], [0, 1, 0, 1]]),
        (2, [[1, 0, 0, 0, 1, 1], [0, 1, 0, 1, 0, 1], [0, 0, 1, 1, 1, 0]]),
        (2, [[1, 0, 0, 0, 1, 1, 0], [0, 1, 0, 0, 0, 1, 1], [0, 0, 1, 0, 1, 1, 1], [0, 0, 0, 1, 1, 0, 1]]),
        (3, [[1, 0, 1, 2], [0, 1, 1, 1]]),
        (3, [[1, 1, 1, 1, 1]]),
    ],
)
def test_cosets_partition_the_ambient_space(q, rows):
    ctx = field_from_order(q)
    C = LinearCode.from_rows(ctx, rows)
    codewords = [tuple(int(c) for c in w) for words in iter_codewords(C) for w in words]
    leaders = standard_array(C)

    assert len(leaders) == q ** (C.n - C.k)
    seen = set()
    for syndrome, leader in leaders.items():
        coset = {tuple((a + b) % q for a, b in zip(leader, w)) for w in codewords}
        assert len(coset) == q**C.k
        assert not coset & seen
        assert {C.syndrome(v) for v in coset} == {syndrome}
        seen |= coset
    assert seen == set(product(range(q), repeat=C.n))
    for word in product(range(q), repeat=C.n):
        leader = coset_leader(C, word)
        assert leaders[C.syndrome(word)] == leader
