from itertools import product

import pytest

from qdesign.crypto import DihedralElem, SplitMix64, dh_exchange, dihedral_pow, dlp_bruteforce, eavesdrop
from qdesign.errors import BudgetExceeded, DegenerateGroup, NotInCyclicSubgroup
from qdesign.field import field_create
from qdesign.groups import GLElem, dihedral_reflection


def test_splitmix_is_reproducible():
    a = SplitMix64(42)
    b = SplitMix64(42)

    assert [a.next_u64() for _ in range(5)] == [b.next_u64() for _ in range(5)]
    assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF


def test_randrange_bounds():
    rng = SplitMix64(7)

    values = [rng.randrange(1, 10) for _ in range(200)]

    assert min(values) >= 1
    assert max(values) < 10


def test_dihedral_relations():
    """sigma tau sigma = tau^-1 and sigma^2 = 1."""
    tau = DihedralElem(10, 1, 0)
    sigma = DihedralElem(10, 0, 1)

    assert sigma * tau * sigma == tau.inverse()
    assert sigma * sigma == sigma.one()
    assert dihedral_pow(tau, 10) == tau.one()


def test_dihedral_embedding_is_a_homomorphism():
    F7 = field_create(7)
    tau = GLElem.diagonal(F7, [3, 5])
    sigma = dihedral_reflection(tau)
    a = DihedralElem(6, 2, 1)
    b = DihedralElem(6, 5, 1)

    assert (a * b).to_matrix(tau, sigma) == a.to_matrix(tau, sigma) * b.to_matrix(tau, sigma)


def test_dh_with_explicit_secrets():
    transcript = dh_exchange(11, d=3, e=7)

    assert transcript.N == 10
    assert transcript.D.r == 3
    assert transcript.E.r == 7
    assert transcript.shared_p1.r == 1
    assert transcript.to_dict()["agree"]


def test_dh_seeded_transcripts_replay():
    first = dh_exchange(11, seed=42).to_dict()
    second = dh_exchange(11, seed=42).to_dict()

    assert first == second
    assert 0 < first["d"] < 10
    assert 0 < first["e"] < 10


def test_eavesdropper_recovers_shared_value():
    transcript = dh_exchange(31, seed=5)

    assert eavesdrop(transcript) == transcript.shared_p1


def test_dh_needs_room_for_secrets():
    with pytest.raises(DegenerateGroup):
        dh_exchange(3)


def test_dlp():
    assert dlp_bruteforce(DihedralElem(30, 1), DihedralElem(30, 17)) == 17
    assert dlp_bruteforce(DihedralElem(30, 7), DihedralElem(30, 0)) == 0


def test_dlp_outside_subgroup():
    """Reflections and rotations outside <base> have no logarithm."""
    with pytest.raises(NotInCyclicSubgroup):
        dlp_bruteforce(DihedralElem(30, 1), DihedralElem(30, 0, 1))
    with pytest.raises(NotInCyclicSubgroup):
        dlp_bruteforce(DihedralElem(30, 2), DihedralElem(30, 3))


def test_dlp_budget():
    with pytest.raises(BudgetExceeded):
        dlp_bruteforce(DihedralElem(100, 1), DihedralElem(100, 3), budget=50)


@pytest.mark.parametrize("N", range(1, 13))
def test_dihedral_group_axioms(N):
    elements = [DihedralElem(N, r, s) for r in range(N) for s in (0, 1)]
    one = DihedralElem(N, 0, 0)
    tau = DihedralElem(N, 1 % N, 0)
    sigma = DihedralElem(N, 0, 1)

    for a, b, c in product(elements, repeat=3):
        assert (a * b) * c == a * (b * c)
    for a in elements:
        assert a * one == a == one * a
        assert a * a.inverse() == one == a.inverse() * a
    assert dihedral_pow(tau, N) == one
    assert sigma * sigma == one
    assert sigma * tau * sigma == tau.inverse()


@pytest.mark.parametrize("q", [11, 13, 32])
def test_seeded_exchanges_always_agree(q):
    N = q - 1
    for seed in range(1000):
        transcript = dh_exchange(q, seed=seed)

        assert transcript.to_dict()["agree"]
        assert transcript.shared_p1.r == transcript.d * transcript.e % N


@pytest.mark.parametrize("N", range(2, 65))
def test_dlp_exhaustive(N):
    tau = DihedralElem(N, 1, 0)
    for m in range(N):
        assert dlp_bruteforce(tau, DihedralElem(N, m)) == m


@pytest.mark.parametrize("N", range(2, 17))
def test_dlp_returns_smallest_exponent(N):
    for r in range(N):
        base = DihedralElem(N, r)
        for m in range(N):
            target = dihedral_pow(base, m)
            found = dlp_bruteforce(base, target)
            assert found <= m
            assert dihedral_pow(base, found) == target
