import galois
import numpy as np
import pytest

from qdesign.errors import NotPrime, SizeExceeded
from qdesign.field import FieldElem, field_create, field_from_order, primitive_element


def test_prime_field_arithmetic():
    """F_7 arithmetic on codes matches integers mod 7."""
    F = field_create(7)

    assert F.q == 7
    assert F.spec == "7^1"
    assert F.add(5, 4) == 2
    assert F.mul(3, 5) == 1
    assert F.inv(3) == 5
    assert F.neg(2) == 5
    assert F.pow(3, 6) == 1


def test_f4_uses_smallest_modulus():
    """F_4 is built on x^2 + x + 1, so x * x = x + 1."""
    F = field_create(2, 2)

    assert F.modulus == (1, 1, 1)
    assert F.add(2, 3) == 1
    assert F.mul(2, 2) == 3
    assert F.mul(2, 3) == 1
    assert F.inv(2) == 3


def test_f9_square_root_of_minus_one():
    """F_9 = F_3[x]/(x^2 + 1): the code of x squares to -1."""
    F = field_create(3, 2)

    assert F.modulus == (1, 0, 1)
    assert F.mul(3, 3) == 2
    assert F.add(4, 5) == F.add(5, 4)


def test_vectorised_matches_scalar():
    """Array arithmetic agrees with elementwise scalar arithmetic."""
    F = field_create(2, 3)
    a = F.elements()
    b = (a * 5 + 3) % F.q

    prod = F.mul(a, b)
    assert isinstance(prod, np.ndarray)
    for x, y, z in zip(a, b, prod):
        assert F.mul(int(x), int(y)) == int(z)


def test_every_nonzero_element_has_an_inverse():
    """x * x^-1 = 1 for every nonzero x in F_16."""
    F = field_create(2, 4)
    nonzero = F.elements()[1:]

    np.testing.assert_array_equal(F.mul(nonzero, F.inv(nonzero)), np.ones(F.q - 1, dtype=np.int64))


def test_zero_has_no_inverse():
    F = field_create(5)

    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_primitive_element_order():
    """The primitive element generates the whole multiplicative group."""
    for q in (2, 3, 4, 5, 8, 9, 25):
        F = field_from_order(q)
        g = primitive_element(F)
        assert g.order() == q - 1


def test_field_elem_operators():
    F = field_create(5)
    a = FieldElem(F, 2)
    b = F.elem(4)

    assert (a + b).code == 1
    assert (a * b).code == 3
    assert (a / b).code == 3
    assert (a**4).code == 1
    assert a < b
    assert not F.elem(0)


def test_field_from_order_rejects_non_prime_powers():
    with pytest.raises(NotPrime):
        field_from_order(6)
    with pytest.raises(NotPrime):
        field_create(4)


def test_field_size_limit(monkeypatch):
    """Fields larger than the configured maximum are refused."""
    monkeypatch.setattr("qdesign.config.Config.MAX_FIELD_SIZE", 100)
    field_create.cache_clear()
    try:
        with pytest.raises(SizeExceeded):
            field_create(101)
    finally:
        field_create.cache_clear()


@pytest.mark.parametrize("q", [2, 4, 7, 8, 9, 16, 25, 27])
def test_field_axioms_on_random_triples(q):
    """Ring and field axioms on 1000 seeded random triples."""
    F = field_from_order(q)
    rng = np.random.default_rng(q)
    a, b, c = (rng.integers(0, q, 1000) for _ in range(3))

    np.testing.assert_array_equal(F.add(a, b), F.add(b, a))
    np.testing.assert_array_equal(F.mul(a, b), F.mul(b, a))
    np.testing.assert_array_equal(F.add(F.add(a, b), c), F.add(a, F.add(b, c)))
    np.testing.assert_array_equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)))
    np.testing.assert_array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))
    np.testing.assert_array_equal(F.add(a, F.neg(a)), np.zeros(1000, dtype=np.int64))
    np.testing.assert_array_equal(F.sub(F.add(a, b), b), a)
    nonzero = np.where(c == 0, 1, c)
    np.testing.assert_array_equal(F.mul(F.div(a, nonzero), nonzero), a)


def test_extension_field_matches_galois_modulus():
    """F_8 is built on x^3 + x + 1, the smallest irreducible cubic."""
    F = field_create(2, 3)

    assert F.modulus == (1, 1, 0, 1)
    assert F.GF.irreducible_poly == galois.Poly([1, 0, 1, 1])
    assert F.mul(2, 4) == 3
    assert F.pow(2, 7) == 1
    assert F.pow(3, -1) == F.inv(3)
