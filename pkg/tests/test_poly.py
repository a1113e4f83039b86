import numpy as np
import pytest

from qdesign.errors import (
    DegreeOrder,
    DivisionByZeroPoly,
    NonSplittingDenominator,
    NotCoprimeCharacteristic,
    NotInvertible,
    OrderMismatch,
)
from qdesign.field import field_create, field_from_order
from qdesign.poly import (
    Poly,
    continued_fraction_value,
    count_invariant_irreducible,
    count_irreducible,
    count_separable,
    count_separable_sum,
    count_squarefree_brute,
    cyclotomic_poly,
    factor_xn_minus_1,
    invariant_irreducible_formula,
    inverse_mod,
    irreducible_polys,
    is_irreducible,
    is_primitive_poly,
    moebius,
    poly_continued_fraction,
    poly_gcd,
    poly_partial_fractions,
    poly_xgcd,
    recombine_partial_fractions,
)


def ben_or(f):
    """Independent irreducibility oracle: no gcd(f, x^(q^i) - x) is proper for i <= deg f / 2."""
    if f.degree < 1:
        return False
    f = f.monic()
    x = Poly.x(f.ctx)
    power = x
    for _ in range(f.degree // 2):
        power = power.powmod(f.ctx.q, f)
        if poly_gcd(f, power - x).degree > 0:
            return False
    return True


def trial_division_factors(f):
    """Independent factoring oracle: strip monic divisors of increasing degree."""
    ctx = f.ctx
    factors = []
    degree = 1
    while f.degree > 0 and degree <= f.degree:
        for code in range(ctx.q**degree):
            lower = [(code // ctx.q**i) % ctx.q for i in range(degree)]
            d = Poly(ctx, lower + [1])
            while f.degree >= degree and (f % d).is_zero():
                factors.append(d)
                f = f // d
        degree += 1
    return sorted(factors, key=Poly.sort_key)


@pytest.fixture
def F2():
    return field_create(2)


@pytest.fixture
def F5():
    return field_create(5)


def test_poly_trims_and_prints(F5):
    """Trailing zero codes are dropped and printing is highest degree first."""
    f = Poly(F5, [1, 4, 1, 0, 0])

    assert f.degree == 2
    assert f.to_text() == "1 4 1"
    assert str(f) == "x^2 + 4x + 1"
    assert Poly.zero(F5).degree == -1
    assert Poly.zero(F5).to_text() == "0"


def test_divmod_reconstructs(F5):
    f = Poly(F5, [3, 0, 2, 1, 4])
    g = Poly(F5, [1, 2])

    quot, rem = divmod(f, g)

    assert quot * g + rem == f
    assert rem.degree < g.degree


def test_division_by_zero_poly(F5):
    with pytest.raises(DivisionByZeroPoly):
        divmod(Poly.one(F5), Poly.zero(F5))


def test_evaluation(F5):
    """(x - 2)(x - 3) vanishes at 2 and 3 only."""
    f = Poly.linear(F5, 2) * Poly.linear(F5, 3)

    assert list(f(F5.elements())) == [1, 2, 0, 0, 2]
    assert f(F5.elem(2)).code == 0


def test_xgcd_bezout(F5):
    a = Poly(F5, [4, 0, 1])  # x^2 - 1
    b = Poly(F5, [1, 1])  # x + 1

    g, s, t = poly_xgcd(a, b)

    assert g == Poly(F5, [1, 1])
    assert s * a + t * b == g
    assert poly_gcd(a, b) == g


def test_inverse_mod(F5):
    """x * (-x) = 1 modulo x^2 + 1."""
    modulus = Poly(F5, [1, 0, 1])

    assert inverse_mod(Poly.x(F5), modulus) == Poly(F5, [0, 4])
    with pytest.raises(NotInvertible):
        inverse_mod(Poly(F5, [2, 1]), modulus)


def test_irreducibility(F2, F5):
    assert is_irreducible(Poly(F2, [1, 1, 1]))
    assert not is_irreducible(Poly(F2, [1, 0, 1]))
    assert is_irreducible(Poly(F2, [1, 1, 0, 1]))
    assert is_irreducible(Poly(F5, [2, 0, 1]))
    assert not is_irreducible(Poly(F5, [1, 0, 1]))


def test_irreducible_listing_matches_count(F2):
    """Enumerated irreducibles agree with the Moebius count."""
    for degree in range(1, 7):
        assert len(list(irreducible_polys(F2, degree))) == count_irreducible(2, degree)


def test_count_irreducible_values():
    assert count_irreducible(2, 4) == 3
    assert count_irreducible(2, 3) == 2
    assert count_irreducible(3, 2) == 3
    assert count_irreducible(4, 1) == 4


def test_primitive_poly(F2):
    assert is_primitive_poly(Poly(F2, [1, 1, 0, 0, 1]))
    assert not is_primitive_poly(Poly(F2, [1, 1, 1, 1, 1]))


def test_moebius():
    assert moebius(1) == 1
    assert moebius(6) == 1
    assert moebius(30) == -1
    assert moebius(12) == 0


def test_separable_counts_agree(F2):
    """The summation form telescopes to q^l and matches brute force over degrees 1..l."""
    for q, l in ((2, 3), (3, 4), (5, 2)):
        assert count_separable_sum(q, l) == count_separable(q, l) == q**l
    assert count_squarefree_brute(F2, 4) == 16


def test_invariant_count_brute_matches_formula():
    """x^2 + c over F_5 and x^3 + c over F_7."""
    assert count_invariant_irreducible(5, 2, 1, method="brute") == 2
    assert invariant_irreducible_formula(5, 2, 1) == 2
    assert count_invariant_irreducible(7, 3, 1, method="brute") == 4
    assert invariant_irreducible_formula(7, 3, 1) == 4
    assert count_invariant_irreducible(5, 4, 2, method="brute") == invariant_irreducible_formula(5, 4, 2)


def test_invariant_count_needs_order_dividing_q_minus_1():
    with pytest.raises(OrderMismatch):
        count_invariant_irreducible(5, 3, 1)


def test_cyclotomic():
    assert cyclotomic_poly(1).coeffs == (-1, 1)
    assert cyclotomic_poly(6).coeffs == (1, -1, 1)
    assert str(cyclotomic_poly(6)) == "x^2 - x + 1"
    assert cyclotomic_poly(12).coeffs == (1, 0, -1, 0, 1)


def test_factor_x8_minus_1_over_f5(F5):
    """Four linear factors and x^4 + 1 = (x^2 + 2)(x^2 + 3)."""
    factors = factor_xn_minus_1(F5, 8)

    assert [f.to_text() for f in factors] == ["1 1", "2 1", "3 1", "4 1", "2 0 1", "3 0 1"]
    assert [f.degree for f in factors] == [1, 1, 1, 1, 2, 2]


def test_factor_x7_minus_1_over_f2(F2):
    factors = factor_xn_minus_1(F2, 7)

    assert [f.to_text() for f in factors] == ["1 1", "1 1 0 1", "1 0 1 1"]


def test_factor_needs_coprime_length(F5):
    with pytest.raises(NotCoprimeCharacteristic):
        factor_xn_minus_1(F5, 10)


def test_continued_fraction(F5):
    """(x^2 + 1)/x = x + 1/x."""
    f = Poly(F5, [1, 0, 1])
    g = Poly.x(F5)

    quotients = poly_continued_fraction(f, g)
    num, den = continued_fraction_value(quotients)

    assert quotients == [Poly.x(F5), Poly.x(F5)]
    assert num * g == den * f


def test_partial_fractions_simple_roots(F5):
    """1/((x - 1)(x - 4)) = 3/(x - 1) + 2/(x - 4) over F_5."""
    g = Poly(F5, [4, 0, 1])
    terms = poly_partial_fractions(Poly.one(F5), g)

    assert [(t.numerator.to_text(), t.root.code, t.power) for t in terms] == [("3", 1, 1), ("2", 4, 1)]
    assert recombine_partial_fractions(terms, g) == Poly.one(F5)


def test_partial_fractions_repeated_root(F5):
    g = Poly(F5, [0, 0, 1])
    f = Poly(F5, [2, 3])

    terms = poly_partial_fractions(f, g)

    assert [(t.numerator.to_text(), t.root.code, t.power) for t in terms] == [("3", 0, 1), ("2", 0, 2)]
    assert recombine_partial_fractions(terms, g) == f


def test_partial_fraction_errors(F5):
    with pytest.raises(NonSplittingDenominator):
        poly_partial_fractions(Poly.one(F5), Poly(F5, [2, 0, 1]))
    with pytest.raises(DegreeOrder):
        poly_partial_fractions(Poly(F5, [1, 0, 1]), Poly(F5, [4, 1]))


def cyclotomic_coset_sizes(q, n):
    seen = set()
    sizes = []
    for s in range(n):
        if s in seen:
            continue
        coset = set()
        x = s
        while x not in coset:
            coset.add(x)
            x = x * q % n
        seen |= coset
        sizes.append(len(coset))
    return sorted(sizes)


@pytest.mark.parametrize("q", [2, 3, 5])
@pytest.mark.parametrize("n", range(1, 25))
def test_factor_xn_minus_1_against_oracles(q, n):
    """Factor degrees follow the cyclotomic cosets, factors pass Ben-Or, and trial division agrees where it is cheap."""
    if n % q == 0:
        pytest.skip("characteristic divides n")
    ctx = field_create(q)

    factors = factor_xn_minus_1(ctx, n)

    assert sorted(f.degree for f in factors) == cyclotomic_coset_sizes(q, n)
    assert all(f.is_monic() and ben_or(f) for f in factors)
    product = Poly.one(ctx)
    for f in factors:
        product = product * f
    assert product == Poly.xn_minus_1(ctx, n)
    if q ** max(f.degree for f in factors) <= 4096:
        assert factors == trial_division_factors(Poly.xn_minus_1(ctx, n))


@pytest.mark.parametrize("degree", range(1, 7))
def test_count_irreducible_matches_brute_force_over_f3(degree):
    F3 = field_create(3)
    brute = 0
    for code in range(3**degree):
        lower = [(code // 3**i) % 3 for i in range(degree)]
        if ben_or(Poly(F3, lower + [1])):
            brute += 1

    assert count_irreducible(3, degree) == brute


@pytest.mark.parametrize("q,degree", [(2, 1), (2, 4), (2, 5), (3, 3), (4, 2), (5, 2), (9, 2)])
def test_irreducible_listing_matches_ben_or(q, degree):
    """galois' listing (prime fields) and the enumeration (extension fields) agree with Ben-Or, in code order."""
    ctx = field_from_order(q)
    listed = list(irreducible_polys(ctx, degree))
    expected = []
    for code in range(q**degree):
        lower = [(code // q**i) % q for i in range(degree)]
        f = Poly(ctx, lower + [1])
        if ben_or(f):
            expected.append(f)

    assert listed == expected
    assert len(listed) == count_irreducible(q, degree)


@pytest.mark.parametrize("n", range(1, 51))
def test_cyclotomic_degrees_sum_to_n(n):
    assert sum(cyclotomic_poly(d).degree for d in range(1, n + 1) if n % d == 0) == n


def test_partial_fractions_over_f23():
    """(5x^2 + 20x + 6)/(x^3 + 2x^2 + x) = 6/x + 22/(x + 1) + 9/(x + 1)^2."""
    F23 = field_create(23)
    f = Poly(F23, [6, 20, 5])
    g = Poly(F23, [0, 1, 2, 1])

    terms = poly_partial_fractions(f, g)

    assert [(t.numerator.to_text(), t.root.code, t.power) for t in terms] == [("6", 0, 1), ("22", 22, 1), ("9", 22, 2)]
    assert recombine_partial_fractions(terms, g) == f


def random_poly(rng, ctx, degree):
    codes = [int(c) for c in rng.integers(0, ctx.q, degree)] + [int(rng.integers(1, ctx.q))]
    return Poly(ctx, codes)


@pytest.mark.parametrize("seed", range(200))
def test_partial_fractions_round_trip(seed):
    rng = np.random.default_rng(seed)
    ctx = field_from_order(int(rng.choice([5, 7, 9])))
    g = Poly.one(ctx)
    for _ in range(int(rng.integers(1, 5))):
        g = g * Poly.linear(ctx, int(rng.integers(0, ctx.q)))
    f = random_poly(rng, ctx, int(rng.integers(0, g.degree)))

    terms = poly_partial_fractions(f, g)

    assert recombine_partial_fractions(terms, g) == f
    assert all(t.numerator.degree == 0 and 1 <= t.power <= g.degree for t in terms)


@pytest.mark.parametrize("seed", range(200))
def test_continued_fraction_round_trip(seed):
    rng = np.random.default_rng(seed)
    ctx = field_from_order(int(rng.choice([2, 3, 4, 7])))
    f = random_poly(rng, ctx, int(rng.integers(0, 7)))
    g = random_poly(rng, ctx, int(rng.integers(0, 7)))

    num, den = continued_fraction_value(poly_continued_fraction(f, g))

    assert num * g == den * f
    assert poly_gcd(num, den) == Poly.one(ctx)


def test_extension_field_polynomials():
    """Polynomial arithmetic over F_4 uses the field's own modulus."""
    F4 = field_create(2, 2)
    f = Poly.linear(F4, 2) * Poly.linear(F4, 3)

    assert f == Poly(F4, [1, 1, 1])
    assert list(f(F4.elements())) == [1, 1, 0, 0]
    assert not is_irreducible(f)
    assert is_irreducible(Poly(F4, [2, 1, 1]))
