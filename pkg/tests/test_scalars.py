"""Field arithmetic and q-combinatorics."""

import random
from fractions import Fraction

import pytest

from braidkit.errors import (
    DomainError,
    FieldMismatchError,
    InputFormatError,
    ScalarDivisionError,
)
from braidkit.scalars import (
    GF8,
    QQ,
    PrimeField,
    Scalar,
    field_from_string,
    is_regular,
    q_binom,
    q_factorial,
    q_int,
)

F5 = PrimeField(5)
F7 = PrimeField(7)


def test_q_int_zero_convention():
    # the zero case is pinned to 1, not the empty sum
    assert q_int(0, QQ.scalar(17)).value == 1
    assert q_int(0, GF8.scalar("g")).value == GF8.one()


def test_q_int_values():
    assert q_int(3, QQ.scalar(1)).value == 3
    assert q_int(3, QQ.scalar(2)).value == 7  # 1 + 2 + 4


def test_q_factorial_values():
    assert q_factorial(0, QQ.scalar(5)).value == 1
    assert q_factorial(3, QQ.scalar(1)).value == 6
    # 1 * (1+2) * (1+2+4) = 21
    assert q_factorial(3, QQ.scalar(2)).value == 21


def test_q_binom_classical():
    assert q_binom(4, 2, QQ.scalar(1)).value == 6
    for n in range(7):
        assert q_binom(n, 0, QQ.scalar(9)).value == 1


def test_q_binom_at_two_matches_product_formula():
    # oracle: (4)!_2 / ((2)!_2)^2 = 315 / 9 = 35, computed independently
    lam = QQ.scalar(2)
    product = q_factorial(4, lam) / (q_factorial(2, lam) * q_factorial(2, lam))
    assert product.value == Fraction(35)
    assert q_binom(4, 2, lam).value == Fraction(35)


def test_q_binom_domain_error():
    with pytest.raises(DomainError):
        q_binom(3, 4, QQ.scalar(1))


def test_q_binom_root_of_unity():
    # at lam = -1 the factorial formula breaks down but Pascal stays exact:
    # C(2,1) at -1 is 1 + (-1) = 0
    assert q_binom(2, 1, QQ.scalar(-1)).value == 0
    # and C(4,2) at -1 is 2 (classical evaluation of the Gaussian polynomial)
    assert q_binom(4, 2, QQ.scalar(-1)).value == 2


def _random_scalar(fld, rng):
    if fld is QQ:
        return Scalar(fld, Fraction(rng.randint(-6, 6), rng.randint(1, 5)))
    return Scalar(fld, fld.from_int(rng.randint(0, fld.characteristic() - 1)))


@pytest.mark.parametrize("fld", [QQ, F5, F7])
def test_q_binom_symmetry_and_pascal(fld):
    rng = random.Random(20240 + fld.characteristic())
    for _ in range(80):
        n = rng.randint(0, 8)
        k = rng.randint(0, n)
        lam = _random_scalar(fld, rng)
        sym = q_binom(n, n - k, lam)
        assert q_binom(n, k, lam).value == sym.value
        if n >= 1 and 1 <= k <= n - 1:
            left = q_binom(n, k, lam).value
            lam_k = fld.one()
            for _i in range(k):
                lam_k = fld.mul(lam_k, lam.value)
            right = fld.add(q_binom(n - 1, k - 1, lam).value,
                            fld.mul(lam_k, q_binom(n - 1, k, lam).value))
            assert left == right


@pytest.mark.parametrize("fld", [QQ, F5, F7])
def test_q_binom_against_factorials_when_invertible(fld):
    rng = random.Random(77 + fld.characteristic())
    for _ in range(60):
        n = rng.randint(0, 8)
        k = rng.randint(0, n)
        lam = _random_scalar(fld, rng)
        den = q_factorial(k, lam) * q_factorial(n - k, lam)
        if den.is_zero():
            continue
        assert q_binom(n, k, lam).value == (q_factorial(n, lam) / den).value


def test_is_regular_examples():
    assert is_regular(QQ.scalar(1), 10)
    assert not is_regular(QQ.scalar(-1), 2)
    # 1 + 2 + 4 = 7 vanishes mod 7
    assert not is_regular(F7.scalar(2), 3)
    assert is_regular(F7.scalar(2), 2)


def test_is_regular_inverse_symmetry():
    rng = random.Random(4242)
    for _ in range(40):
        fld = rng.choice([QQ, F5, F7])
        lam = _random_scalar(fld, rng)
        if lam.is_zero():
            continue
        n = rng.randint(1, 8)
        assert is_regular(lam, n) == is_regular(lam.inverse(), n)


def test_exact_roundtrip_arithmetic():
    rng = random.Random(99)
    for _ in range(60):
        fld = rng.choice([QQ, F5, GF8])
        a = _random_scalar(fld, rng) if fld is not GF8 else Scalar(GF8, rng.randint(0, 7))
        b = _random_scalar(fld, rng) if fld is not GF8 else Scalar(GF8, rng.randint(0, 7))
        assert ((a + b) - b).value == a.value


def test_field_mismatch_rejected():
    with pytest.raises(FieldMismatchError):
        QQ.scalar(1) + F5.scalar(1)


def test_division_by_zero_reported():
    with pytest.raises(ScalarDivisionError):
        QQ.scalar(1) / QQ.scalar(0)
    with pytest.raises(ScalarDivisionError):
        F5.scalar(3) / F5.scalar(0)
    with pytest.raises(ScalarDivisionError):
        Scalar(GF8, 5) / Scalar(GF8, 0)


def test_field_tags():
    assert field_from_string("Q") is QQ
    assert field_from_string("F5").characteristic() == 5
    assert field_from_string("F8").name == "F8"
    for bad in ("F4", "F6", "F9", "F1", "R", ""):
        with pytest.raises(InputFormatError):
            field_from_string(bad)


def test_prime_field_parsing():
    assert F5.parse("7") == 2
    assert F5.parse("1/2") == F5.div(1, 2) == 3
    assert QQ.parse("3/4") == Fraction(3, 4)


def test_gf8_structure():
    g = GF8.generator()
    # modulus: g^3 = g + 1
    assert GF8.mul(g, GF8.mul(g, g)) == GF8.parse("g+1")
    assert GF8.characteristic() == 2
    # multiplicative group has order 7
    x = GF8.one()
    seen = set()
    for _ in range(7):
        x = GF8.mul(x, g)
        seen.add(x)
    assert len(seen) == 7
    for a in range(1, 8):
        assert GF8.mul(a, GF8.inv(a)) == 1
    assert GF8.format(3) == "g+1"
    assert GF8.parse("g^2+1") == 5


def test_gf8_third_roots_absent():
    # no cube roots of unity besides 1, so (3) at lam never vanishes
    for a in range(1, 8):
        lam = Scalar(GF8, a)
        assert not q_factorial(3, lam).is_zero() or a == 1
    # and even at 1: (3)_1 = 1+1+1 = 1 in char 2
    assert q_int(3, Scalar(GF8, 1)).value == 1
