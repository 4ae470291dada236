"""
Scalar Tower Tests
Exact arithmetic on rationals, complex / split-complex rationals and h-polynomials
"""

import sys
from fractions import Fraction

from hypothesis import given, settings

from errors import ScalarError
from sampling import Sampler
from scalars import (
    COMPLEX_UNIT, HBAR, I, J, SPLIT_UNIT, Complex, HbarPoly, demote, format_scalar, promote,
    scalar_conj, scalar_invertible, scalar_mul, tower_level,
)
from strategies import complex_scalars, hbar_scalars


def test_split_complex_zero_divisor():
    assert scalar_mul(1 + J, 1 - J) == 0


def test_imaginary_unit_squares():
    assert scalar_mul(I, I) == -1
    assert scalar_mul(J, J) == 1


def test_hbar_is_formal():
    assert scalar_mul(HBAR, HBAR) == HbarPoly({2: 1})
    assert (HBAR * 2 - HBAR).coefficient(1) == 1
    assert HBAR.at(Fraction(3)) == 3


def test_mixing_units_raises():
    try:
        scalar_mul(I, J)
    except ScalarError:
        pass
    else:
        raise AssertionError("i * j should be rejected")
    # purely real values carry no unit and mix freely
    assert Complex(2, 0, SPLIT_UNIT) * I == Complex(0, 2)


def test_conjugation():
    assert scalar_conj(Complex(3, 2)) == Complex(3, -2)
    assert scalar_conj(1 + J) == 1 - J
    value = Complex(Fraction(5, 7), 1)
    assert scalar_conj(scalar_conj(value)) == value
    assert scalar_conj(HBAR * I) == -HBAR * I


def test_conjugation_is_multiplicative():
    sampler = Sampler(11)
    for unit in (COMPLEX_UNIT, SPLIT_UNIT):
        for _ in range(50):
            a, b = sampler.scalar(unit), sampler.scalar(unit)
            assert scalar_conj(a * b) == scalar_conj(a) * scalar_conj(b)


def test_invertibility():
    assert scalar_invertible(1 + J) is False
    assert scalar_invertible(2 + J) is True
    assert (2 + J) * ((2 - J) / 3) == 1
    assert scalar_invertible(Fraction(0)) is False
    assert scalar_invertible(HBAR) is False
    assert scalar_invertible(HbarPoly({0: 3})) is True


def test_division_by_zero_divisor_raises():
    try:
        Fraction(1) / (1 + J)
    except ScalarError:
        pass
    else:
        raise AssertionError("1 / (1 + j) should be rejected")


def test_tower_promotion():
    assert tower_level(Fraction(1, 2)) == 0
    assert tower_level(I) == 1
    assert tower_level(HBAR) == 2
    lifted = promote(Fraction(1, 2), 2)
    assert isinstance(lifted, HbarPoly) and lifted == Fraction(1, 2)
    assert demote(lifted) == Fraction(1, 2) and isinstance(demote(lifted), Fraction)


@settings(max_examples=50, deadline=None)
@given(hbar_scalars(), hbar_scalars(), hbar_scalars())
def test_ring_laws_on_samples(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=50, deadline=None)
@given(complex_scalars(SPLIT_UNIT), complex_scalars(SPLIT_UNIT), complex_scalars(SPLIT_UNIT))
def test_split_complex_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert scalar_conj(a) * a == a.re * a.re - a.im * a.im


def test_format_scalar():
    assert format_scalar(Complex(Fraction(1, 2), -1)) == "(1/2) - i"
    assert format_scalar(I * HBAR / 2) == "(1/2)*i*h"
    assert format_scalar(Fraction(0)) == "0"
    assert format_scalar(1 + J) == "1 + j"


TESTS = [
    test_split_complex_zero_divisor,
    test_imaginary_unit_squares,
    test_hbar_is_formal,
    test_mixing_units_raises,
    test_conjugation,
    test_conjugation_is_multiplicative,
    test_invertibility,
    test_division_by_zero_divisor_raises,
    test_tower_promotion,
    test_ring_laws_on_samples,
    test_split_complex_ring_laws,
    test_format_scalar,
]


def main():
    """Run every test in this file"""
    print("🧪 Scalar Tower Tests")
    print("=" * 40)
    failures = 0
    for test in TESTS:
        try:
            test()
            print(f"✓ {test.__name__}")
        except Exception as e:
            failures += 1
            print(f"✗ {test.__name__}: {e}")
    print(f"\n{len(TESTS) - failures}/{len(TESTS)} passed")
    return failures == 0


if __name__ == "__main__":
    sys.exit(0 if main() else 1)
