"""
Phase-Space Polynomial Tests
Construction, calculus, block relabeling and printing
"""

import sys
from fractions import Fraction

from errors import DimensionError
from phase_space import PhasePolynomial, format_polynomial
from scalars import HBAR, I


def x(i, d=1):
    return PhasePolynomial.variable(d, 'x', i)


def p(i, d=1):
    return PhasePolynomial.variable(d, 'p', i)


def test_zero_terms_are_dropped():
    poly = x(1) * p(1) - p(1) * x(1)
    assert poly.is_zero()
    assert poly == PhasePolynomial.zero(1)
    assert poly.terms == {}


def test_degree_and_variables():
    poly = x(1, 2) ** 2 * p(2, 2) + 3
    assert poly.degree == 3
    assert poly.dimension == 2
    assert poly.terms[(2, 0, 0, 1)] == 1
    assert poly.terms[(0, 0, 0, 0)] == 3


def test_partial_derivatives():
    poly = x(1) ** 3 * p(1) ** 2
    assert poly.d_x(1) == x(1) ** 2 * p(1) ** 2 * 3
    assert poly.d_p(1) == x(1) ** 3 * p(1) * 2
    assert poly.partial((3, 2)) == 12
    assert poly.partial((4, 0)).is_zero()


def test_hbar_substitution():
    poly = x(1) * p(1) + PhasePolynomial.constant(1, I * HBAR / 2)
    assert poly.at_hbar(0) == x(1) * p(1)
    assert poly.at_hbar(Fraction(2)) == x(1) * p(1) + I


def test_embed_relabels_variables():
    poly = x(1) * p(1) ** 2
    embedded = poly.embed(3, 1)
    assert embedded == x(2, 3) * p(2, 3) ** 2
    assert poly.with_dimension(2) == x(1, 2) * p(1, 2) ** 2


def test_embed_out_of_range():
    try:
        x(1, 2).embed(2, 1)
    except DimensionError:
        pass
    else:
        raise AssertionError("a 2-dimensional block cannot start at offset 1 of dimension 2")


def test_permute_blocks_swaps_slots():
    poly = x(1, 3) * p(2, 3) + x(3, 3)
    swapped = poly.permute_blocks((1, 0), (1, 2))
    # slot of size 2 moves first: x1 -> x3, x2 -> x1, x3 -> x2
    assert swapped == x(3, 3) * p(1, 3) + x(2, 3)


def test_dimension_mismatch():
    try:
        x(1, 1) + x(1, 2)
    except DimensionError:
        pass
    else:
        raise AssertionError("polynomials of different dimension should not add")


def test_format_graded_lex():
    assert format_polynomial(x(1) * p(1) - 1) == "x1*p1 - 1"
    assert format_polynomial(PhasePolynomial.constant(1, HBAR ** 2 * Fraction(3, 2)) * x(1)) == "(3/2)*h^2*x1"
    assert format_polynomial(x(1) * p(1) + PhasePolynomial.constant(1, I * HBAR / 2)) == "x1*p1 + (1/2)*i*h"
    assert format_polynomial(PhasePolynomial.zero(2)) == "0"
    assert format_polynomial(-x(1) ** 2 + p(1)) == "-x1^2 + p1"


TESTS = [
    test_zero_terms_are_dropped,
    test_degree_and_variables,
    test_partial_derivatives,
    test_hbar_substitution,
    test_embed_relabels_variables,
    test_embed_out_of_range,
    test_permute_blocks_swaps_slots,
    test_dimension_mismatch,
    test_format_graded_lex,
]


def main():
    """Run every test in this file"""
    print("🧪 Phase-Space Polynomial Tests")
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
