"""
Realization Tests
Poisson / symmetric brackets, matrix products, the Moyal star product and beta = sigma + J alpha
"""

import sys
from fractions import Fraction

from errors import TowerError
from matrices import MatrixElement, identity, matrix_unit, pauli_x, pauli_y, pauli_z, zero_matrix
from phase_space import PhasePolynomial
from realizations import (
    CompositionClass, beta_product, elliptic_pair, hyperbolic_pair, matrix_alpha, matrix_sigma,
    moyal_alpha, moyal_pair, moyal_sigma, moyal_star, parabolic_pair, parabolic_symmetric_pair,
    poisson_bracket, symmetric_bracket,
)
from sampling import Sampler
from scalars import HBAR, I, J

X = PhasePolynomial.variable(1, 'x', 1)
P = PhasePolynomial.variable(1, 'p', 1)


def h(value):
    """Constant h-polynomial on one degree of freedom"""
    return PhasePolynomial.constant(1, value)


def test_poisson_bracket():
    assert poisson_bracket(X, P) == 1
    assert poisson_bracket(X ** 2, P) == X * 2
    assert poisson_bracket(X ** 2, P ** 2) == X * P * 4
    assert poisson_bracket(P, X) == -1


def test_symmetric_bracket():
    assert symmetric_bracket(X, P) == 1
    assert symmetric_bracket(P, X) == 1
    assert symmetric_bracket(X ** 2, P) == X * 2


def test_elliptic_alpha_on_pauli():
    pair = elliptic_pair()
    assert matrix_alpha(pauli_x(), pauli_y(), pair) == pauli_z()
    a = Sampler(2).matrix(3, pair.entry_unit)
    assert matrix_alpha(a, a, pair) == zero_matrix(3)


def test_hyperbolic_alpha_on_units():
    pair = hyperbolic_pair()
    expected = (matrix_unit(2, 1, 1) - matrix_unit(2, 2, 2)) / 2
    assert matrix_alpha(matrix_unit(2, 1, 2), matrix_unit(2, 2, 1), pair) == expected


def test_tower_checks():
    try:
        matrix_alpha(pauli_y(), pauli_x(), hyperbolic_pair())
    except TowerError:
        pass
    else:
        raise AssertionError("complex entries are not hyperbolic")
    try:
        matrix_alpha(MatrixElement([[J]]), MatrixElement([[1]]), elliptic_pair())
    except TowerError:
        pass
    else:
        raise AssertionError("split-complex entries are not elliptic")


def test_matrix_sigma():
    assert matrix_sigma(pauli_x(), pauli_y()) == zero_matrix(2)
    assert matrix_sigma(pauli_x(), pauli_x()) == identity(2)
    a = Sampler(4).matrix(3)
    assert matrix_sigma(identity(3), a) == a


def test_moyal_star_examples():
    assert moyal_star(X, P) == X * P + h(I * HBAR / 2)
    expected = X ** 2 * P ** 2 + X * P * h(I * HBAR * 2) - h(HBAR ** 2 / 2)
    assert moyal_star(X ** 2, P ** 2) == expected
    f = Sampler(8).polynomial(2, hbar=True)
    assert moyal_star(f, PhasePolynomial.one(2)) == f


def test_moyal_alpha_sigma_examples():
    assert moyal_alpha(X, P) == 1
    assert moyal_sigma(X ** 2, P ** 2) == X ** 2 * P ** 2 - h(HBAR ** 2 / 2)
    f = Sampler(9).polynomial(1)
    assert moyal_alpha(f, f).is_zero()


def test_moyal_fixed_hbar():
    assert moyal_star(X, P, hbar=Fraction(2)) == X * P + h(I)
    assert moyal_alpha(X ** 3, P ** 3, hbar=Fraction(2)) == moyal_alpha(X ** 3, P ** 3).at_hbar(2)


def test_moyal_star_is_associative():
    sampler = Sampler(21)
    for _ in range(20):
        f, g, k = (sampler.polynomial(1, max_degree=2, max_terms=3, hbar=True) for _ in range(3))
        assert moyal_star(moyal_star(f, g), k) == moyal_star(f, moyal_star(g, k))


def test_moyal_star_is_associative_at_high_degree():
    sampler = Sampler(23)
    for _ in range(100):
        f, g, k = (sampler.polynomial(1, max_degree=6, max_terms=2, hbar=True) for _ in range(3))
        assert moyal_star(moyal_star(f, g), k) == moyal_star(f, moyal_star(g, k))


def test_moyal_classical_contraction():
    zero = Fraction(0)
    assert moyal_alpha(X, P, hbar=zero) == 1
    assert moyal_alpha(X ** 2, P ** 2, hbar=zero) == poisson_bracket(X ** 2, P ** 2)
    assert moyal_alpha(X ** 3, P ** 3, hbar=zero) == X ** 2 * P ** 2 * 9
    assert moyal_sigma(X ** 2, P ** 2, hbar=zero) == X ** 2 * P ** 2
    sampler = Sampler(29)
    for _ in range(20):
        f, g = sampler.polynomial(2), sampler.polynomial(2)
        assert moyal_alpha(f, g, hbar=zero) == poisson_bracket(f, g)
        assert moyal_sigma(f, g, hbar=zero) == f * g
        assert moyal_alpha(f, g, hbar=zero) == moyal_alpha(f, g).at_hbar(0)

    classical = moyal_pair(zero)
    assert classical.x == 0
    assert classical.composition_class is CompositionClass.PARABOLIC
    assert moyal_pair(Fraction(2)).composition_class is CompositionClass.ELLIPTIC


def test_beta_is_the_associative_product():
    sampler = Sampler(13)
    elliptic = elliptic_pair()
    a, b = sampler.matrix(2, elliptic.entry_unit), sampler.matrix(2, elliptic.entry_unit)
    assert beta_product(a, b, elliptic) == a @ b

    hyperbolic = hyperbolic_pair()
    a, b = sampler.matrix(3), sampler.matrix(3)
    assert beta_product(a, b, hyperbolic) == a @ b

    f, g = sampler.polynomial(1), sampler.polynomial(1)
    assert beta_product(f, g, parabolic_pair()) == f * g


def test_pair_parameters():
    assert elliptic_pair().x == -1
    assert elliptic_pair(Fraction(1)).x == Fraction(-1, 4)
    assert hyperbolic_pair().x == 1
    assert parabolic_pair().x == 0
    assert parabolic_symmetric_pair().symmetric_bracket
    assert moyal_pair().x == -HBAR * HBAR / 4
    assert moyal_pair().composition_class is CompositionClass.ELLIPTIC
    assert hyperbolic_pair(split=True).j_scalar == J
    try:
        elliptic_pair(Fraction(0))
    except TowerError:
        pass
    else:
        raise AssertionError("hbar must be positive")


TESTS = [
    test_poisson_bracket,
    test_symmetric_bracket,
    test_elliptic_alpha_on_pauli,
    test_hyperbolic_alpha_on_units,
    test_tower_checks,
    test_matrix_sigma,
    test_moyal_star_examples,
    test_moyal_alpha_sigma_examples,
    test_moyal_fixed_hbar,
    test_moyal_star_is_associative,
    test_moyal_star_is_associative_at_high_degree,
    test_moyal_classical_contraction,
    test_beta_is_the_associative_product,
    test_pair_parameters,
]


def main():
    """Run every test in this file"""
    print("🧪 Realization Tests")
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
