"""
Spectrum, Norm and GNS Tests
"""

import sys
from fractions import Fraction

from config import TestingConfig
from errors import StateError, TowerError, UnsupportedSpectrumError
from gns_norm import (
    State, algebraic_norm, cstar_defect, cstar_norm, density_rank, gns_construct,
    hyperbolic_cstar_witness, involution_decompose, maximally_mixed_state, pure_state,
    random_complex_matrices, random_state, representation_errors, spectrum,
)
from matrices import MatrixElement, diag, identity, pauli_x, pauli_y, zero_matrix
from sampling import Sampler
from scalars import COMPLEX_UNIT, I, J

TOLERANCE = TestingConfig.STATE_TOLERANCE
NORM_TOLERANCE = TestingConfig.NORM_TOLERANCE


def close(a, b, tolerance=TOLERANCE):
    return abs(a - b) <= tolerance


def test_spectra():
    values = spectrum(pauli_x())
    assert close(values[0], -1) and close(values[1], 1)
    assert all(close(v, 1) for v in spectrum(identity(2)))
    assert spectrum(MatrixElement([[1 + J]])) == [0, 2]
    assert spectrum(diag(3 - J, Fraction(1, 2))) == [Fraction(1, 2), Fraction(1, 2), 2, 4]


def test_non_diagonal_split_spectrum_unsupported():
    try:
        spectrum(MatrixElement([[1, J], [0, 1]]))
    except UnsupportedSpectrumError:
        pass
    else:
        raise AssertionError("general split-complex eigenproblems are unsupported")


def test_cstar_norm():
    assert close(cstar_norm(pauli_x()), 1)
    assert cstar_norm(zero_matrix(3)) == 0
    assert close(cstar_norm(diag(3, -2)), 3)
    try:
        cstar_norm(MatrixElement([[J]]))
    except TowerError:
        pass
    else:
        raise AssertionError("the C* norm needs complex entries")


def test_cstar_identity_on_random_matrices():
    sampler = Sampler(31)
    for _ in range(50):
        a = sampler.matrix(sampler.rng.choice((2, 3, 4)), COMPLEX_UNIT)
        assert cstar_defect(a) <= NORM_TOLERANCE * max(1.0, cstar_norm(a) ** 2)


def test_algebraic_norm_matches_cstar_on_hermitean():
    sampler = Sampler(32)
    for _ in range(20):
        a = sampler.hermitean(3)
        assert close(algebraic_norm(a), cstar_norm(a), NORM_TOLERANCE)


def test_hyperbolic_witness():
    witness = hyperbolic_cstar_witness()
    assert witness['element'] == '1 + j'
    assert witness['x_star_x'] == '0'
    assert witness['spectrum'] == ['0', '2']
    assert witness['norm'] == 2
    assert witness['norm_squared'] == 4
    assert witness['norm_x_star_x'] == 0
    # exact on every path, never a float
    for key in ('norm', 'norm_squared', 'norm_x_star_x'):
        assert type(witness[key]) is int, (key, witness[key])
    assert witness['cstar_identity_holds'] is False


def test_involution_decompose():
    x1, x2 = involution_decompose(I * pauli_y())
    assert x1 == zero_matrix(2)
    assert x2.is_hermitean() and x2 == pauli_y()

    sampler = Sampler(33)
    a, b = sampler.hermitean(3), sampler.hermitean(3)
    parts = involution_decompose(a + b * I)
    assert parts == (a, b)
    assert involution_decompose(a) == (a, zero_matrix(3))

    split = MatrixElement([[1, 2 + J], [2 - J, 3]])
    s1, s2 = involution_decompose(split)
    assert s1 + s2 * J == split


def test_state_validation():
    for density in (MatrixElement([[1, 1], [0, 0]]), diag(2, -1), diag(Fraction(1, 2), Fraction(1, 4))):
        try:
            State.from_density(density)
        except StateError:
            continue
        raise AssertionError(f"{density} is not a state")
    assert State.from_density(diag(Fraction(1, 3), Fraction(2, 3))).n == 2


def test_gns_dimensions():
    assert gns_construct(pure_state(2)).hilbert_dim == 2
    assert gns_construct(maximally_mixed_state(2)).hilbert_dim == 4
    assert gns_construct(pure_state(3)).hilbert_dim == 3
    mixed = gns_construct(maximally_mixed_state(3))
    assert mixed.hilbert_dim == mixed.rank == 9


def test_gns_reproduces_states():
    sampler = Sampler(34)
    for n in (2, 3):
        for _ in range(10):
            state = random_state(sampler, n, sampler.rng.randint(1, n))
            representation = gns_construct(state)
            assert representation.hilbert_dim == n * density_rank(state)
            errors = representation_errors(representation, state, random_complex_matrices(sampler, n, 5))
            assert errors['phi_error'] < TOLERANCE
            assert errors['multiplicativity_error'] < TOLERANCE
            assert errors['star_error'] < TOLERANCE
            assert errors['norm_bound_error'] < NORM_TOLERANCE


TESTS = [
    test_spectra,
    test_non_diagonal_split_spectrum_unsupported,
    test_cstar_norm,
    test_cstar_identity_on_random_matrices,
    test_algebraic_norm_matches_cstar_on_hermitean,
    test_hyperbolic_witness,
    test_involution_decompose,
    test_state_validation,
    test_gns_dimensions,
    test_gns_reproduces_states,
]


def main():
    """Run every test in this file"""
    print("🧪 Spectrum, Norm and GNS Tests")
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
