"""
Spectra, Norms and the GNS Construction
Exact inputs, floating spectra: matrices are built over exact scalars and converted to
complex128 only for eigenvalue and singular value steps.

Split-complex spectra are supported for diagonal matrices only, where a + jb - lambda is
non-invertible exactly when lambda = a +/- b.
"""

import dataclasses
import logging
from fractions import Fraction
from typing import Tuple

import numpy as np

from config import Config
from errors import StateError, TowerError, UnsupportedSpectrumError
from matrices import MatrixElement, identity, matrix_unit
from scalars import COMPLEX_UNIT, SPLIT_UNIT, Complex, I, J, format_scalar

logger = logging.getLogger(__name__)


# ===== SPECTRA AND NORMS =====

def _split_diagonal_spectrum(element):
    values = []
    for i in range(element.n):
        entry = element.entries[i, i]
        a, b = (entry.re, entry.im) if isinstance(entry, Complex) else (Fraction(entry), Fraction(0))
        values.extend([a - abs(b), a + abs(b)])
    return sorted(values)


def spectrum(element):
    """Sorted spectral values: floats for complex matrices, exact rationals for split-complex diagonals"""
    if element.unit_square == SPLIT_UNIT:
        if not element.is_diagonal():
            raise UnsupportedSpectrumError(
                "split-complex spectra are only defined here for diagonal matrices")
        return _split_diagonal_spectrum(element)
    array = element.to_numpy()
    if element.is_hermitean():
        return sorted(float(v) for v in np.linalg.eigvalsh(array))
    return sorted((complex(v) for v in np.linalg.eigvals(array)), key=lambda v: (v.real, v.imag))


def algebraic_norm(element):
    """sup |lambda| over the spectrum"""
    return max((abs(v) for v in spectrum(element)), default=0)


def cstar_norm(element):
    """sqrt of the spectral radius of A^dagger A"""
    if element.unit_square == SPLIT_UNIT:
        raise TowerError("the C* norm is defined for complex matrices only")
    array = element.to_numpy()
    gram = array.conj().T @ array
    return float(np.sqrt(max(np.linalg.eigvalsh(gram).max(), 0.0)))


def cstar_defect(element):
    """| ||A^dagger A|| - ||A||^2 |"""
    product = element.dagger() @ element
    return abs(cstar_norm(product) - cstar_norm(element) ** 2)


def hyperbolic_cstar_witness():
    """x = 1 + j: x* x = 0 while ||x|| = 2, so ||x* x|| != ||x||^2"""
    x = MatrixElement([[1 + J]])
    x_star_x = x.dagger() @ x
    # x* x = 0 has no imaginary part left, so stay on the exact split path explicitly
    values = _split_diagonal_spectrum(x)
    norm = max(abs(v) for v in values)
    witness = {
        'element': format_scalar(x.entries[0, 0]),
        'x_star_x': format_scalar(x_star_x.entries[0, 0]),
        'spectrum': [format_scalar(v) for v in values],
        'norm': _number(norm),
        'norm_squared': _number(norm * norm),
        'norm_x_star_x': _number(max(abs(v) for v in _split_diagonal_spectrum(x_star_x))),
    }
    witness['cstar_identity_holds'] = witness['norm_x_star_x'] == witness['norm_squared']
    logger.info(f"Hyperbolic witness: ||x*x|| = {witness['norm_x_star_x']}, ||x||^2 = {witness['norm_squared']}")
    return witness


def _number(value):
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    if isinstance(value, Fraction):
        return str(value)
    return value


def involution_decompose(element, j_scalar=None):
    """x = x1 + J x2 with x1 = (x + x^dagger)/2 and x2 = (x - x^dagger)/(2J), both hermitean"""
    if j_scalar is None:
        j_scalar = J if element.unit_square == SPLIT_UNIT else I
    adjoint = element.dagger()
    return (element + adjoint) / 2, (element - adjoint) / (j_scalar * 2)


# ===== STATES =====

@dataclasses.dataclass(frozen=True)
class State:
    density: MatrixElement

    @property
    def n(self):
        return self.density.n

    @classmethod
    def from_density(cls, density, tolerance=Config.STATE_TOLERANCE):
        if density.unit_square == SPLIT_UNIT:
            raise StateError("density matrices must have complex entries")
        if not density.is_hermitean():
            raise StateError("density matrix is not hermitean")
        if density.trace() != 1:
            raise StateError(f"density matrix has trace {format_scalar(density.trace())}, expected 1")
        smallest = float(np.linalg.eigvalsh(density.to_numpy()).min())
        if smallest < -tolerance:
            raise StateError(f"density matrix has negative eigenvalue {smallest:.3e}")
        return cls(density)

    def expectation(self, element):
        return complex(np.trace(self.density.to_numpy() @ _as_array(element)))


def pure_state(n, index=1):
    return State.from_density(matrix_unit(n, index, index))


def maximally_mixed_state(n):
    return State.from_density(identity(n) / n)


def _as_array(element):
    if isinstance(element, MatrixElement):
        return element.to_numpy()
    return np.asarray(element, dtype=complex)


# ===== GNS =====

@dataclasses.dataclass(frozen=True, eq=False)
class GnsRepresentation:
    n: int
    density: np.ndarray
    basis: Tuple[np.ndarray, ...]
    omega: np.ndarray
    rank: int

    @property
    def hilbert_dim(self):
        return len(self.basis)

    def inner(self, a, b):
        """<A, B> = tr(rho A^dagger B)"""
        return complex(np.trace(self.density @ a.conj().T @ b))

    def pi(self, element):
        """Left multiplication in the orthonormal basis: pi(A)_ij = <b_i, A b_j>"""
        a = _as_array(element)
        return np.array([[self.inner(bi, a @ bj) for bj in self.basis] for bi in self.basis],
                        dtype=complex)

    def vector_state(self, element):
        """<Omega, pi(A) Omega>"""
        return complex(self.omega.conj() @ self.pi(element) @ self.omega)


def _gram(density, units):
    return np.array([[np.trace(density @ a.conj().T @ b) for b in units] for a in units], dtype=complex)


def _orthonormalize(vectors, inner, tolerance):
    """Modified Gram-Schmidt with a second re-orthogonalization pass"""
    basis = []
    for vector in vectors:
        residual = vector.copy()
        for _ in range(2):
            for b in basis:
                residual = residual - inner(b, residual) * b
        norm = np.sqrt(max(inner(residual, residual).real, 0.0))
        if norm > tolerance:
            basis.append(residual / norm)
    return basis


def gns_construct(state, tolerance=Config.RANK_TOLERANCE):
    """Hilbert space M_n / N with N = {A : tr(rho A^dagger A) = 0}"""
    n = state.n
    density = state.density.to_numpy()
    units = [matrix_unit(n, i, k).to_numpy() for i in range(1, n + 1) for k in range(1, n + 1)]

    singular = np.linalg.svd(_gram(density, units), compute_uv=False)
    rank = int((singular > tolerance).sum())

    def inner(a, b):
        return complex(np.trace(density @ a.conj().T @ b))

    basis = _orthonormalize(units, inner, np.sqrt(tolerance))
    if len(basis) != rank:
        logger.warning(f"Gram-Schmidt kept {len(basis)} vectors but the Gram matrix has rank {rank}")

    eye = np.eye(n, dtype=complex)
    omega = np.array([inner(b, eye) for b in basis], dtype=complex)
    representation = GnsRepresentation(n, density, tuple(basis), omega, rank)
    logger.info(f"GNS: n = {n}, hilbert_dim = {representation.hilbert_dim}, Gram rank = {rank}")
    return representation


def density_rank(state, tolerance=Config.RANK_TOLERANCE):
    return int((np.linalg.eigvalsh(state.density.to_numpy()) > tolerance).sum())


# ===== ERROR METRICS =====

def representation_errors(representation, state, elements):
    """Worst-case deviations over sample pairs (A, B) drawn from `elements`"""
    errors = {
        'phi_error': 0.0,
        'multiplicativity_error': 0.0,
        'star_error': 0.0,
        'cstar_error': 0.0,
        'norm_bound_error': 0.0,
    }
    for a, b in zip(elements, elements[1:] + elements[:1]):
        pa = representation.pi(a)
        errors['phi_error'] = max(errors['phi_error'],
                                  abs(representation.vector_state(a) - state.expectation(a)))
        errors['multiplicativity_error'] = max(errors['multiplicativity_error'], float(
            np.linalg.norm(representation.pi(a @ b) - pa @ representation.pi(b))))
        errors['star_error'] = max(errors['star_error'], float(
            np.linalg.norm(representation.pi(a.dagger()) - pa.conj().T)))
        errors['cstar_error'] = max(errors['cstar_error'], cstar_defect(a))
        operator_norm = float(np.linalg.norm(pa, 2))
        errors['norm_bound_error'] = max(errors['norm_bound_error'], operator_norm - cstar_norm(a))
    return errors


def random_state(sampler, n, rank=None):
    return State.from_density(sampler.density_matrix(n, rank))


def random_complex_matrices(sampler, n, count):
    return [sampler.matrix(n, COMPLEX_UNIT) for _ in range(count)]
