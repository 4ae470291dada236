"""
Exact Matrix Elements
Dense n x n matrices over the exact scalar tower, backed by numpy object arrays.
The involution is the conjugate transpose.
"""

import json
import logging
from fractions import Fraction

import numpy as np

from errors import DimensionError, ScalarError
from scalars import (I, format_scalar, is_scalar, scalar_conj, to_complex,
                     unit_square_of)

logger = logging.getLogger(__name__)

_conjugate = np.frompyfunc(scalar_conj, 1, 1)


def _as_scalar(value):
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if not is_scalar(value):
        raise ScalarError(f"matrix entry {value!r} is not an exact scalar")
    return value


class MatrixElement:
    """Square matrix with exact entries sharing a single unit square"""

    __slots__ = ('entries',)

    def __init__(self, entries):
        rows = [list(row) for row in entries]
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise DimensionError("matrix must be square and non-empty")
        array = np.empty((n, n), dtype=object)
        for i, row in enumerate(rows):
            for k, value in enumerate(row):
                array[i, k] = _as_scalar(value)
        units = {unit_square_of(value) for value in array.flat} - {None}
        if len(units) > 1:
            raise ScalarError("matrix mixes i (i^2 = -1) and j (j^2 = +1) entries")
        array.flags.writeable = False
        object.__setattr__(self, 'entries', array)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixElement values are immutable")

    @classmethod
    def _wrap(cls, array):
        return cls(array.tolist())

    # ===== STRUCTURE =====

    @property
    def n(self):
        return self.entries.shape[0]

    @property
    def unit_square(self):
        """-1 or +1 when some entry has an imaginary part, else None"""
        units = {unit_square_of(value) for value in self.entries.flat} - {None}
        return units.pop() if units else None

    def _check(self, other):
        if not isinstance(other, MatrixElement):
            raise DimensionError(f"expected a MatrixElement, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionError(f"size mismatch: {self.n} vs {other.n}")

    def dagger(self):
        """Conjugate transpose"""
        return MatrixElement._wrap(_conjugate(self.entries).T)

    def trace(self):
        total = Fraction(0)
        for i in range(self.n):
            total = total + self.entries[i, i]
        return total

    def is_hermitean(self):
        return self == self.dagger()

    def is_diagonal(self):
        return all(self.entries[i, k] == 0
                   for i in range(self.n) for k in range(self.n) if i != k)

    def map_entries(self, transform):
        return MatrixElement([[transform(v) for v in row] for row in self.entries.tolist()])

    # ===== ARITHMETIC =====

    def __add__(self, other):
        if not isinstance(other, MatrixElement):
            return NotImplemented
        self._check(other)
        return MatrixElement._wrap(self.entries + other.entries)

    def __sub__(self, other):
        if not isinstance(other, MatrixElement):
            return NotImplemented
        self._check(other)
        return MatrixElement._wrap(self.entries - other.entries)

    def __neg__(self):
        return self.map_entries(lambda v: -v)

    def __mul__(self, scalar):
        if not is_scalar(scalar):
            return NotImplemented
        return self.map_entries(lambda v: v * scalar)

    def __rmul__(self, scalar):
        if not is_scalar(scalar):
            return NotImplemented
        return self.map_entries(lambda v: scalar * v)

    def __truediv__(self, scalar):
        if not is_scalar(scalar):
            return NotImplemented
        return self.map_entries(lambda v: v / scalar)

    def __matmul__(self, other):
        if not isinstance(other, MatrixElement):
            return NotImplemented
        self._check(other)
        return MatrixElement._wrap(np.matmul(self.entries, other.entries))

    def __eq__(self, other):
        if not isinstance(other, MatrixElement):
            return NotImplemented
        if other.n != self.n:
            return False
        return all(a == b for a, b in zip(self.entries.flat, other.entries.flat))

    __hash__ = None

    # ===== CONVERSION =====

    def to_numpy(self):
        """complex128 array; split-complex entries raise ScalarError"""
        return np.array([[to_complex(v) for v in row] for row in self.entries.tolist()],
                        dtype=complex)

    def to_json(self):
        return [[format_scalar(v) for v in row] for row in self.entries.tolist()]

    def __repr__(self):
        return f"MatrixElement({self.to_json()!r})"

    def __str__(self):
        return json.dumps(self.to_json())


# ===== CONSTRUCTORS AND FIXTURES =====

def identity(n):
    return MatrixElement([[Fraction(int(i == k)) for k in range(n)] for i in range(n)])


def zero_matrix(n):
    return MatrixElement([[Fraction(0)] * n for _ in range(n)])


def matrix_unit(n, row, column):
    """E_{row,column} with 1-based indices"""
    entries = [[Fraction(0)] * n for _ in range(n)]
    entries[row - 1][column - 1] = Fraction(1)
    return MatrixElement(entries)


def diag(*values):
    n = len(values)
    return MatrixElement([[values[i] if i == k else Fraction(0) for k in range(n)]
                          for i in range(n)])


def pauli_x():
    return MatrixElement([[0, 1], [1, 0]])


def pauli_y():
    return MatrixElement([[0, -I], [I, 0]])


def pauli_z():
    return MatrixElement([[1, 0], [0, -1]])


def kron(a, b):
    """Kronecker product, left-slot-major: (a (x) b)[i*m + k, j*m + l] = a[i, j] * b[k, l]"""
    if not isinstance(a, MatrixElement) or not isinstance(b, MatrixElement):
        raise DimensionError("kron expects two MatrixElement operands")
    return MatrixElement._wrap(np.kron(a.entries, b.entries))


def swap_permutation(n1, n2):
    """Permutation P with P (A (x) B) P^T = B (x) A for A of size n1, B of size n2"""
    size = n1 * n2
    entries = [[Fraction(0)] * size for _ in range(size)]
    for i in range(n1):
        for k in range(n2):
            entries[k * n1 + i][i * n2 + k] = Fraction(1)
    return MatrixElement(entries)


def swap_tensor(element, n1, n2):
    """Apply the canonical swap isomorphism to an element of M_n1 (x) M_n2"""
    if element.n != n1 * n2:
        raise DimensionError(f"element of size {element.n} is not in M_{n1} (x) M_{n2}")
    p = swap_permutation(n1, n2)
    return p @ element @ p.dagger()


def from_json(rows, parse_scalar):
    """Build a matrix from JSON rows of scalar strings (or numbers)"""
    return MatrixElement([[parse_scalar(v) if isinstance(v, str) else Fraction(v) for v in row]
                          for row in rows])
