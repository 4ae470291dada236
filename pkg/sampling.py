"""
Seeded Random Elements
Small-coefficient rationals, scalars, matrices, phase-space polynomials and density matrices
for the identity and composition suites. Every draw goes through one random.Random so a seed
reproduces a whole run.
"""

import logging
import random
from fractions import Fraction

from config import Config
from errors import DimensionError
from matrices import MatrixElement
from phase_space import PhasePolynomial
from scalars import COMPLEX_UNIT, HBAR, Complex

logger = logging.getLogger(__name__)


class Sampler:
    """Deterministic generator of exact test elements"""

    def __init__(self, seed=None, settings=Config):
        self.seed = settings.DEFAULT_SEED if seed is None else seed
        self.settings = settings
        self.rng = random.Random(self.seed)

    # ===== SCALARS =====

    def rational(self, allow_zero=True):
        while True:
            numerator = self.rng.randint(-self.settings.MAX_NUMERATOR, self.settings.MAX_NUMERATOR)
            if numerator or allow_zero:
                break
        return Fraction(numerator, self.rng.randint(1, self.settings.MAX_DENOMINATOR))

    def scalar(self, unit_square=None):
        """Rational when unit_square is None, otherwise a + u*b"""
        if unit_square is None:
            return self.rational()
        return Complex(self.rational(), self.rational(), unit_square)

    def hbar_scalar(self, unit_square=COMPLEX_UNIT):
        """c0 + c1*h with complex coefficients; keeps Moyal samples genuinely h-dependent"""
        return self.scalar(unit_square) + self.scalar(unit_square) * HBAR

    # ===== MATRICES =====

    def matrix(self, n=None, unit_square=None):
        n = n or self.rng.choice(self.settings.MATRIX_SIZES)
        return MatrixElement([[self.scalar(unit_square) for _ in range(n)] for _ in range(n)])

    def hermitean(self, n, unit_square=COMPLEX_UNIT):
        a = self.matrix(n, unit_square)
        return (a + a.dagger()) / 2

    def density_matrix(self, n, rank=None):
        """B B^dagger / tr(B B^dagger) for a random complex n x rank matrix B"""
        rank = rank or n
        if not 1 <= rank <= n:
            raise DimensionError(f"state rank {rank} outside 1..{n}")
        while True:
            columns = [[self.scalar(COMPLEX_UNIT) for _ in range(rank)] for _ in range(n)]
            padded = MatrixElement([row + [Fraction(0)] * (n - rank) for row in columns])
            gram = padded @ padded.dagger()
            trace = gram.trace()
            if trace != 0:
                return gram / trace

    # ===== POLYNOMIALS =====

    def exponents(self, dimension, max_degree):
        total = self.rng.randint(0, max_degree)
        slots = [0] * (2 * dimension)
        for _ in range(total):
            slots[self.rng.randrange(2 * dimension)] += 1
        return tuple(slots)

    def polynomial(self, dimension=1, max_degree=None, max_terms=None, hbar=False):
        max_degree = self.settings.MAX_POLY_DEGREE if max_degree is None else max_degree
        max_terms = max_terms or self.settings.MAX_POLY_TERMS
        terms = {}
        for _ in range(self.rng.randint(1, max_terms)):
            coefficient = self.hbar_scalar() if hbar else self.rational(allow_zero=False)
            terms[self.exponents(dimension, max_degree)] = coefficient
        return PhasePolynomial(dimension, terms)

    # ===== REALIZATION ELEMENTS =====

    def element(self, pair, size=None, max_degree=None, max_terms=None):
        """Random element of the pair's carrier; size is n for matrices, d for polynomials"""
        if pair.carrier == 'matrix':
            return self.matrix(size, pair.entry_unit)
        formal = pair.hbar is not None and not isinstance(pair.hbar, Fraction)
        return self.polynomial(size or 1, max_degree, max_terms, hbar=formal)

    def elements(self, pair, count, size=None):
        if size is None and pair.carrier == 'matrix':
            size = self.rng.choice(self.settings.MATRIX_SIZES)
        return tuple(self.element(pair, size) for _ in range(count))
