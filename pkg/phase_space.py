"""
Phase-Space Polynomials
Multivariate polynomials in canonical coordinates (x1..xd, p1..pd) with exact scalar coefficients.

Exponent vectors have length 2d: the x block first, then the p block.
"""

import logging
from fractions import Fraction
from math import prod
from types import MappingProxyType

from errors import DimensionError, ScalarError
from scalars import HbarPoly, format_terms, is_scalar, scalar_terms

logger = logging.getLogger(__name__)


def _graded_lex_key(exponents):
    # total degree first, then lexicographic with x1 most significant
    return (sum(exponents), exponents)


def _falling(n, k):
    return prod(range(n - k + 1, n + 1))


class PhasePolynomial:
    """Polynomial on a 2d-dimensional phase space; zero terms are never stored"""

    __slots__ = ('dimension', 'terms')

    def __init__(self, dimension, terms=None):
        if not isinstance(dimension, int) or dimension < 1:
            raise DimensionError(f"phase-space dimension must be a positive integer, got {dimension!r}")
        cleaned = {}
        for exponents, coefficient in (terms or {}).items():
            exponents = tuple(exponents)
            if len(exponents) != 2 * dimension or any(e < 0 for e in exponents):
                raise DimensionError(f"exponent vector {exponents} does not fit dimension {dimension}")
            if not is_scalar(coefficient):
                raise ScalarError(f"polynomial coefficient {coefficient!r} is not a scalar")
            if isinstance(coefficient, int):
                coefficient = Fraction(coefficient)
            if coefficient != 0:
                cleaned[exponents] = coefficient
        object.__setattr__(self, 'dimension', dimension)
        object.__setattr__(self, 'terms', MappingProxyType(cleaned))

    def __setattr__(self, name, value):
        raise AttributeError("PhasePolynomial values are immutable")

    # ===== CONSTRUCTORS =====

    @classmethod
    def constant(cls, dimension, value):
        return cls(dimension, {(0,) * (2 * dimension): value})

    @classmethod
    def one(cls, dimension):
        return cls.constant(dimension, Fraction(1))

    @classmethod
    def zero(cls, dimension):
        return cls(dimension)

    @classmethod
    def variable(cls, dimension, kind, index):
        """x_index or p_index, 1-based"""
        if kind not in ('x', 'p') or not 1 <= index <= dimension:
            raise DimensionError(f"no variable {kind}{index} in dimension {dimension}")
        exponents = [0] * (2 * dimension)
        exponents[index - 1 + (dimension if kind == 'p' else 0)] = 1
        return cls(dimension, {tuple(exponents): Fraction(1)})

    # ===== STRUCTURE =====

    @property
    def degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: _graded_lex_key(item[0]), reverse=True)

    def _check(self, other):
        if not isinstance(other, PhasePolynomial):
            raise DimensionError(f"expected a PhasePolynomial, got {type(other).__name__}")
        if other.dimension != self.dimension:
            raise DimensionError(f"dimension mismatch: {self.dimension} vs {other.dimension}")

    def map_coefficients(self, transform):
        return PhasePolynomial(self.dimension, {e: transform(c) for e, c in self.terms.items()})

    def at_hbar(self, value):
        """Substitute h = value in every coefficient"""
        return self.map_coefficients(lambda c: c.at(value) if isinstance(c, HbarPoly) else c)

    def with_dimension(self, dimension):
        """Embed into a larger phase space; new variables are appended to each block"""
        if dimension < self.dimension:
            raise DimensionError(f"cannot embed dimension {self.dimension} into {dimension}")
        return self.embed(dimension, 0)

    def embed(self, dimension, offset):
        """Place this polynomial's variables at x/p indices offset+1..offset+d of a larger space"""
        d = self.dimension
        if offset + d > dimension:
            raise DimensionError(f"block {offset}+{d} does not fit dimension {dimension}")
        terms = {}
        for exponents, coefficient in self.terms.items():
            new = [0] * (2 * dimension)
            new[offset:offset + d] = exponents[:d]
            new[dimension + offset:dimension + offset + d] = exponents[d:]
            terms[tuple(new)] = coefficient
        return PhasePolynomial(dimension, terms)

    def permute_blocks(self, order, sizes):
        """Reorder consecutive variable blocks (same permutation applied to x and p)"""
        if sum(sizes) != self.dimension:
            raise DimensionError(f"block sizes {sizes} do not cover dimension {self.dimension}")
        starts = [sum(sizes[:k]) for k in range(len(sizes))]
        x_index = [i for b in order for i in range(starts[b], starts[b] + sizes[b])]
        index = x_index + [self.dimension + i for i in x_index]
        return PhasePolynomial(self.dimension, {
            tuple(e[i] for i in index): c for e, c in self.terms.items()
        })

    # ===== CALCULUS =====

    def partial(self, orders):
        """Mixed partial derivative; orders is a length-2d vector of derivative counts"""
        terms = {}
        for exponents, coefficient in self.terms.items():
            if any(e < k for e, k in zip(exponents, orders)):
                continue
            factor = prod(_falling(e, k) for e, k in zip(exponents, orders))
            reduced = tuple(e - k for e, k in zip(exponents, orders))
            terms[reduced] = terms.get(reduced, Fraction(0)) + factor * coefficient
        return PhasePolynomial(self.dimension, terms)

    def derivative(self, variable_index):
        orders = [0] * (2 * self.dimension)
        orders[variable_index] = 1
        return self.partial(orders)

    def d_x(self, index):
        return self.derivative(index - 1)

    def d_p(self, index):
        return self.derivative(self.dimension + index - 1)

    # ===== ARITHMETIC =====

    def __add__(self, other):
        if is_scalar(other):
            other = PhasePolynomial.constant(self.dimension, other)
        elif not isinstance(other, PhasePolynomial):
            return NotImplemented
        self._check(other)
        merged = dict(self.terms)
        for exponents, coefficient in other.terms.items():
            merged[exponents] = merged.get(exponents, Fraction(0)) + coefficient
        return PhasePolynomial(self.dimension, merged)

    __radd__ = __add__

    def __neg__(self):
        return self.map_coefficients(lambda c: -c)

    def __sub__(self, other):
        if is_scalar(other) or isinstance(other, PhasePolynomial):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, scalar):
        return PhasePolynomial(self.dimension, {e: scalar * c for e, c in self.terms.items()})

    def __mul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        self._check(other)
        product = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exponents = tuple(a + b for a, b in zip(e1, e2))
                product[exponents] = product.get(exponents, Fraction(0)) + c1 * c2
        return PhasePolynomial(self.dimension, product)

    def __rmul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, scalar):
        if not is_scalar(scalar):
            return NotImplemented
        return PhasePolynomial(self.dimension, {e: c / scalar for e, c in self.terms.items()})

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = PhasePolynomial.one(self.dimension)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if is_scalar(other):
            other = PhasePolynomial.constant(self.dimension, other)
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        if other.dimension != self.dimension or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    __hash__ = None

    def __repr__(self):
        return f"PhasePolynomial({self.dimension}, {format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)


def _variable_factors(exponents, dimension):
    factors = []
    for block, name in ((0, 'x'), (dimension, 'p')):
        for i in range(dimension):
            e = exponents[block + i]
            if e == 1:
                factors.append(f"{name}{i + 1}")
            elif e > 1:
                factors.append(f"{name}{i + 1}^{e}")
    return tuple(factors)


def format_polynomial(polynomial):
    """Pretty-print in graded-lex order.

    The text carries variables, not the dimension: it re-parses to the same polynomial
    when given `dimension=polynomial.dimension`, and otherwise to the smallest space that
    holds its highest variable index.
    """
    flat = []
    for exponents, coefficient in polynomial.sorted_terms():
        variables = _variable_factors(exponents, polynomial.dimension)
        for c, factors in scalar_terms(coefficient):
            flat.append((c, factors + variables))
    return format_terms(flat)
