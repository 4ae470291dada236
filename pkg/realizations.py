"""
Product Pair Realizations
Concrete (alpha, sigma) pairs for the composability classes:
  - parabolic (x = 0): Poisson bracket and pointwise product on phase-space polynomials
  - parabolic-symmetric (x = 0): the symmetric bracket <x_i, p_i> = <p_i, x_i> = 1
  - elliptic (x = -h^2/4): commutator / (i h) and anticommutator / 2 on complex matrices
  - hyperbolic (x = +1): commutator / 2 and anticommutator / 2 on real or split-complex matrices
  - Moyal (x = -h^2/4): sine / cosine parts of the star product with formal or fixed h
"""

import dataclasses
import logging
from enum import Enum
from fractions import Fraction
from functools import partial
from math import factorial
from typing import Any, Callable, Optional

from errors import DimensionError, TowerError
from matrices import MatrixElement, identity, zero_matrix
from phase_space import PhasePolynomial
from scalars import COMPLEX_UNIT, HBAR, SPLIT_UNIT, Complex, I, J

logger = logging.getLogger(__name__)


class CompositionClass(str, Enum):
    ELLIPTIC = 'elliptic'
    PARABOLIC = 'parabolic'
    HYPERBOLIC = 'hyperbolic'
    PARABOLIC_SYMMETRIC = 'parabolic-symmetric'


@dataclasses.dataclass(frozen=True)
class ProductPair:
    """A realization's products; for the parabolic-symmetric class `alpha` holds the symmetric bracket.

    carrier is 'matrix' or 'polynomial'; entry_unit is the unit square matrix entries are sampled with.
    """
    name: str
    composition_class: CompositionClass
    x: Any
    alpha: Callable
    sigma: Callable
    j_scalar: Any
    hbar: Optional[Any] = None
    carrier: str = 'polynomial'
    entry_unit: Optional[int] = None

    @property
    def symmetric_bracket(self):
        return self.composition_class is CompositionClass.PARABOLIC_SYMMETRIC

    def beta(self, f, g):
        return beta_product(f, g, self)


# ===== PHASE-SPACE PRODUCTS =====

def _check_dimensions(f, g):
    if not isinstance(f, PhasePolynomial) or not isinstance(g, PhasePolynomial):
        raise DimensionError("phase-space products expect PhasePolynomial operands")
    if f.dimension != g.dimension:
        raise DimensionError(f"dimension mismatch: {f.dimension} vs {g.dimension}")


def poisson_bracket(f, g):
    """{F, G} = sum_i dF/dx_i dG/dp_i - dF/dp_i dG/dx_i"""
    _check_dimensions(f, g)
    result = PhasePolynomial.zero(f.dimension)
    for i in range(1, f.dimension + 1):
        result = result + f.d_x(i) * g.d_p(i) - f.d_p(i) * g.d_x(i)
    return result


def symmetric_bracket(f, g):
    """<F, G> = sum_i dF/dx_i dG/dp_i + dF/dp_i dG/dx_i"""
    _check_dimensions(f, g)
    result = PhasePolynomial.zero(f.dimension)
    for i in range(1, f.dimension + 1):
        result = result + f.d_x(i) * g.d_p(i) + f.d_p(i) * g.d_x(i)
    return result


def pointwise_product(f, g):
    _check_dimensions(f, g)
    return f * g


def bidifferential_powers(f, g):
    """Yield (k, nabla^k(F, G)) until every term vanishes; each step lowers total degree by 2"""
    _check_dimensions(f, g)
    d = f.dimension
    zero = (0,) * (2 * d)
    f_cache, g_cache = {}, {}

    def derived(poly, cache, orders):
        if orders not in cache:
            cache[orders] = poly.partial(orders)
        return cache[orders]

    def bump(orders, index):
        bumped = list(orders)
        bumped[index] += 1
        return tuple(bumped)

    layer = {(zero, zero): Fraction(1)}
    k = 0
    while layer:
        total = PhasePolynomial.zero(d)
        for (a, b), c in layer.items():
            total = total + derived(f, f_cache, a) * derived(g, g_cache, b) * c
        yield k, total
        following = {}
        for (a, b), c in layer.items():
            for i in range(d):
                # left d/dx_i right d/dp_i minus left d/dp_i right d/dx_i
                for key, sign in (((bump(a, i), bump(b, d + i)), 1),
                                  ((bump(a, d + i), bump(b, i)), -1)):
                    following[key] = following.get(key, Fraction(0)) + sign * c
        layer = {
            (a, b): c for (a, b), c in following.items()
            if c != 0 and not derived(f, f_cache, a).is_zero() and not derived(g, g_cache, b).is_zero()
        }
        k += 1


def _planck(hbar):
    return HBAR if hbar is None else hbar


def _moyal_series(f, g, hbar, parity):
    """sum over k of the given parity of c_k nabla^k(F, G) with c_k = (-h^2/4)^(k//2) / k!

    The odd part is the Moyal bracket with the 1/(i h) already cancelled, so h = 0 leaves
    exactly the Poisson bracket.
    """
    planck = _planck(hbar)
    square = -planck * planck / 4
    result = PhasePolynomial.zero(f.dimension)
    weight = Fraction(1)
    for k, term in bidifferential_powers(f, g):
        if k % 2 == parity:
            result = result + term * (weight / factorial(k))
        if k % 2 == 1:
            weight = weight * square
    return result


def moyal_star(f, g, hbar=None):
    """F * G = sum_k (i h / 2)^k / k! nabla^k(F, G); exact because the series terminates"""
    j_scalar = I * _planck(hbar) / 2
    result = PhasePolynomial.zero(f.dimension)
    for k, term in bidifferential_powers(f, g):
        result = result + term * (j_scalar ** k / factorial(k))
    return result


def moyal_alpha(f, g, hbar=None):
    """Moyal bracket (F * G - G * F) / (i h); the Poisson bracket at h = 0"""
    return _moyal_series(f, g, hbar, 1)


def moyal_sigma(f, g, hbar=None):
    """(F * G + G * F) / 2; the pointwise product at h = 0"""
    return _moyal_series(f, g, hbar, 0)


# ===== MATRIX PRODUCTS =====

def _check_matrices(a, b):
    if not isinstance(a, MatrixElement) or not isinstance(b, MatrixElement):
        raise DimensionError("matrix products expect MatrixElement operands")
    if a.n != b.n:
        raise DimensionError(f"size mismatch: {a.n} vs {b.n}")


def _check_tower(element, composition_class):
    unit = element.unit_square
    if composition_class is CompositionClass.ELLIPTIC and unit == SPLIT_UNIT:
        raise TowerError("elliptic matrices must have complex (i) entries, found j")
    if composition_class is CompositionClass.HYPERBOLIC and unit == COMPLEX_UNIT:
        raise TowerError("hyperbolic matrices must be real or split-complex, found i")


def commutator(a, b):
    _check_matrices(a, b)
    return a @ b - b @ a


def matrix_sigma(a, b):
    """(AB + BA) / 2"""
    _check_matrices(a, b)
    return (a @ b + b @ a) / 2


def elliptic_alpha(a, b, hbar=Fraction(2)):
    """(AB - BA) / (i h)"""
    _check_matrices(a, b)
    _check_tower(a, CompositionClass.ELLIPTIC)
    _check_tower(b, CompositionClass.ELLIPTIC)
    return commutator(a, b) / (I * hbar)


def hyperbolic_alpha(a, b):
    """(AB - BA) / 2"""
    _check_matrices(a, b)
    _check_tower(a, CompositionClass.HYPERBOLIC)
    _check_tower(b, CompositionClass.HYPERBOLIC)
    return commutator(a, b) / 2


def matrix_alpha(a, b, pair):
    if pair.composition_class is CompositionClass.ELLIPTIC:
        return elliptic_alpha(a, b, pair.hbar)
    if pair.composition_class is CompositionClass.HYPERBOLIC:
        return hyperbolic_alpha(a, b)
    raise TowerError(f"matrix_alpha has no {pair.composition_class.value} realization")


def beta_product(f, g, pair):
    """beta = sigma + J alpha; associative in every class"""
    return pair.sigma(f, g) + pair.alpha(f, g) * pair.j_scalar


# ===== PAIR CONSTRUCTORS =====

def elliptic_pair(hbar=Fraction(2)):
    """Complex matrices; hbar = 2 gives the normalized class x = -1"""
    hbar = Fraction(hbar)
    if hbar <= 0:
        raise TowerError(f"hbar must be a positive rational, got {hbar}")
    return ProductPair(
        name='elliptic-matrices',
        composition_class=CompositionClass.ELLIPTIC,
        x=-hbar * hbar / 4,
        alpha=partial(elliptic_alpha, hbar=hbar),
        sigma=matrix_sigma,
        j_scalar=Complex(0, hbar / 2),
        hbar=hbar,
        carrier='matrix',
        entry_unit=COMPLEX_UNIT,
    )


def hyperbolic_pair(split=False):
    """Real matrices with J = 1, or split-complex matrices with J = j"""
    return ProductPair(
        name='hyperbolic-split-matrices' if split else 'hyperbolic-matrices',
        composition_class=CompositionClass.HYPERBOLIC,
        x=Fraction(1),
        alpha=hyperbolic_alpha,
        sigma=matrix_sigma,
        j_scalar=J if split else Fraction(1),
        carrier='matrix',
        entry_unit=SPLIT_UNIT if split else None,
    )


def parabolic_pair():
    return ProductPair(
        name='classical-poisson',
        composition_class=CompositionClass.PARABOLIC,
        x=Fraction(0),
        alpha=poisson_bracket,
        sigma=pointwise_product,
        j_scalar=Fraction(0),
    )


def parabolic_symmetric_pair():
    return ProductPair(
        name='classical-symmetric-bracket',
        composition_class=CompositionClass.PARABOLIC_SYMMETRIC,
        x=Fraction(0),
        alpha=symmetric_bracket,
        sigma=pointwise_product,
        j_scalar=Fraction(0),
    )


def moyal_pair(hbar=None):
    """Moyal bracket and symmetrized star product; formal h unless a rational is given.

    A fixed h = 0 is the classical contraction: Poisson bracket, pointwise product, x = 0.
    """
    planck = HBAR if hbar is None else Fraction(hbar)
    fixed = None if hbar is None else planck
    classical = fixed is not None and fixed == 0
    return ProductPair(
        name='moyal' if hbar is None else f'moyal-h={planck}',
        composition_class=CompositionClass.PARABOLIC if classical else CompositionClass.ELLIPTIC,
        x=-planck * planck / 4,
        alpha=partial(moyal_alpha, hbar=fixed),
        sigma=partial(moyal_sigma, hbar=fixed),
        j_scalar=I * planck / 2,
        hbar=planck,
    )


# ===== NEGATIVE CONTROLS =====

def corrupt_alpha_scale(pair, factor=2):
    """Same pair with alpha rescaled; Leibniz and Jacobi survive, the composition law does not"""
    original = pair.alpha
    return dataclasses.replace(
        pair,
        name=f"{pair.name}[alpha*{factor}]",
        alpha=lambda f, g: original(f, g) * factor,
    )


def with_x(pair, x):
    """Same products with a different composability constant"""
    return dataclasses.replace(pair, name=f"{pair.name}[x={x}]", x=x)


# ===== UNITS =====

def unit_like(element):
    if isinstance(element, MatrixElement):
        return identity(element.n)
    if isinstance(element, PhasePolynomial):
        return PhasePolynomial.one(element.dimension)
    raise DimensionError(f"no unit for {type(element).__name__}")


def zero_like(element):
    if isinstance(element, MatrixElement):
        return zero_matrix(element.n)
    if isinstance(element, PhasePolynomial):
        return PhasePolynomial.zero(element.dimension)
    raise DimensionError(f"no zero for {type(element).__name__}")
