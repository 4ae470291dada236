"""
Hypothesis Strategies
Exact scalars, matrices, phase-space polynomials and formal product trees for the property tests.
Bounds follow Config so shrunk counterexamples look like the ones the CLI reports.
"""

from fractions import Fraction

from hypothesis import strategies as st

from config import Config
from matrices import MatrixElement
from phase_space import PhasePolynomial
from scalars import COMPLEX_UNIT, HbarPoly, Complex
from solver import ALPHA, PI, RHO, SIGMA, TAU, THETA, UNIT, FormalExpr

ATOMS = (UNIT, 'f', 'g', 'h')
SYMBOLS = (RHO, THETA, SIGMA, TAU, PI, ALPHA)


def rationals(nonzero=False):
    numerators = st.integers(-Config.MAX_NUMERATOR, Config.MAX_NUMERATOR)
    if nonzero:
        numerators = numerators.filter(bool)
    return st.builds(Fraction, numerators, st.integers(1, Config.MAX_DENOMINATOR))


def complex_scalars(unit_square=COMPLEX_UNIT):
    return st.builds(Complex, rationals(), rationals(), st.just(unit_square))


def hbar_scalars(unit_square=COMPLEX_UNIT, max_power=2):
    """c0 + c1 h + ... with complex coefficients"""
    coefficients = st.lists(complex_scalars(unit_square), min_size=1, max_size=max_power + 1)
    return coefficients.map(lambda cs: HbarPoly(dict(enumerate(cs))))


@st.composite
def matrices(draw, n=None, unit_square=None):
    n = n or draw(st.sampled_from(Config.MATRIX_SIZES))
    entries = rationals() if unit_square is None else complex_scalars(unit_square)
    return MatrixElement([[draw(entries) for _ in range(n)] for _ in range(n)])


@st.composite
def exponents(draw, dimension, max_degree):
    slots = [0] * (2 * dimension)
    for index in draw(st.lists(st.integers(0, 2 * dimension - 1), max_size=max_degree)):
        slots[index] += 1
    return tuple(slots)


@st.composite
def polynomials(draw, dimension=None, max_degree=Config.MAX_POLY_DEGREE,
                max_terms=Config.MAX_POLY_TERMS, hbar=False):
    dimension = dimension or draw(st.integers(1, 3))
    coefficients = hbar_scalars() if hbar else rationals(nonzero=True)
    terms = draw(st.dictionaries(exponents(dimension, max_degree), coefficients,
                                 min_size=1, max_size=max_terms))
    return PhasePolynomial(dimension, terms)


def trees(max_leaves=5):
    """Atoms or (symbol, left, right) over the solver's product symbols"""
    return st.recursive(
        st.sampled_from(ATOMS),
        lambda children: st.tuples(st.sampled_from(SYMBOLS), children, children),
        max_leaves=max_leaves,
    )


@st.composite
def formal_exprs(draw, slots=2, max_terms=4):
    expr = FormalExpr()
    for _ in range(draw(st.integers(1, max_terms))):
        coefficient = draw(st.integers(-3, 3))
        expr = expr + FormalExpr.term(coefficient, *(draw(trees()) for _ in range(slots)))
    return expr
