"""
Exact Scalar Tower
Rationals, complex / split-complex rationals, and polynomials in a formal Planck parameter h.

Promotion is one-directional: Fraction -> Complex -> HbarPoly. Values are immutable.
"""

import logging
from fractions import Fraction
from types import MappingProxyType

from errors import ScalarError

logger = logging.getLogger(__name__)

COMPLEX_UNIT = -1  # i^2 = -1
SPLIT_UNIT = 1     # j^2 = +1
UNIT_NAMES = {COMPLEX_UNIT: 'i', SPLIT_UNIT: 'j'}


def _rational(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise ScalarError(f"expected an exact rational, got {type(value).__name__}")


def _joint_unit(a, b):
    if a.im and b.im and a.unit_square != b.unit_square:
        raise ScalarError("cannot mix i (i^2 = -1) and j (j^2 = +1) scalars")
    return a.unit_square if a.im else b.unit_square


class Complex:
    """a + u*b with u^2 = unit_square: u = i for -1, u = j for +1"""

    __slots__ = ('re', 'im', 'unit_square')

    def __init__(self, re=0, im=0, unit_square=COMPLEX_UNIT):
        if unit_square not in UNIT_NAMES:
            raise ScalarError(f"unit_square must be -1 or +1, got {unit_square}")
        object.__setattr__(self, 're', _rational(re))
        object.__setattr__(self, 'im', _rational(im))
        object.__setattr__(self, 'unit_square', unit_square)

    def __setattr__(self, name, value):
        raise AttributeError("Complex values are immutable")

    def _coerce(self, other):
        if isinstance(other, Complex):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Complex(other, 0, self.unit_square)
        return None

    @property
    def unit_name(self):
        return UNIT_NAMES[self.unit_square]

    def norm_form(self):
        """a^2 - u^2 b^2: a^2 + b^2 for complex, a^2 - b^2 for split-complex"""
        return self.re * self.re - self.unit_square * self.im * self.im

    def is_invertible(self):
        return self.norm_form() != 0

    def inverse(self):
        n = self.norm_form()
        if n == 0:
            raise ScalarError(f"{self} is not invertible")
        return Complex(self.re / n, -self.im / n, self.unit_square)

    def conjugate(self):
        return Complex(self.re, -self.im, self.unit_square)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Complex(self.re + o.re, self.im + o.im, _joint_unit(self, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Complex(self.re - o.re, self.im - o.im, _joint_unit(self, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        u = _joint_unit(self, o)
        return Complex(self.re * o.re + u * self.im * o.im,
                       self.re * o.im + self.im * o.re, u)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return Complex(-self.re, -self.im, self.unit_square)

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = Complex(1, 0, self.unit_square)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.re != o.re or self.im != o.im:
            return False
        return self.im == 0 or self.unit_square == o.unit_square

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im, self.unit_square))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"Complex({self.re}, {self.im}, {self.unit_square})"

    def __str__(self):
        return format_scalar(self)


def _base(value):
    if isinstance(value, Complex):
        return value
    return _rational(value)


class HbarPoly:
    """Polynomial in the formal Planck parameter h; coefficients are Fraction or Complex"""

    __slots__ = ('coefficients',)

    def __init__(self, coefficients=None):
        cleaned = {}
        for power, value in (coefficients or {}).items():
            if not isinstance(power, int) or power < 0:
                raise ScalarError(f"h powers must be non-negative integers, got {power!r}")
            value = _base(value)
            if value != 0:
                cleaned[power] = value
        _check_units(cleaned.values())
        object.__setattr__(self, 'coefficients', MappingProxyType(cleaned))

    def __setattr__(self, name, value):
        raise AttributeError("HbarPoly values are immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, HbarPoly):
            return other
        if isinstance(other, (int, Fraction, Complex)) and not isinstance(other, bool):
            return HbarPoly({0: other})
        return None

    @property
    def degree(self):
        return max(self.coefficients, default=0)

    def coefficient(self, power):
        return self.coefficients.get(power, Fraction(0))

    def is_constant(self):
        return all(power == 0 for power in self.coefficients)

    def at(self, value):
        """Evaluate at h = value (exact)"""
        total = Fraction(0)
        for power, coefficient in self.coefficients.items():
            total = total + coefficient * (value ** power)
        return total

    def conjugate(self):
        return HbarPoly({p: scalar_conj(c) for p, c in self.coefficients.items()})

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        merged = dict(self.coefficients)
        for power, value in o.coefficients.items():
            merged[power] = merged.get(power, Fraction(0)) + value
        return HbarPoly(merged)

    __radd__ = __add__

    def __neg__(self):
        return HbarPoly({p: -c for p, c in self.coefficients.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        product = {}
        for p, a in self.coefficients.items():
            for q, b in o.coefficients.items():
                product[p + q] = product.get(p + q, Fraction(0)) + a * b
        return HbarPoly(product)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, HbarPoly):
            if len(other.coefficients) != 1:
                raise ScalarError(f"division by the non-monomial h-polynomial {other}")
            (shift, divisor), = other.coefficients.items()
        elif isinstance(other, (int, Fraction, Complex)) and not isinstance(other, bool):
            shift, divisor = 0, other
        else:
            return NotImplemented
        if not scalar_invertible(divisor):
            raise ScalarError(f"division by the non-invertible scalar {divisor}")
        if any(power < shift for power in self.coefficients):
            raise ScalarError(f"{self} is not divisible by {other}")
        return HbarPoly({p - shift: c / divisor for p, c in self.coefficients.items()})

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = HbarPoly({0: 1})
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if set(self.coefficients) != set(o.coefficients):
            return False
        return all(self.coefficients[p] == o.coefficients[p] for p in self.coefficients)

    def __hash__(self):
        if self.is_constant():
            return hash(self.coefficient(0))
        return hash(frozenset(self.coefficients.items()))

    def __bool__(self):
        return bool(self.coefficients)

    def __repr__(self):
        return f"HbarPoly({dict(self.coefficients)!r})"

    def __str__(self):
        return format_scalar(self)


def _check_units(values):
    units = {v.unit_square for v in values if isinstance(v, Complex) and v.im}
    if len(units) > 1:
        raise ScalarError("cannot mix i (i^2 = -1) and j (j^2 = +1) scalars")


I = Complex(0, 1, COMPLEX_UNIT)
J = Complex(0, 1, SPLIT_UNIT)
HBAR = HbarPoly({1: 1})


def is_scalar(value):
    return isinstance(value, (Fraction, Complex, HbarPoly)) or (
        isinstance(value, int) and not isinstance(value, bool))


def _require_scalar(value):
    if not is_scalar(value):
        raise ScalarError(f"not a scalar: {value!r}")
    return value


def tower_level(value):
    """0 = rational, 1 = complex / split-complex, 2 = h-polynomial"""
    _require_scalar(value)
    if isinstance(value, HbarPoly):
        return 2
    if isinstance(value, Complex):
        return 1
    return 0


def promote(value, level, unit_square=COMPLEX_UNIT):
    """Lift a scalar to the given tower level"""
    current = tower_level(value)
    if level < current:
        raise ScalarError("promotion is one-directional; use demote() for exact demotion")
    if level == current:
        return value
    if current == 0:
        value = Complex(value, 0, unit_square)
    if level == 2:
        value = HbarPoly({0: value})
    return value


def demote(value):
    """Lowest tower level holding the same value (exact-equality checks only)"""
    _require_scalar(value)
    if isinstance(value, HbarPoly):
        if not value.is_constant():
            return value
        value = value.coefficient(0)
    if isinstance(value, Complex) and value.im == 0:
        return value.re
    return _base(value)


def unit_square_of(value):
    """-1 or +1 when the scalar carries an imaginary part, else None"""
    if isinstance(value, Complex):
        return value.unit_square if value.im else None
    if isinstance(value, HbarPoly):
        units = {unit_square_of(c) for c in value.coefficients.values()} - {None}
        return units.pop() if units else None
    return None


def scalar_mul(a, b):
    """Exact product; raises ScalarError when i-scalars meet j-scalars"""
    return _require_scalar(a) * _require_scalar(b)


def scalar_conj(a):
    """Scalar involution: negates the imaginary part, h is real"""
    _require_scalar(a)
    if isinstance(a, (Complex, HbarPoly)):
        return a.conjugate()
    return _rational(a)


def scalar_invertible(a):
    """True iff a has a multiplicative inverse; split-complex a + jb needs a^2 != b^2"""
    _require_scalar(a)
    if isinstance(a, HbarPoly):
        return a.is_constant() and scalar_invertible(a.coefficient(0))
    if isinstance(a, Complex):
        return a.is_invertible()
    return a != 0


def is_zero(a):
    return _require_scalar(a) == 0


def to_complex(a):
    """Python complex for numerical work; split-complex and non-constant h values are rejected"""
    a = demote(a)
    if isinstance(a, HbarPoly):
        raise ScalarError(f"cannot evaluate the formal h-polynomial {a} numerically")
    if isinstance(a, Complex):
        if a.unit_square == SPLIT_UNIT:
            raise ScalarError(f"split-complex scalar {a} has no complex value")
        return complex(float(a.re), float(a.im))
    return complex(float(a), 0.0)


# ===== PRINTING =====

def scalar_terms(a):
    """Flatten a scalar into (rational coefficient, symbolic factors) terms"""
    if isinstance(a, HbarPoly):
        flat = []
        for power in sorted(a.coefficients):
            marker = () if power == 0 else ('h',) if power == 1 else (f'h^{power}',)
            for c, factors in scalar_terms(a.coefficients[power]):
                flat.append((c, factors + marker))
        return flat
    if isinstance(a, Complex):
        flat = []
        if a.re:
            flat.append((a.re, ()))
        if a.im:
            flat.append((a.im, (a.unit_name,)))
        return flat
    a = _rational(a)
    return [(a, ())] if a else []


def _format_magnitude(magnitude):
    if magnitude.denominator == 1:
        return str(magnitude.numerator)
    return f"({magnitude.numerator}/{magnitude.denominator})"


def format_terms(terms):
    """Join flat terms as `c*f1*f2 + ...`; unit magnitudes are omitted next to symbols"""
    if not terms:
        return '0'
    parts = []
    for index, (coefficient, factors) in enumerate(terms):
        magnitude = abs(coefficient)
        pieces = list(factors)
        if magnitude != 1 or not pieces:
            pieces.insert(0, _format_magnitude(magnitude))
        body = '*'.join(pieces)
        if index == 0:
            parts.append(f"-{body}" if coefficient < 0 else body)
        else:
            parts.append(f" - {body}" if coefficient < 0 else f" + {body}")
    return ''.join(parts)


def format_scalar(a):
    return format_terms(scalar_terms(a))
