"""
Polynomial Text Parser
Recursive descent over the grammar

    expr   ::= ['-'] term (('+' | '-') term)*
    term   ::= factor ('*' factor)*
    factor ::= atom ['^' uint]
    atom   ::= rational | 'i' | 'j' | 'h' | 'x'<uint> | 'p'<uint> | '(' expr ')'

Errors carry the byte offset of the offending token. format_polynomial (phase_space)
is the matching printer; the printed text does not record the dimension, so pass
`dimension=` to recover polynomials living in a larger space than their variables need.
"""

import logging
import re
from fractions import Fraction
from typing import NamedTuple

from errors import ParseError
from phase_space import PhasePolynomial
from scalars import HBAR, I, J

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[xp]\d+|[ijh])|(?P<op>[-+*^()]))")


class Token(NamedTuple):
    kind: str
    text: str
    offset: int


def _byte_offset(text, index):
    return len(text[:index].encode('utf-8'))


def tokenize(text):
    tokens = []
    index = 0
    while index < len(text):
        if text[index:].strip() == '':
            break
        match = _TOKEN.match(text, index)
        if match is None:
            skipped = len(text[index:]) - len(text[index:].lstrip())
            raise ParseError(f"unexpected character {text[index + skipped]!r}",
                             _byte_offset(text, index + skipped))
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), _byte_offset(text, match.start(kind))))
        index = match.end()
    tokens.append(Token('end', '', _byte_offset(text, len(text))))
    return tokens


def _check_units(tokens):
    seen = {}
    for token in tokens:
        if token.kind == 'name' and token.text in ('i', 'j'):
            seen.setdefault(token.text, token)
            if len(seen) == 2:
                raise ParseError("cannot mix i (i^2 = -1) and j (j^2 = +1)", token.offset)


def _variable_indices(tokens):
    indices = []
    for token in tokens:
        if token.kind == 'name' and token.text[0] in 'xp':
            index = int(token.text[1:])
            if index < 1:
                raise ParseError(f"variable {token.text} must have a positive index", token.offset)
            indices.append((index, token))
    return indices


class Parser:
    def __init__(self, text, dimension=None):
        self.text = text
        self.tokens = tokenize(text)
        _check_units(self.tokens)
        indices = _variable_indices(self.tokens)
        needed = max((index for index, _ in indices), default=1)
        if dimension is not None:
            for index, token in indices:
                if index > dimension:
                    raise ParseError(f"{token.text} exceeds dimension {dimension}", token.offset)
        self.dimension = dimension or needed
        self.position = 0

    @property
    def current(self):
        return self.tokens[self.position]

    def _advance(self):
        token = self.current
        self.position += 1
        return token

    def _expect(self, kind, text=None):
        token = self.current
        if token.kind != kind or (text is not None and token.text != text):
            wanted = text or kind
            found = token.text or 'end of input'
            raise ParseError(f"expected {wanted!r}, found {found!r}", token.offset)
        return self._advance()

    def _is_op(self, *texts):
        return self.current.kind == 'op' and self.current.text in texts

    def parse(self):
        result = self.expr()
        if self.current.kind != 'end':
            raise ParseError(f"unexpected {self.current.text!r}", self.current.offset)
        return result

    def expr(self):
        negate = False
        if self._is_op('-'):
            self._advance()
            negate = True
        result = self.term()
        if negate:
            result = -result
        while self._is_op('+', '-'):
            operator = self._advance().text
            right = self.term()
            result = result + right if operator == '+' else result - right
        return result

    def term(self):
        result = self.factor()
        while self._is_op('*'):
            self._advance()
            result = result * self.factor()
        return result

    def factor(self):
        base = self.atom()
        if self._is_op('^'):
            self._advance()
            token = self.current
            if token.kind != 'number' or '/' in token.text:
                raise ParseError("exponent must be a non-negative integer", token.offset)
            self._advance()
            base = base ** int(token.text)
        return base

    def atom(self):
        token = self.current
        d = self.dimension
        if token.kind == 'number':
            self._advance()
            numerator, _, denominator = token.text.partition('/')
            if denominator and int(denominator) == 0:
                raise ParseError("zero denominator", token.offset)
            return PhasePolynomial.constant(d, Fraction(int(numerator), int(denominator or 1)))
        if token.kind == 'name':
            self._advance()
            if token.text == 'i':
                return PhasePolynomial.constant(d, I)
            if token.text == 'j':
                return PhasePolynomial.constant(d, J)
            if token.text == 'h':
                return PhasePolynomial.constant(d, HBAR)
            return PhasePolynomial.variable(d, token.text[0], int(token.text[1:]))
        if self._is_op('('):
            self._advance()
            inner = self.expr()
            self._expect('op', ')')
            return inner
        found = token.text or 'end of input'
        raise ParseError(f"unexpected {found!r}", token.offset)


def parse_poly(text, dimension=None):
    """Parse a phase-space polynomial; dimension defaults to the largest variable index"""
    polynomial = Parser(text, dimension).parse()
    logger.debug(f"Parsed {text!r} as {polynomial}")
    return polynomial


def parse_scalar(text):
    """Parse a variable-free literal such as '1/2 - i' or '(3/2)*h^2'"""
    polynomial = Parser(text, 1).parse()
    for exponents, coefficient in polynomial.terms.items():
        if any(exponents):
            raise ParseError("scalar literal contains a variable", 0)
    return polynomial.terms.get((0, 0), Fraction(0))
