"""
Bipartite Coefficient Solver
Free-algebra rewriting over abstract product trees and the derivations of the bipartite
product coefficients from unit, matching and Leibniz constraints.

Trees are atoms ('1', 'f', 'g', 'h') or (symbol, left, right) with symbol one of
rho, theta (general products) and alpha, pi (antisymmetric), sigma, tau (symmetric):
rho = alpha + tau, theta = sigma + pi.
"""

import dataclasses
import logging
from functools import lru_cache
from itertools import product as cartesian

import sympy

from errors import SolverError

logger = logging.getLogger(__name__)

RHO, THETA = 'ρ', 'θ'
ALPHA, TAU, SIGMA, PI = 'α', 'τ', 'σ', 'π'
UNIT = '1'

ANTISYMMETRIC = frozenset({ALPHA, PI})
SYMBOL_ORDER = {RHO: 0, THETA: 1, SIGMA: 2, TAU: 3, PI: 4, ALPHA: 5}
ATOM_ORDER = {UNIT: 0, 'f': 1, 'g': 2, 'h': 3}

# slot-symbol pairs in coefficient-table order
EVEN_MONOMIALS = ((SIGMA, SIGMA), (SIGMA, TAU), (TAU, SIGMA), (TAU, TAU),
                  (PI, PI), (PI, ALPHA), (ALPHA, PI), (ALPHA, ALPHA))
ODD_MONOMIALS = ((PI, SIGMA), (SIGMA, PI), (PI, TAU), (TAU, PI),
                 (ALPHA, TAU), (TAU, ALPHA), (ALPHA, SIGMA), (SIGMA, ALPHA))
TWO_PRODUCT_MONOMIALS = ((RHO, RHO), (RHO, THETA), (THETA, RHO), (THETA, THETA))


@dataclasses.dataclass(frozen=True)
class Rules:
    """Rewrite configuration on top of the always-on unit and symmetry rules"""
    vanishing: frozenset = frozenset()
    decompose: bool = False
    leibniz: frozenset = frozenset()


DEFAULT_RULES = Rules()


def tree_key(tree):
    if isinstance(tree, str):
        return (0, ATOM_ORDER.get(tree, len(ATOM_ORDER)), tree)
    symbol, left, right = tree
    return (1, SYMBOL_ORDER[symbol], tree_key(left), tree_key(right))


def _accumulate(target, terms, factor=1):
    for tree, coefficient in terms.items():
        target[tree] = target.get(tree, 0) + factor * coefficient


def _node(symbol, a, b, rules):
    """Canonical combination for symbol(a, b) with canonical arguments"""
    if symbol in rules.vanishing:
        return {}
    if symbol in (RHO, THETA):
        if a == UNIT or b == UNIT:
            if symbol == RHO:
                return {}
            if a == b:
                return {UNIT: 1}
            return {b if a == UNIT else a: 1}
        if rules.decompose:
            merged = {}
            for part in ((ALPHA, TAU) if symbol == RHO else (SIGMA, PI)):
                _accumulate(merged, _node(part, a, b, rules))
            return merged
        if symbol in rules.leibniz and not isinstance(b, str) and b[0] == symbol \
                and tree_key(a) < tree_key(b[1]):
            # a (b1 b2) -> (a b1) b2 + b1 (a b2)
            _, y, z = b
            merged = {}
            _accumulate(merged, canonical_tree((symbol, (symbol, a, y), z), rules))
            _accumulate(merged, canonical_tree((symbol, y, (symbol, a, z)), rules))
            return merged
        return {(symbol, a, b): 1}
    if a == UNIT and b == UNIT:
        return {UNIT: 1} if symbol == SIGMA else {}
    if symbol in ANTISYMMETRIC:
        if a == b:
            return {}
        if tree_key(a) > tree_key(b):
            return {(symbol, b, a): -1}
        return {(symbol, a, b): 1}
    if tree_key(a) > tree_key(b):
        return {(symbol, b, a): 1}
    return {(symbol, a, b): 1}


def canonical_tree(tree, rules=DEFAULT_RULES):
    """Linear combination {tree: integer} equal to `tree` under the rules"""
    if isinstance(tree, str):
        return {tree: 1}
    symbol, left, right = tree
    result = {}
    for lt, lc in canonical_tree(left, rules).items():
        for rt, rc in canonical_tree(right, rules).items():
            _accumulate(result, _node(symbol, lt, rt, rules), lc * rc)
    return {t: c for t, c in result.items() if c}


def tree_symbols(tree):
    if isinstance(tree, str):
        return set()
    symbol, left, right = tree
    return {symbol} | tree_symbols(left) | tree_symbols(right)


def format_tree(tree, slot=None):
    if isinstance(tree, str):
        return tree if tree == UNIT or slot is None else f"{tree}{slot}"
    symbol, left, right = tree
    return f"({format_tree(left, slot)} {symbol} {format_tree(right, slot)})"


# ===== FORMAL EXPRESSIONS =====

class FormalExpr:
    """Sum of coefficient * tensor monomial; a monomial is a tuple of slot trees"""

    __slots__ = ('terms',)

    def __init__(self, terms=None):
        cleaned = {}
        for monomial, coefficient in (terms or {}).items():
            coefficient = sympy.expand(coefficient)
            if coefficient != 0:
                cleaned[tuple(monomial)] = coefficient
        self.terms = cleaned

    @classmethod
    def term(cls, coefficient, *trees):
        return cls({trees: sympy.sympify(coefficient)})

    def __add__(self, other):
        merged = dict(self.terms)
        for monomial, coefficient in other.terms.items():
            merged[monomial] = merged.get(monomial, 0) + coefficient
        return FormalExpr(merged)

    def __neg__(self):
        return FormalExpr({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return FormalExpr({m: factor * c for m, c in self.terms.items()})

    def subs(self, values):
        return FormalExpr({m: sympy.sympify(c).subs(values) for m, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def canonical(self, rules=DEFAULT_RULES):
        result = {}
        for monomial, coefficient in self.terms.items():
            expansions = [canonical_tree(tree, rules).items() for tree in monomial]
            for combination in cartesian(*expansions):
                sign = 1
                for _, c in combination:
                    sign *= c
                key = tuple(tree for tree, _ in combination)
                result[key] = result.get(key, 0) + sign * coefficient
        return FormalExpr(result)

    def __eq__(self, other):
        if not isinstance(other, FormalExpr):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"FormalExpr({format_expr(self)!r})"

    def __str__(self):
        return format_expr(self)


def canonicalize(expr, rules=DEFAULT_RULES):
    return expr.canonical(rules)


def _format_coefficient(coefficient):
    if coefficient == 1:
        return '', False
    if coefficient == -1:
        return '', True
    if coefficient.could_extract_minus_sign():
        return f"{sympy.sstr(-coefficient)}*", True
    return f"{sympy.sstr(coefficient)}*", False


def _join(pieces):
    if not pieces:
        return '0'
    text = ''
    for index, (body, negative) in enumerate(pieces):
        if index == 0:
            text = f"-{body}" if negative else body
        else:
            text += f" - {body}" if negative else f" + {body}"
    return text


def format_expr(expr):
    pieces = []
    for monomial, coefficient in sorted(expr.terms.items(), key=lambda item: [tree_key(t) for t in item[0]]):
        prefix, negative = _format_coefficient(coefficient)
        if len(monomial) == 1:
            body = format_tree(monomial[0])
        else:
            body = ' ⊗ '.join(format_tree(tree, slot + 1) for slot, tree in enumerate(monomial))
        pieces.append((prefix + body, negative))
    return _join(pieces)


def _shorthand_symbols(monomial):
    """(sigma(f, g), tau(f, g)) -> ('σ', 'τ') when every slot is a product of f and g"""
    symbols = []
    for tree in monomial:
        if isinstance(tree, str) or tree[1:] != ('f', 'g'):
            return None
        symbols.append(tree[0])
    return tuple(symbols)


TABLE_ORDER = {pair: index for index, pair in enumerate(TWO_PRODUCT_MONOMIALS + EVEN_MONOMIALS + ODD_MONOMIALS)}


def format_row(expr):
    """Shorthand like 'σ1σ2 + x*τ1τ2' in coefficient-table order"""
    pieces = []
    entries = [(_shorthand_symbols(m), c) for m, c in expr.terms.items()]
    for symbols, coefficient in sorted(entries, key=lambda item: TABLE_ORDER.get(item[0], len(TABLE_ORDER))):
        if symbols is None:
            return format_expr(expr)
        prefix, negative = _format_coefficient(coefficient)
        body = ''.join(f"{symbol}{slot + 1}" for slot, symbol in enumerate(symbols))
        pieces.append((prefix + body, negative))
    return _join(pieces)


# ===== BIPARTITE ANSATZ =====

@dataclasses.dataclass(frozen=True)
class Ansatz:
    """Bipartite product as sum of coefficient * (slot-1 symbol, slot-2 symbol)"""
    name: str
    terms: tuple

    def apply(self, left, right):
        """Bilinear extension to bipartite formal expressions"""
        result = {}
        for m1, c1 in left.terms.items():
            for m2, c2 in right.terms.items():
                for coefficient, s1, s2 in self.terms:
                    key = ((s1, m1[0], m2[0]), (s2, m1[1], m2[1]))
                    result[key] = result.get(key, 0) + coefficient * c1 * c2
        return FormalExpr(result)

    def subs(self, values):
        return Ansatz(self.name, tuple((sympy.sympify(c).subs(values), s1, s2) for c, s1, s2 in self.terms))

    def row(self, monomials=None):
        """The product on f1 (x) f2, g1 (x) g2 as a formal expression"""
        wanted = set(monomials) if monomials is not None else None
        terms = [t for t in self.terms if wanted is None or (t[1], t[2]) in wanted]
        return Ansatz(self.name, tuple(terms)).apply(pure_tensor('f', 'f'), pure_tensor('g', 'g'))


def pure_tensor(left, right):
    return FormalExpr.term(1, left, right)


def product_tensor(s1, s2, coefficient=1):
    """coefficient * s1(f, g) (x) s2(f, g)"""
    return FormalExpr.term(coefficient, (s1, 'f', 'g'), (s2, 'f', 'g'))


# ===== CONSTRAINTS =====

@dataclasses.dataclass(frozen=True)
class Constraint:
    equation: sympy.Expr
    source: str
    monomial: str = ''

    def describe(self):
        return f"{sympy.sstr(self.equation)} = 0"


def _is_linear(equation, unknowns):
    return sympy.Poly(equation, *unknowns).total_degree() <= 1


def _pure_power(equation):
    """u for c * u^k, else None"""
    _, rest = equation.as_coeff_Mul()
    base, exponent = rest.as_base_exp()
    if base.is_Symbol and exponent.is_Integer and exponent > 1 and rest.free_symbols == {base}:
        return base
    return None


@dataclasses.dataclass
class ConstraintSystem:
    unknowns: list
    constraints: list = dataclasses.field(default_factory=list)

    def extend(self, constraints):
        self.constraints.extend(constraints)

    def _reduce(self, solution):
        remaining = []
        for constraint in self.constraints:
            equation = sympy.expand(constraint.equation.subs(solution))
            if equation == 0:
                continue
            if not equation.free_symbols & set(self.unknowns):
                raise SolverError(f"inconsistent constraint {sympy.sstr(equation)} = 0 from {constraint.source}")
            remaining.append(equation)
        return remaining

    def solve(self):
        """Exact linear elimination plus c * u^k = 0 -> u = 0, iterated to a fixpoint"""
        solution = {}
        while True:
            remaining = self._reduce(solution)
            if not remaining:
                return solution
            linear = [eq for eq in remaining if _is_linear(eq, self.unknowns)]
            if linear:
                open_unknowns = [u for u in self.unknowns if u not in solution]
                solved = sympy.linsolve(linear, open_unknowns)
                if solved.is_empty:
                    raise SolverError("linear constraints have no solution")
                values = next(iter(solved))
                fresh = {u: v for u, v in zip(open_unknowns, values) if v != u}
                solution = {u: sympy.expand(v.subs(fresh)) for u, v in solution.items()}
                solution.update(fresh)
                continue
            powers = [u for u in map(_pure_power, remaining) if u is not None]
            if not powers:
                raise SolverError(f"cannot resolve nonlinear constraint {sympy.sstr(remaining[0])} = 0")
            logger.debug(f"Power constraint forces {powers[0]} = 0")
            solution = {u: sympy.expand(v.subs({powers[0]: 0})) for u, v in solution.items()}
            solution[powers[0]] = sympy.Integer(0)

    def free(self, solution):
        return [u for u in self.unknowns if u not in solution]

    def verify(self, solution):
        """Round trip: every constraint vanishes identically under the solution"""
        return all(sympy.expand(c.equation.subs(solution)) == 0 for c in self.constraints)


def constraints_from(difference, source):
    """One constraint per distinct coefficient equation, up to sign"""
    seen = set()
    constraints = []
    for monomial, coefficient in difference.terms.items():
        key = sympy.expand(-coefficient) if coefficient.could_extract_minus_sign() else coefficient
        if key in seen:
            continue
        seen.add(key)
        constraints.append(Constraint(coefficient, source, format_expr(FormalExpr({monomial: 1}))))
    return constraints


class Trace:
    """Derivation log: one entry per substitution with the equations it produced"""

    def __init__(self):
        self.steps = []

    def add(self, step, substitution, target, constraints, **extra):
        entry = {
            'step': step,
            'substitution': substitution,
            'target': target,
            'equations': [c.describe() for c in constraints],
        }
        entry.update(extra)
        self.steps.append(entry)
        logger.debug(f"{step}: {len(constraints)} equations")
        return entry


def unit_constraints(ansatz, slot, symbol, rules, label):
    """Both slot arguments set to 1; the bipartite product must reduce to the other slot's product"""
    if slot == 1:
        f, g = pure_tensor(UNIT, 'f'), pure_tensor(UNIT, 'g')
        target = FormalExpr.term(1, UNIT, (symbol, 'f', 'g'))
        substitution = 'f1 = g1 = 1'
    else:
        f, g = pure_tensor('f', UNIT), pure_tensor('g', UNIT)
        target = FormalExpr.term(1, (symbol, 'f', 'g'), UNIT)
        substitution = 'f2 = g2 = 1'
    difference = (ansatz.apply(f, g) - target).canonical(rules)
    return substitution, format_expr(target), constraints_from(difference, f"{label}, {substitution}")


def _json_value(value):
    value = sympy.nsimplify(value)
    if value.is_Integer:
        return int(value)
    return sympy.sstr(value)


def solution_table(unknowns, solution):
    return {str(u): _json_value(solution[u]) if u in solution else 'free' for u in unknowns}


# ===== DERIVATIONS =====

def _two_product_ansatz():
    a, b, c, d, x, y, z, w = sympy.symbols('a b c d x y z w')
    rho = Ansatz('rho12', tuple((k, s1, s2) for k, (s1, s2) in zip((a, b, c, d), TWO_PRODUCT_MONOMIALS)))
    theta = Ansatz('theta12', tuple((k, s1, s2) for k, (s1, s2) in zip((x, y, z, w), TWO_PRODUCT_MONOMIALS)))
    return rho, theta, [a, b, c, d, y, z, w, x]


def pure_rho_sector(expr):
    """Terms in which every slot tree is built from rho alone"""
    return FormalExpr({m: c for m, c in expr.terms.items()
                       if all(tree_symbols(tree) <= {RHO} for tree in m)})


def leibniz_defect(ansatz, rules):
    """F r (G r H) - (F r G) r H - G r (F r H) for pure tensors F, G, H"""
    f, g, h = pure_tensor('f', 'f'), pure_tensor('g', 'g'), pure_tensor('h', 'h')
    lhs = ansatz.apply(f, ansatz.apply(g, h))
    rhs = ansatz.apply(ansatz.apply(f, g), h) + ansatz.apply(g, ansatz.apply(f, h))
    return (lhs - rhs).canonical(rules)


def derive_two_product_coefficients():
    """rho12 = a rr + b rt + c tr + d tt, theta12 = x rr + y rt + z tr + w tt"""
    rho, theta, unknowns = _two_product_ansatz()
    system = ConstraintSystem(unknowns)
    trace = Trace()

    for slot in (1, 2):
        for ansatz, symbol in ((rho, RHO), (theta, THETA)):
            substitution, target, constraints = unit_constraints(
                ansatz, slot, symbol, DEFAULT_RULES, f"unit law on {ansatz.name}")
            system.extend(constraints)
            trace.add(f"unit law on {ansatz.name}", substitution, target, constraints)

    partial = system.solve()
    leibniz_rules = Rules(leibniz=frozenset({RHO}))
    sector = pure_rho_sector(leibniz_defect(rho.subs(partial), leibniz_rules))
    constraints = constraints_from(sector, 'Leibniz identity on rho12, pure rho sector')
    system.extend(constraints)
    trace.add('Leibniz identity on rho12', 'F = f1⊗f2, G = g1⊗g2, H = h1⊗h2',
              'F ρ12 (G ρ12 H) = (F ρ12 G) ρ12 H + G ρ12 (F ρ12 H)', constraints,
              sector='pure ρ')

    solution = system.solve()
    logger.info(f"Two-product derivation solved {len(solution)} of {len(unknowns)} coefficients")
    return {
        'system': 'two-product',
        'solution': solution_table(unknowns, solution),
        'free': [str(u) for u in system.free(solution)],
        'rows': {
            'rho12': format_row(rho.subs(solution).row()),
            'theta12': format_row(theta.subs(solution).row()),
        },
        'round_trip': system.verify(solution),
        'trace': trace.steps,
    }


def derive_single_product():
    """rho12 = a rr alone: the unit law is unsatisfiable unless rho vanishes"""
    a = sympy.Symbol('a')
    rho = Ansatz('rho12', ((a, RHO, RHO),))
    trace = Trace()
    system = ConstraintSystem([a])
    substitution, target, constraints = unit_constraints(rho, 1, RHO, DEFAULT_RULES, 'unit law on rho12')
    system.extend(constraints)
    trace.add('unit law on rho12', substitution, target, constraints)
    try:
        system.solve()
    except SolverError as e:
        logger.info(f"Single-product ansatz is inconsistent: {e}")
        vanishing = Rules(vanishing=frozenset({RHO}))
        _, target, residual = unit_constraints(rho, 1, RHO, vanishing, 'unit law with rho = 0')
        trace.add('unit law with rho = 0', substitution, target, residual)
        return {
            'system': 'single-product',
            'consistent': False,
            'inconsistency': str(e),
            'conclusion': 'rho12 = 0',
            'trace': trace.steps,
        }
    raise SolverError("single-product ansatz unexpectedly consistent")


def _four_product_ansatz():
    coefficients = sympy.symbols('a1:33')
    x = sympy.Symbol('x')
    rows = {
        'sigma12': Ansatz('sigma12', tuple((coefficients[k], *EVEN_MONOMIALS[k]) for k in range(8))),
        'pi12': Ansatz('pi12', tuple((coefficients[8 + k], *ODD_MONOMIALS[k]) for k in range(8))),
        'alpha12': Ansatz('alpha12', tuple((coefficients[16 + k], *ODD_MONOMIALS[k]) for k in range(8))),
        'tau12': Ansatz('tau12', tuple((coefficients[24 + k], *EVEN_MONOMIALS[k]) for k in range(8))),
    }
    rho = Ansatz('rho12', rows['alpha12'].terms + rows['tau12'].terms)
    theta = Ansatz('theta12', rows['sigma12'].terms + rows['pi12'].terms)
    return rows, rho, theta, list(coefficients) + [x], x


ROW_MONOMIALS = {'sigma12': EVEN_MONOMIALS, 'pi12': ODD_MONOMIALS,
                 'alpha12': ODD_MONOMIALS, 'tau12': EVEN_MONOMIALS}


@lru_cache(maxsize=1)
def _four_product_solution():
    rows, rho, theta, unknowns, x = _four_product_ansatz()
    system = ConstraintSystem(unknowns)
    trace = Trace()
    decomposed = Rules(decompose=True)

    for ansatz, symbol in ((rho, RHO), (theta, THETA)):
        for slot in (1, 2):
            substitution, target, constraints = unit_constraints(
                ansatz, slot, symbol, decomposed, f"unit law on {ansatz.name}")
            system.extend(constraints)
            fixed = system.solve()
            trace.add(f"unit law on {ansatz.name}", substitution, target, constraints,
                      fixed={str(u): _json_value(v) for u, v in fixed.items()
                             if any(u in c.equation.free_symbols for c in constraints)})

    targets = (
        (rho, product_tensor(RHO, THETA) + product_tensor(THETA, RHO), 'ρ1θ2 + θ1ρ2'),
        (theta, product_tensor(THETA, THETA) + product_tensor(RHO, RHO, x), 'θ1θ2 + x*ρ1ρ2'),
    )
    for ansatz, target, text in targets:
        difference = (ansatz.row() - target).canonical(decomposed)
        constraints = constraints_from(difference, f"matching {ansatz.name}")
        system.extend(constraints)
        trace.add(f"matching {ansatz.name}", 'f1⊗f2, g1⊗g2', text, constraints)

    solution = system.solve()
    solved_rows = {name: row.subs(solution).row() for name, row in rows.items()}
    return system, solution, solved_rows, trace.steps


def derive_four_product_coefficients():
    """32-coefficient ansatz for sigma12, pi12, alpha12, tau12 solved to the general composition table"""
    system, solution, rows, steps = _four_product_solution()
    logger.info(f"Four-product derivation: free unknowns {system.free(solution)}")
    return {
        'system': 'four-product',
        'solution': solution_table(system.unknowns, solution),
        'free': [str(u) for u in system.free(solution)],
        'rows': {name: format_row(row) for name, row in rows.items()},
        'round_trip': system.verify(solution),
        'trace': steps,
    }


def general_rows():
    """Solved sigma12, pi12, alpha12, tau12 as formal expressions"""
    return dict(_four_product_solution()[2])


ASSUMPTIONS = {'tau0': TAU, 'alpha0': ALPHA}
ROW_OF = {TAU: 'tau12', ALPHA: 'alpha12', PI: 'pi12', SIGMA: 'sigma12'}
NAME_OF = {TAU: 'tau0', ALPHA: 'alpha0', PI: 'pi0', SIGMA: 'sigma0'}


def _reduce_rows(rows, vanishing):
    rules = Rules(vanishing=frozenset(vanishing))
    return {name: row.canonical(rules) for name, row in rows.items()}


def _is_trivial(rows):
    """rho12 = alpha12 + tau12 vanishes identically"""
    return rows['alpha12'].is_zero() and rows['tau12'].is_zero()


def reduce_vanishing_cases(assumption=None):
    """Substitute a vanishing product into the general table and split the closure residual"""
    rows = general_rows()
    if assumption is None:
        return {'assumption': None, 'rows': {name: format_row(row) for name, row in rows.items()}}
    if assumption not in ASSUMPTIONS:
        raise SolverError(f"unknown assumption {assumption!r}; expected one of {sorted(ASSUMPTIONS)}")

    vanished = ASSUMPTIONS[assumption]
    reduced = _reduce_rows(rows, {vanished})
    residual = reduced[ROW_OF[vanished]]
    # the vanishing product's own row must close to zero; each remaining product in it is a branch
    candidates = set()
    for monomial in residual.terms:
        for tree in monomial:
            candidates |= tree_symbols(tree)
    candidates -= {vanished}

    branches = []
    family = None
    for symbol in sorted(candidates, key=lambda s: (s != PI, SYMBOL_ORDER[s])):
        branch_rows = _reduce_rows(rows, {vanished, symbol})
        trivial = _is_trivial(branch_rows)
        nonzero = {name: format_row(row) for name, row in branch_rows.items() if not row.is_zero()}
        branches.append({'assume': NAME_OF[symbol], 'trivial': trivial, 'rows': nonzero})
        if not trivial and family is None:
            family = nonzero
    logger.info(f"Vanishing case {assumption}: residual {format_row(residual)}")
    return {
        'assumption': assumption,
        'rows': {name: format_row(row) for name, row in reduced.items()},
        'residual': format_row(residual),
        'branches': branches,
        'reduced_family': family,
    }
