"""
Algebraic Identity Suite
Exact sampled checks of the Lie-Jordan identities:
  - Leibniz (left and right): alpha acts as a derivation of sigma
  - Jacobi for alpha
  - Petersen in scalar form: [f,g,h]_sigma + x [f,g,h]_alpha = 0
  - flexible law and Jordan identity for sigma
  - unit laws, product symmetry, associativity of beta = sigma + J alpha
  - classical limit of the Moyal products

Failing samples are shrunk before they are reported.
"""

import dataclasses
import logging
from typing import Optional

from config import Config
from errors import ComposableError
from matrices import MatrixElement
from phase_space import PhasePolynomial
from realizations import CompositionClass, poisson_bracket, unit_like, zero_like
from sampling import Sampler
from scalars import HbarPoly

logger = logging.getLogger(__name__)

PASS = 'pass'
FAIL = 'fail'


def describe(element):
    if isinstance(element, MatrixElement):
        return element.to_json()
    return str(element)


@dataclasses.dataclass
class IdentityReport:
    identity: str
    realization: str
    samples: int = 0
    status: str = PASS
    seed: Optional[int] = None
    counterexample: Optional[dict] = None
    max_error: Optional[float] = None

    @property
    def passed(self):
        return self.status == PASS

    @property
    def exact(self):
        return self.max_error is None

    def fail(self, label, lhs, rhs, inputs):
        self.status = FAIL
        self.counterexample = {
            'part': label,
            'inputs': [describe(e) for e in inputs],
            'lhs': describe(lhs),
            'rhs': describe(rhs),
        }
        logger.warning(f"{self.identity} failed for {self.realization} at sample {self.samples}: {label}")

    def finish(self, samples):
        if self.passed:
            self.samples = samples
        logger.info(f"{self.identity} [{self.realization}]: {self.status} ({self.samples} samples)")
        return self

    def to_dict(self):
        result = {
            'name': self.identity,
            'realization': self.realization,
            'samples': self.samples,
            'status': self.status,
            'exact': self.exact,
        }
        if self.seed is not None:
            result['seed'] = self.seed
        if self.max_error is not None:
            result['max_error'] = self.max_error
        if self.counterexample is not None:
            result['counterexample'] = self.counterexample
        return result


# ===== PRIMITIVES =====

def associator(f, g, h, product):
    """(f * g) * h - f * (g * h)"""
    return product(product(f, g), h) - product(f, product(g, h))


# ===== IDENTITY SIDES =====
# each returns a list of (label, lhs, rhs)

def leibniz_sides(f, g, h, pair):
    alpha, sigma = pair.alpha, pair.sigma
    return [
        ('left', alpha(f, sigma(g, h)), sigma(alpha(f, g), h) + sigma(g, alpha(f, h))),
        ('right', alpha(sigma(f, g), h), sigma(f, alpha(g, h)) + sigma(alpha(f, h), g)),
    ]


def jacobi_sides(f, g, h, pair):
    alpha = pair.alpha
    cyclic = alpha(f, alpha(g, h)) + alpha(g, alpha(h, f)) + alpha(h, alpha(f, g))
    return [('cyclic sum', cyclic, zero_like(f))]


def petersen_sides(f, g, h, pair):
    total = associator(f, g, h, pair.sigma) + associator(f, g, h, pair.alpha) * pair.x
    return [('[f,g,h]_sigma + x [f,g,h]_alpha', total, zero_like(f))]


def flexible_jordan_sides(g, h, pair):
    sigma = pair.sigma
    zero = zero_like(g)
    return [
        ('flexible [h,g,h]_sigma', associator(h, g, h, sigma), zero),
        ('jordan [h.h,g,h]_sigma', associator(sigma(h, h), g, h, sigma), zero),
    ]


def unit_sides(f, pair):
    one, zero = unit_like(f), zero_like(f)
    return [
        ('sigma(1, f)', pair.sigma(one, f), f),
        ('sigma(f, 1)', pair.sigma(f, one), f),
        ('alpha(1, f)', pair.alpha(one, f), zero),
        ('alpha(f, 1)', pair.alpha(f, one), zero),
    ]


def symmetry_sides(f, g, pair):
    flipped = pair.alpha(g, f) if pair.symmetric_bracket else -pair.alpha(g, f)
    return [
        ('alpha symmetry', pair.alpha(f, g), flipped),
        ('sigma symmetric', pair.sigma(f, g), pair.sigma(g, f)),
    ]


def beta_associativity_sides(f, g, h, pair):
    return [('[f,g,h]_beta', associator(f, g, h, pair.beta), zero_like(f))]


def classical_limit_sides(f, g, pair):
    f0, g0 = f.at_hbar(0), g.at_hbar(0)
    return [
        ('alpha at h=0', pair.alpha(f, g).at_hbar(0), poisson_bracket(f0, g0)),
        ('sigma at h=0', pair.sigma(f, g).at_hbar(0), f0 * g0),
    ]


IDENTITIES = {
    'leibniz': (3, leibniz_sides),
    'jacobi': (3, jacobi_sides),
    'petersen': (3, petersen_sides),
    'flexible-jordan': (2, flexible_jordan_sides),
    'unit': (1, unit_sides),
    'symmetry': (2, symmetry_sides),
    'beta-associativity': (3, beta_associativity_sides),
    'classical-limit': (2, classical_limit_sides),
}


def applicable_identities(pair):
    names = ['leibniz', 'petersen', 'flexible-jordan', 'unit', 'symmetry']
    if not pair.symmetric_bracket:
        names.insert(1, 'jacobi')
    if pair.composition_class is not CompositionClass.PARABOLIC_SYMMETRIC:
        names.append('beta-associativity')
    if pair.carrier == 'polynomial' and isinstance(pair.hbar, HbarPoly):
        names.append('classical-limit')
    return names


# ===== SHRINKING =====

def simplifications(element):
    """Strictly smaller variants: one polynomial term dropped, or one matrix entry zeroed"""
    if isinstance(element, PhasePolynomial):
        for exponents in element.terms:
            rest = {e: c for e, c in element.terms.items() if e != exponents}
            yield PhasePolynomial(element.dimension, rest)
    elif isinstance(element, MatrixElement):
        rows = element.entries.tolist()
        for i, row in enumerate(rows):
            for k, value in enumerate(row):
                if value != 0:
                    trimmed = [list(r) for r in rows]
                    trimmed[i][k] = 0
                    yield MatrixElement(trimmed)


def _differs(sides, inputs, pair):
    try:
        return any(lhs != rhs for _, lhs, rhs in sides(*inputs, pair))
    except ComposableError:
        return False


def shrink(inputs, sides, pair, rounds=Config.SHRINK_ROUNDS):
    """Greedy counterexample minimization: keep any simplification that still fails"""
    current = list(inputs)
    for _ in range(rounds):
        improved = False
        for position, element in enumerate(current):
            for candidate in simplifications(element):
                trial = current[:position] + [candidate] + current[position + 1:]
                if _differs(sides, trial, pair):
                    current, improved = trial, True
                    break
            if improved:
                break
        if not improved:
            break
    return current


# ===== RUNNERS =====

def run_identity(name, pair, samples, sides, seed=None, shrink_rounds=Config.SHRINK_ROUNDS):
    """Evaluate `sides` on every input tuple; the first failure is shrunk and recorded"""
    report = IdentityReport(name, pair.name, seed=seed)
    for index, inputs in enumerate(samples):
        parts = sides(*inputs, pair)
        report.samples = index + 1
        failing = [(label, lhs, rhs) for label, lhs, rhs in parts if lhs != rhs]
        if not failing:
            logger.debug(f"{name} sample {index} ok")
            continue
        minimal = shrink(inputs, sides, pair, shrink_rounds) if shrink_rounds else list(inputs)
        for label, lhs, rhs in sides(*minimal, pair):
            if lhs != rhs:
                report.fail(label, lhs, rhs, minimal)
                break
        else:
            label, lhs, rhs = failing[0]
            report.fail(label, lhs, rhs, inputs)
        break
    return report.finish(report.samples)


def check_leibniz(f, g, h, pair):
    return run_identity('leibniz', pair, [(f, g, h)], leibniz_sides)


def check_jacobi(f, g, h, pair):
    return run_identity('jacobi', pair, [(f, g, h)], jacobi_sides)


def check_petersen(f, g, h, pair):
    return run_identity('petersen', pair, [(f, g, h)], petersen_sides)


def check_flexible_jordan(g, h, pair):
    return run_identity('flexible-jordan', pair, [(g, h)], flexible_jordan_sides)


def draw_inputs(pair, arity, samples, sampler):
    """Input tuples sharing one size per tuple"""
    tuples = []
    for _ in range(samples):
        size = None if pair.carrier == 'matrix' else sampler.rng.choice((1, 2))
        tuples.append(sampler.elements(pair, arity, size))
    return tuples


def run_suite(pair, names=None, samples=None, seed=None, settings=Config):
    """Run the named identities (all applicable ones by default) on fresh samples each"""
    samples = settings.DEFAULT_SAMPLES if samples is None else samples
    names = names or applicable_identities(pair)
    reports = []
    for name in names:
        if name not in IDENTITIES:
            raise ComposableError(f"unknown identity {name!r}")
        arity, sides = IDENTITIES[name]
        sampler = Sampler(seed, settings)
        logger.info(f"Running {name} on {pair.name} ({samples} samples, seed {sampler.seed})")
        inputs = draw_inputs(pair, arity, samples, sampler)
        reports.append(run_identity(name, pair, inputs, sides, sampler.seed, settings.SHRINK_ROUNDS))
    return reports
