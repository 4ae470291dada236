"""
Tensor Composition
Bipartite and tripartite composition of realization elements and the bipartite product laws:

    sigma12 = sigma1 sigma2 + x alpha1 alpha2      alpha12 = alpha1 sigma2 + sigma1 alpha2
    sigma12 = sigma1 sigma2 + x tau1 tau2          tau12   = tau1 sigma2 + sigma1 tau2

Matrices compose by the left-slot-major Kronecker product; phase-space polynomials compose by
relabeling slot 2 variables to indices d1+1..d1+d2 and multiplying.
"""

import dataclasses
import logging
from typing import Any

from config import Config
from errors import CompositionError, DimensionError
from identities import leibniz_sides, run_identity
from matrices import MatrixElement, kron, swap_tensor
from phase_space import PhasePolynomial
from sampling import Sampler
from scalars import HbarPoly

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class BipartiteElement:
    """Pure tensor left (x) right together with its representation in the composed algebra"""
    left: Any
    right: Any
    combined: Any

    @property
    def sizes(self):
        return (element_size(self.left), element_size(self.right))


def element_size(element):
    if isinstance(element, MatrixElement):
        return element.n
    if isinstance(element, PhasePolynomial):
        return element.dimension
    raise DimensionError(f"{type(element).__name__} is not a realization element")


def compose_pairs(pair1, pair2):
    """Classes compose only with themselves, at the same x"""
    if pair1.composition_class is not pair2.composition_class:
        raise CompositionError(
            f"cannot compose {pair1.composition_class.value} with {pair2.composition_class.value}")
    if pair1.x != pair2.x:
        raise CompositionError(f"composability constant differs: {pair1.x} vs {pair2.x}")
    if pair1.carrier != pair2.carrier:
        raise CompositionError(f"cannot compose {pair1.carrier} and {pair2.carrier} realizations")
    return pair1


def tensor_representation(a, b):
    """Representation of a (x) b for arbitrary (not necessarily pure) elements"""
    if isinstance(a, MatrixElement) and isinstance(b, MatrixElement):
        return kron(a, b)
    if isinstance(a, PhasePolynomial) and isinstance(b, PhasePolynomial):
        dimension = a.dimension + b.dimension
        return a.embed(dimension, 0) * b.embed(dimension, a.dimension)
    raise CompositionError(f"cannot tensor {type(a).__name__} with {type(b).__name__}")


def tensor(e1, e2, pair1=None, pair2=None):
    if pair1 is not None and pair2 is not None:
        compose_pairs(pair1, pair2)
    return BipartiteElement(e1, e2, tensor_representation(e1, e2))


def swap(element, sizes):
    """Canonical swap isomorphism A (x) B -> B (x) A on a composed representation"""
    n1, n2 = sizes
    if isinstance(element, MatrixElement):
        return swap_tensor(element, n1, n2)
    return element.permute_blocks((1, 0), (n1, n2))


# ===== BIPARTITE PRODUCT LAWS =====

def _require_pure(f, g):
    if not isinstance(f, BipartiteElement) or not isinstance(g, BipartiteElement):
        raise CompositionError("bipartite products expect pure tensors")


def sigma12(f, g, pair, pair2=None):
    """sigma1(f1, g1) (x) sigma2(f2, g2) + x alpha1(f1, g1) (x) alpha2(f2, g2)"""
    _require_pure(f, g)
    second = compose_pairs(pair, pair2) if pair2 is not None else pair
    s = tensor_representation(pair.sigma(f.left, g.left), second.sigma(f.right, g.right))
    a = tensor_representation(pair.alpha(f.left, g.left), second.alpha(f.right, g.right))
    return s + a * pair.x


def alpha12(f, g, pair, pair2=None):
    """alpha1(f1, g1) (x) sigma2(f2, g2) + sigma1(f1, g1) (x) alpha2(f2, g2)"""
    _require_pure(f, g)
    second = compose_pairs(pair, pair2) if pair2 is not None else pair
    return (tensor_representation(pair.alpha(f.left, g.left), second.sigma(f.right, g.right))
            + tensor_representation(pair.sigma(f.left, g.left), second.alpha(f.right, g.right)))


def tau12(f, g, pair, pair2=None):
    """tau1(f1, g1) (x) sigma2(f2, g2) + sigma1(f1, g1) (x) tau2(f2, g2); symmetric-bracket class only"""
    if not pair.symmetric_bracket:
        raise CompositionError(f"tau12 needs the parabolic-symmetric class, got {pair.composition_class.value}")
    return alpha12(f, g, pair, pair2)


# ===== CHECKS =====

def law_sides(f1, f2, g1, g2, pair):
    """Law right-hand sides against the native products on the composed algebra"""
    f, g = tensor(f1, f2), tensor(g1, g2)
    label = 'tau12' if pair.symmetric_bracket else 'alpha12'
    return [
        ('sigma12', sigma12(f, g, pair), pair.sigma(f.combined, g.combined)),
        (label, alpha12(f, g, pair), pair.alpha(f.combined, g.combined)),
    ]


def monoid_sides(f1, f2, f3, g1, g2, g3, pair):
    """((12)3) against (1(23)), against the native tripartite products, and the 1 <-> 2 swap"""
    f, g = (f1, f2, f3), (g1, g2, g3)
    left_sigma, left_alpha, right_sigma, right_alpha = _tripartite(pair, f, g)
    composed_f = tensor_representation(tensor_representation(f1, f2), f3)
    composed_g = tensor_representation(tensor_representation(g1, g2), g3)

    forward = (tensor(f1, f2), tensor(g1, g2))
    backward = (tensor(f2, f1), tensor(g2, g1))
    sizes = forward[0].sizes
    return [
        ('sigma (12)3 vs 1(23)', left_sigma, right_sigma),
        ('alpha (12)3 vs 1(23)', left_alpha, right_alpha),
        ('sigma (12)3 vs native', left_sigma, pair.sigma(composed_f, composed_g)),
        ('alpha (12)3 vs native', left_alpha, pair.alpha(composed_f, composed_g)),
        ('sigma swap', swap(sigma12(*forward, pair), sizes), sigma12(*backward, pair)),
        ('alpha swap', swap(alpha12(*forward, pair), sizes), alpha12(*backward, pair)),
    ]


def _tripartite(pair, f, g):
    """Law right-hand sides under ((12)3) and (1(23)) grouping"""
    x = pair.x
    s = [pair.sigma(a, b) for a, b in zip(f, g)]
    a = [pair.alpha(a, b) for a, b in zip(f, g)]

    s12 = tensor_representation(s[0], s[1]) + tensor_representation(a[0], a[1]) * x
    a12 = tensor_representation(a[0], s[1]) + tensor_representation(s[0], a[1])
    left_sigma = tensor_representation(s12, s[2]) + tensor_representation(a12, a[2]) * x
    left_alpha = tensor_representation(a12, s[2]) + tensor_representation(s12, a[2])

    s23 = tensor_representation(s[1], s[2]) + tensor_representation(a[1], a[2]) * x
    a23 = tensor_representation(a[1], s[2]) + tensor_representation(s[1], a[2])
    right_sigma = tensor_representation(s[0], s23) + tensor_representation(a[0], a23) * x
    right_alpha = tensor_representation(a[0], s23) + tensor_representation(s[0], a23)
    return left_sigma, left_alpha, right_sigma, right_alpha


def _slot_sizes(pair, sampler, slots):
    if pair.carrier == 'matrix':
        choices = Config.COMPOSITION_MATRIX_SIZES if slots == 2 else (2,)
    else:
        choices = (1, 2) if slots == 2 else (1,)
    return [sampler.rng.choice(choices) for _ in range(slots)]


def _draw(pair, sampler, samples, slots):
    """Per sample: f_1..f_slots then g_1..g_slots, slot k sized alike in f and g"""
    bounds = {}
    if slots == 3:
        bounds = {'max_degree': sampler.settings.TRIPARTITE_MAX_DEGREE,
                  'max_terms': sampler.settings.TRIPARTITE_MAX_TERMS}
    draws = []
    for _ in range(samples):
        sizes = _slot_sizes(pair, sampler, slots)
        f = [sampler.element(pair, size, **bounds) for size in sizes]
        g = [sampler.element(pair, size, **bounds) for size in sizes]
        draws.append(tuple(f + g))
    return draws


def check_composition_law(pair, samples=None, seed=None, settings=Config):
    samples = settings.DEFAULT_SAMPLES if samples is None else samples
    sampler = Sampler(seed, settings)
    name = 'composition-law-tau' if pair.symmetric_bracket else 'composition-law'
    logger.info(f"Checking {name} for {pair.name} on {samples} samples (seed {sampler.seed})")
    inputs = _draw(pair, sampler, samples, 2)
    return run_identity(name, pair, inputs, law_sides, sampler.seed, settings.SHRINK_ROUNDS)


def check_composed_leibniz(pair, samples=None, seed=None, settings=Config):
    """The composed products keep the Leibniz rule"""
    samples = settings.DEFAULT_SAMPLES if samples is None else samples
    sampler = Sampler(seed, settings)
    triples = []
    for _ in range(samples):
        sizes = _slot_sizes(pair, sampler, 2)
        triples.append(tuple(
            tensor_representation(sampler.element(pair, sizes[0]), sampler.element(pair, sizes[1]))
            for _ in range(3)))
    return run_identity('composed-leibniz', pair, triples, leibniz_sides, sampler.seed,
                        settings.SHRINK_ROUNDS)


def check_monoid(pair, samples=None, seed=None, settings=Config):
    samples = settings.DEFAULT_SAMPLES if samples is None else samples
    if isinstance(pair.hbar, HbarPoly) and samples > settings.FORMAL_HBAR_MONOID_SAMPLES:
        logger.info(f"Formal-h monoid check capped at {settings.FORMAL_HBAR_MONOID_SAMPLES} of {samples} samples")
        samples = settings.FORMAL_HBAR_MONOID_SAMPLES
    sampler = Sampler(seed, settings)
    logger.info(f"Checking tripartite monoid laws for {pair.name} on {samples} samples")
    inputs = _draw(pair, sampler, samples, 3)
    return run_identity('monoid', pair, inputs, monoid_sides, sampler.seed, settings.SHRINK_ROUNDS)
