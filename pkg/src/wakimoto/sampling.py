"""Seeded random sample vectors and words for the verification suites."""

from __future__ import annotations

import random
from fractions import Fraction

from .core import FockVector, VermaMonomial, linear_combine, mono

COEFFS = (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2), Fraction(2), Fraction(-2))


def random_monomial(rng: random.Random, max_modes: int = 4, index_range: int = 4):
    k = rng.randint(0, max_modes)
    na = rng.randint(0, k)
    a = [rng.randint(-index_range, index_range) for _ in range(na)]
    b = [rng.randint(1, index_range) for _ in range(k - na)]
    return mono(a, b)


def random_vector(rng: random.Random, max_modes: int = 4, index_range: int = 4, max_terms: int = 3) -> FockVector:
    while True:
        n = rng.randint(1, max_terms)
        v = linear_combine((rng.choice(COEFFS), FockVector.basis(random_monomial(rng, max_modes, index_range)))
                           for _ in range(n))
        if v:
            return v


def sample_vectors(seed: int, count: int, max_modes: int = 4, index_range: int = 4, max_terms: int = 3):
    """Vacuum first, then ``count - 1`` random vectors."""
    rng = random.Random(seed)
    out = [FockVector.basis(mono())]
    while len(out) < count:
        out.append(random_vector(rng, max_modes, index_range, max_terms))
    return out


def sample_basis(seed: int, count: int, max_modes: int = 2, index_range: int = 2):
    """Distinct monomials (vacuum first), used where a suite works basis-by-basis."""
    rng = random.Random(seed)
    seen = [mono()]
    tries = 0
    while len(seen) < count and tries < 50 * count:
        tries += 1
        m = random_monomial(rng, max_modes, index_range)
        if m not in seen:
            seen.append(m)
    return seen


def random_word(rng: random.Random, ops=("a", "a*", "b"), length: int = 3, index_range: int = 3):
    return [(rng.choice(ops), rng.randint(-index_range, index_range)) for _ in range(rng.randint(1, length))]


def oracle_pairs(seed: int, count: int, ops=("a", "a*", "b"), length: int = 4, max_terms: int = 5):
    """Random (mode word, vector) pairs for the engine-versus-oracle comparison."""
    rng = random.Random(seed)
    return [(random_word(rng, ops, length), random_vector(rng, 3, 3, max_terms)) for _ in range(count)]


def generic_params(seed: int, count: int, index: int = 5):
    """Random rational (lam, kappa != 0, mu) tuples for parameter-generic reruns."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        lam, kap, mu = (Fraction(rng.randint(-index, index), rng.randint(1, index)) for _ in range(3))
        if kap and kap != -2:
            out.append((lam, kap, mu))
    return out


def verma_words(seed: int, count: int, index_range: int = 3):
    rng = random.Random(seed)
    out = [VermaMonomial((), ())]
    for _ in range(count - 1):
        f = tuple(sorted(rng.randint(-index_range, index_range) for _ in range(rng.randint(0, 2))))
        h = tuple(sorted(rng.randint(1, index_range) for _ in range(rng.randint(0, 2))))
        out.append(VermaMonomial(f, h))
    return out
