"""Shared test helpers: independent brute-force oracles and randomized
estimator/distribution generators."""

from __future__ import annotations

import itertools

import numpy as np

from cde import Sample, apply_estimator, build_profile, kl


def random_distribution(rng: np.random.Generator, k: int) -> np.ndarray:
    """A strictly positive random distribution over k symbols."""
    return rng.dirichlet(np.ones(k))


def make_natural_estimator(tag: int):
    """A deterministic randomized natural estimator.

    Positive per-count-class masses are derived by hashing (tag, counts),
    so the same sample always yields the same estimate while different tags
    give unrelated estimators. Every class mass is bounded away from zero.
    """

    def estimate(profile, p=None):
        ss = np.random.SeedSequence(entropy=[tag, *profile.counts.tolist()])
        raw = ss.generate_state(profile.ts.size).astype(np.float64) / 2**32
        class_mass = raw + 0.05
        class_mass /= class_mass.sum()
        per_symbol = class_mass / profile.phi
        table = np.zeros(int(profile.ts[-1]) + 1)
        table[profile.ts] = per_symbol
        return table[profile.counts]

    estimate.__name__ = f"natural_{tag}"
    return estimate


def expected_kl_by_sequences(p, estimator, n: int) -> float:
    """E[KL(p, estimate)] by enumerating all k**n raw sequences.

    Deliberately independent of the count-vector enumeration in cde.oracle:
    no multinomial coefficients, every ordering visited explicitly.
    """
    p = np.asarray(p, dtype=np.float64)
    k = int(p.size)
    total = 0.0
    for seq in itertools.product(range(1, k + 1), repeat=n):
        weight = 1.0
        for s in seq:
            weight *= p[s - 1]
        if weight == 0.0:
            continue
        profile = build_profile(Sample(np.array(seq, dtype=np.int64), k))
        total += weight * kl(p, apply_estimator(estimator, profile, p))
    return total
