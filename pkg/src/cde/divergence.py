"""Loss functions: KL divergence, entropy, and their count-class analogues.

All logarithms are natural, so every value is in nats. Infinite divergences
are returned as float infinity and never clamped; aggregation layers decide
how to report them.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidParameterError
from .profile import CombinedMass


def kl(p, q) -> float:
    """KL divergence sum(p * ln(p/q)); +inf when q is 0 somewhere p is not.

    Rounding can push the raw sum a few ulps below zero when p and q nearly
    coincide; the result is floored at 0 since the true value cannot be
    negative.
    """
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise InvalidParameterError(f"length mismatch: {p.shape} vs {q.shape}")
    support = p > 0.0
    ps = p[support]
    qs = q[support]
    if np.any(qs == 0.0):
        return math.inf
    return max(float(np.sum(ps * np.log(ps / qs))), 0.0)


def cross_entropy(p, q) -> float:
    """sum(p * ln(1/q)); +inf when q is 0 somewhere p is not."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise InvalidParameterError(f"length mismatch: {p.shape} vs {q.shape}")
    support = p > 0.0
    qs = q[support]
    if np.any(qs == 0.0):
        return math.inf
    return float(-np.sum(p[support] * np.log(qs)))


def entropy(p) -> float:
    """Shannon entropy -sum(p * ln(p)), with 0 ln 0 = 0."""
    p = np.asarray(p, dtype=np.float64)
    ps = p[p > 0.0]
    return float(-np.sum(ps * np.log(ps)))


def combined_kl(s, s_hat) -> float:
    """KL divergence between per-count-class mass vectors.

    Accepts CombinedMass values or plain arrays; when both are CombinedMass
    their count-class index sets must agree. Conventions match kl(),
    including the floor at 0.
    """
    sv, st = _mass_values(s)
    hv, ht = _mass_values(s_hat)
    if sv.shape != hv.shape:
        raise InvalidParameterError(f"length mismatch: {sv.shape} vs {hv.shape}")
    if st is not None and ht is not None and not np.array_equal(st, ht):
        raise InvalidParameterError("count-class index sets differ")
    if np.any(hv < 0.0):
        raise InvalidParameterError("estimated class masses must be nonnegative")
    support = sv > 0.0
    ss = sv[support]
    hs = hv[support]
    if np.any(hs == 0.0):
        return math.inf
    return max(float(np.sum(ss * np.log(ss / hs))), 0.0)


def _mass_values(m):
    if isinstance(m, CombinedMass):
        return np.asarray(m.values, dtype=np.float64), m.ts
    return np.asarray(m, dtype=np.float64), None
