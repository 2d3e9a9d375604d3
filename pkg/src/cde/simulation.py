"""Seeded Monte Carlo estimation of expected KL loss.

Trial i of any cell draws from the stream (master_seed, i), consuming first
the prior draw (when the distribution is a redrawn prior) and then the
sample. Estimators sharing a cell are evaluated on the same per-trial
samples, which pairs the comparison and keeps reruns bit-identical no matter
how trials are scheduled across threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .distributions import (
    DistributionSpec,
    RngSeed,
    draw_sample,
    make_generator,
    parse_distribution,
    validate_distribution,
)
from .divergence import kl
from .errors import ConfigurationError
from .estimators import EstimatorSpec, apply_estimator, parse_estimator
from .profile import build_profile

# Stream reserved for the single prior draw when redraw_prior_per_trial is
# off; trial streams use indices 0..trials-1.
FIXED_PRIOR_STREAM = 2**64 - 1

# Cells whose sample is this compressible get a count-vector KL cache.
_MEMO_MAX_COUNT_VECTORS = 10_000


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment grid: (distribution x estimator x sample size) cells."""

    k: int
    n_grid: tuple[int, ...]
    trials: int
    master_seed: int
    distributions: tuple[str, ...]
    estimators: tuple[str, ...]
    redraw_prior_per_trial: bool = True

    def __post_init__(self):
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        object.__setattr__(self, "distributions", tuple(self.distributions))
        object.__setattr__(self, "estimators", tuple(self.estimators))
        if self.k < 1:
            raise ConfigurationError(f"k must be >= 1, got {self.k}")
        if self.trials < 1:
            raise ConfigurationError(f"trials must be >= 1, got {self.trials}")
        if not self.n_grid:
            raise ConfigurationError("n_grid must be nonempty")
        if any(b <= a for a, b in zip(self.n_grid, self.n_grid[1:])):
            raise ConfigurationError(f"n_grid must be strictly increasing, got {self.n_grid}")
        if not self.distributions or not self.estimators:
            raise ConfigurationError("need at least one distribution and one estimator")


@dataclass(frozen=True)
class RegretRecord:
    """Aggregated result of one (distribution, estimator, k, n) cell."""

    distribution: str
    estimator: str
    k: int
    n: int
    trials: int
    mean_kl: float
    stderr: float
    inf_trials: int
    master_seed: int


def monte_carlo_regret(
    p,
    estimator,
    n: int,
    trials: int,
    master_seed: int,
    label: str = "custom",
    workers: int = 1,
) -> RegretRecord:
    """Mean and standard error of KL(p, estimate) over seeded i.i.d. trials."""
    p = validate_distribution(p)
    if isinstance(estimator, str):
        estimator = parse_estimator(estimator)
    if trials < 1:
        raise ConfigurationError(f"trials must be >= 1, got {trials}")
    losses = _simulate_cell(
        fixed_p=p,
        spec=None,
        estimators=[estimator],
        k=int(p.size),
        n=n,
        trials=trials,
        master_seed=master_seed,
        workers=workers,
    )
    return _aggregate(label, _estimator_name(estimator), int(p.size), n, trials, master_seed, losses[:, 0])


def run_experiment(config: ExperimentConfig, workers: int = 1) -> list[RegretRecord]:
    """Evaluate every grid cell; records are ordered by the configured
    distribution list, then estimator list, then n_grid."""
    dist_specs = [parse_distribution(name) for name in config.distributions]
    est_specs = [parse_estimator(name) for name in config.estimators]
    by_cell: dict[tuple[str, str, int], RegretRecord] = {}
    for dist in dist_specs:
        for n in config.n_grid:
            fixed_p = None
            spec = dist
            if not dist.is_prior:
                fixed_p = dist.realize(config.k)
                spec = None
            elif not config.redraw_prior_per_trial:
                prior_rng = make_generator(RngSeed(config.master_seed, FIXED_PRIOR_STREAM))
                fixed_p = dist.realize(config.k, prior_rng)
                spec = None
            losses = _simulate_cell(
                fixed_p=fixed_p,
                spec=spec,
                estimators=est_specs,
                k=config.k,
                n=n,
                trials=config.trials,
                master_seed=config.master_seed,
                workers=workers,
            )
            for j, est in enumerate(est_specs):
                by_cell[(dist.name, est.name, n)] = _aggregate(
                    dist.name, est.name, config.k, n, config.trials, config.master_seed, losses[:, j]
                )
    return [
        by_cell[(d, e, n)]
        for d in config.distributions
        for e in config.estimators
        for n in config.n_grid
    ]


def _estimator_name(estimator) -> str:
    if isinstance(estimator, EstimatorSpec):
        return estimator.name
    return getattr(estimator, "__name__", "custom")


def _simulate_cell(
    fixed_p,
    spec: DistributionSpec | None,
    estimators: list,
    k: int,
    n: int,
    trials: int,
    master_seed: int,
    workers: int,
) -> np.ndarray:
    """Per-trial losses as a (trials, len(estimators)) array, in trial order."""
    memo: dict[bytes, np.ndarray] | None = None
    if (
        fixed_p is not None
        and k <= 64
        and n <= 64  # keeps the binomial below bignum territory
        and math.comb(n + k - 1, k - 1) <= _MEMO_MAX_COUNT_VECTORS
    ):
        memo = {}

    def one_trial(index: int) -> np.ndarray:
        rng = make_generator(RngSeed(master_seed, index))
        p = fixed_p if fixed_p is not None else spec.realize(k, rng)
        sample = draw_sample(p, n, rng)
        profile = build_profile(sample)
        if memo is not None:
            key = profile.counts.tobytes()
            row = memo.get(key)
            if row is None:
                row = _evaluate(estimators, profile, p)
                memo[key] = row
            return row
        return _evaluate(estimators, profile, p)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one_trial, range(trials)))
    else:
        rows = [one_trial(i) for i in range(trials)]
    return np.vstack(rows)


def _evaluate(estimators: list, profile, p) -> np.ndarray:
    return np.array([kl(p, apply_estimator(est, profile, p)) for est in estimators])


def _aggregate(
    distribution: str,
    estimator: str,
    k: int,
    n: int,
    trials: int,
    master_seed: int,
    losses: np.ndarray,
) -> RegretRecord:
    infinite = np.isinf(losses)
    inf_trials = int(infinite.sum())
    mean_kl = float(np.mean(losses))  # any infinite trial makes the mean infinite
    finite = losses[~infinite]
    if finite.size >= 2:
        stderr = float(np.std(finite, ddof=1) / math.sqrt(finite.size))
    else:
        stderr = 0.0
    return RegretRecord(
        distribution=distribution,
        estimator=estimator,
        k=k,
        n=n,
        trials=trials,
        mean_kl=mean_kl,
        stderr=stderr,
        inf_trials=inf_trials,
        master_seed=master_seed,
    )
