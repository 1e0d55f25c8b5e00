"""Memory-load metrics over open-node profiles.

The match between one open-node count u and a capacity theta is the
Gaussian kernel exp(-((u - theta) / sigma)**2 / 2), which is 1 exactly
at a perfect match and falls off with the squared standardized
distance.  A sentence's likelihood is the product of its per-word
matches, and the maximizing theta is simply the mean count: that mean
is the working-memory load estimate used everywhere in this package.

Entropy is the Shannon entropy, in bits, of the empirical distribution
of the profile's counts.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .trees import OpenNodeProfile


@dataclass(frozen=True)
class MetricConfig:
    """sigma is the dimensionless spread of the Gaussian match.

    The load estimate never depends on it; it only scales reported
    likelihood values.  Default 1.0.
    """

    sigma: float = 1.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


@dataclass(frozen=True)
class ThetaEstimate:
    """Maximum-likelihood capacity estimate (open-node units)."""

    theta_mle: float

    def __float__(self) -> float:
        return self.theta_mle


@dataclass(frozen=True)
class EntropyResult:
    """Shannon entropy of the count distribution, in bits."""

    h_bits: float

    def __float__(self) -> float:
        return self.h_bits


def theta_mle(profile: OpenNodeProfile) -> ThetaEstimate:
    """Arithmetic mean of the counts; independent of sigma."""
    return ThetaEstimate(sum(profile.counts) / profile.n)


def gaussian_match(u: int, theta: float, cfg: MetricConfig = MetricConfig()) -> float:
    """Match score in (0, 1]; equals 1 iff u == theta."""
    z = (u - theta) / cfg.sigma
    return math.exp(-0.5 * z * z)


def likelihood(profile: OpenNodeProfile, theta: float,
               cfg: MetricConfig = MetricConfig()) -> float:
    """Product of per-word match scores.

    Underflows to 0.0 for long, badly matched sentences; use
    log_likelihood when that matters.
    """
    prod = 1.0
    for u in profile.counts:
        prod *= gaussian_match(u, theta, cfg)
    return prod


def log_likelihood(profile: OpenNodeProfile, theta: float,
                   cfg: MetricConfig = MetricConfig()) -> float:
    """Natural log of likelihood(); finite for any sentence length."""
    s = 0.0
    for u in profile.counts:
        z = (u - theta) / cfg.sigma
        s += z * z
    return -0.5 * s


def shannon_entropy(profile: OpenNodeProfile) -> EntropyResult:
    """Entropy (bits) of count frequencies, p_i = freq(value) / n.

    Zero-probability values never occur by construction; unique counts
    are accumulated in ascending order so the floating-point sum is
    deterministic.
    """
    n = profile.n
    freqs = Counter(profile.counts)
    h = 0.0
    for value in sorted(freqs):
        p = freqs[value] / n
        h -= p * math.log2(p)
    return EntropyResult(h)
