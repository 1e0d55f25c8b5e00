"""Monte-Carlo harness: per-length load and entropy curves per mechanism.

For every (mechanism, length) cell the harness generates the configured
number of structure tokens, computes each token's mean open-node count
and entropy, and aggregates mean and spread.  Deterministic mechanisms
produce the same tree for every token, so they are computed once and
the spread is reported as 0; the tokens column still carries the
configured token count, which is what the row models.

Each cell derives its own random stream from the base seed, so results
are identical for any worker count and any scheduling order.  The sd
uses the population denominator.
"""
from __future__ import annotations

import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import fitstats, kernels, metrics, trees
from .errors import ConfigError
from .generate import Mechanism, generate
from .rng import GenSeed


@dataclass(frozen=True)
class SimConfig:
    min_len: int = 1
    max_len: int = 100
    tokens_per_length: int = 1000
    mechanisms: tuple = ()
    seed: GenSeed = GenSeed(0)
    sigma: float = 1.0

    def __post_init__(self):
        if self.min_len < 1 or self.min_len > self.max_len:
            raise ConfigError(
                f"need 1 <= min_len <= max_len, got [{self.min_len}, {self.max_len}]")
        if self.tokens_per_length < 1:
            raise ConfigError("tokens_per_length must be >= 1")
        if not self.mechanisms:
            raise ConfigError("at least one mechanism is required")


@dataclass(frozen=True)
class SimRow:
    mechanism: str
    length: int
    mean_theta: float
    sd_theta: float
    mean_entropy_bits: float
    tokens: int


@dataclass(frozen=True)
class SimCurve:
    rows: tuple

    def mechanisms(self) -> list[str]:
        return sorted({row.mechanism for row in self.rows})

    def by_mechanism(self, name: str) -> list[SimRow]:
        return [row for row in self.rows if row.mechanism == name]

    def row(self, name: str, length: int) -> SimRow:
        for r in self.rows:
            if r.mechanism == name and r.length == length:
                return r
        raise KeyError((name, length))


def _fmt(x: float) -> str:
    return f"{x:.6g}"


CSV_HEADER = "mechanism,length,mean_theta,sd_theta,mean_entropy_bits,tokens"


def curve_to_csv(curve: SimCurve) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for r in curve.rows:
        buf.write(f"{r.mechanism},{r.length},{_fmt(r.mean_theta)},"
                  f"{_fmt(r.sd_theta)},{_fmt(r.mean_entropy_bits)},{r.tokens}\n")
    return buf.getvalue()


def _cell(mechanism: Mechanism, length: int, tokens: int, seed: GenSeed) -> SimRow:
    """One (mechanism, length) aggregate; self-contained and order-free."""
    if mechanism.deterministic:
        tree = generate(mechanism, length)
        profile = trees.open_node_counts(tree)
        theta = float(metrics.theta_mle(profile))
        entropy = float(metrics.shannon_entropy(profile))
        return SimRow(mechanism.name, length, theta, 0.0, entropy, tokens)

    thetas = []
    entropy_sum = 0.0
    for token in range(tokens):
        stream_seed = seed.stream_seed(mechanism.mechanism_id, length, token)
        theta, h = kernels.multi_theta_entropy(
            length, stream_seed, mechanism.min_children, mechanism.max_children)
        thetas.append(theta)
        entropy_sum += h
    mean_theta = sum(thetas) / tokens
    var = 0.0
    for t in thetas:
        d = t - mean_theta
        var += d * d
    sd = (var / tokens) ** 0.5
    return SimRow(mechanism.name, length, mean_theta, sd, entropy_sum / tokens, tokens)


def _cell_args(args) -> SimRow:
    return _cell(*args)


def run_simulation(cfg: SimConfig, workers: int = 1) -> SimCurve:
    """All cells of the config, rows sorted by (mechanism name, length)."""
    mechs = sorted(set(cfg.mechanisms), key=lambda m: m.name)
    cells = [(m, n, cfg.tokens_per_length, cfg.seed)
             for m in mechs
             for n in range(cfg.min_len, cfg.max_len + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_cell_args, cells, chunksize=8))
    else:
        rows = [_cell(*args) for args in cells]
    return SimCurve(tuple(rows))


@dataclass(frozen=True)
class MechanismComparison:
    """Per-length load ratios and a log-model fit per hierarchical curve."""

    ratios: dict  # mechanism name -> list of (length, theta_ratio)
    log_fits: dict  # mechanism name -> FitResult of theta(n) = a + b ln n


def compare_mechanisms(curve: SimCurve, fit_min_len: int = 5) -> MechanismComparison:
    """Compare each hierarchical mechanism against the linear baseline.

    The log fit runs over lengths >= fit_min_len; the first few lengths
    sit below the logarithmic regime and are not sentence-scale anyway.
    """
    linear_rows = {r.length: r for r in curve.by_mechanism("linear")}
    if not linear_rows:
        raise ConfigError("comparison needs the linear mechanism in the curve")
    hier_names = [name for name in curve.mechanisms() if name != "linear"]
    if not hier_names:
        raise ConfigError("comparison needs at least one hierarchical mechanism")

    ratios: dict = {}
    log_fits: dict = {}
    for name in hier_names:
        rows = curve.by_mechanism(name)
        ratios[name] = [
            (r.length, r.mean_theta / linear_rows[r.length].mean_theta)
            for r in rows if r.length in linear_rows]
        points = [(float(r.length), r.mean_theta)
                  for r in rows if r.length >= fit_min_len]
        if len(points) > 2:
            log_fits[name] = fitstats.fit(points, fitstats.LogModel())
    return MechanismComparison(ratios, log_fits)
