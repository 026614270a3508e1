"""Seeded uniform-spacing simulator.

Cutting the unit interval at ``N - 1`` uniform points and sorting the
``N`` pieces gives one draw of the ranked shares.  ``mode="discrete"``
mirrors the integer-grid version: cut points are drawn from ``0..T``
(inclusive), so repeated cuts produce zero-width pieces.

Sampling is split into fixed-size chunks.  Chunk ``j`` draws from its own
PCG64 stream seeded by ``(seed, j)``, so a run is reproducible for a given
``(seed, chunk_size)`` no matter how many threads execute it.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import stats

from . import model
from ._format import fmt
from .errors import RankShareError

DEFAULT_CHUNK = 100_000


@dataclass(frozen=True)
class SimConfig:
    N: int
    samples: int
    seed: int
    mode: str = "continuous"
    T: int = 100
    chunk_size: int = DEFAULT_CHUNK

    def __post_init__(self):
        if self.N < 2:
            raise RankShareError("simulation needs N >= 2")
        if self.samples < 1:
            raise RankShareError("samples must be >= 1")
        if self.mode not in ("continuous", "discrete"):
            raise RankShareError(f"mode must be 'continuous' or 'discrete', got {self.mode!r}")
        if self.mode == "discrete" and self.T < 1:
            raise RankShareError("discrete grid T must be >= 1")
        if self.chunk_size < 1:
            raise RankShareError("chunk_size must be >= 1")


def chunk_rng(seed, index):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index])))


def _spacings(n, N, rng):
    cuts = np.sort(rng.random((n, N - 1)), axis=1)
    edges = np.concatenate([np.zeros((n, 1)), cuts, np.ones((n, 1))], axis=1)
    return -np.sort(-np.diff(edges, axis=1), axis=1)


def _grid_spacings(n, N, T, rng):
    cuts = np.sort(rng.integers(0, T, size=(n, N - 1), endpoint=True), axis=1)
    edges = np.concatenate(
        [np.zeros((n, 1), dtype=np.int64), cuts, np.full((n, 1), T, dtype=np.int64)], axis=1)
    return -np.sort(-np.diff(edges, axis=1), axis=1)


def sample_shares(N, rng):
    """One ranked share vector (descending, sums to 1)."""
    if N < 2:
        raise RankShareError("sample_shares needs N >= 2")
    return _spacings(1, N, rng)[0]


@dataclass(frozen=True, eq=False)
class EmpiricalRankDistribution:
    """Simulated ranked shares.

    ``shares`` has one row per sample, sorted descending.  In discrete mode
    it holds integer units out of ``T``; :attr:`fractions` always gives
    shares of the whole.
    """

    config: SimConfig
    shares: np.ndarray

    @property
    def N(self):
        return self.config.N

    @property
    def fractions(self):
        if self.config.mode == "discrete":
            return self.shares / self.config.T
        return self.shares

    @cached_property
    def _sorted(self):
        return np.sort(self.fractions, axis=0)

    def rank_samples(self, k):
        """Sorted (ascending) sample of the rank-``k`` share."""
        return self._sorted[:, k - 1]

    def means(self):
        return self.fractions.mean(axis=0)

    def standard_errors(self):
        return self.fractions.std(axis=0, ddof=1) / math.sqrt(len(self.shares))

    def histogram_rows(self, bin_width=0.002):
        """Yield ``(rank, bin_lower, bin_upper, count, empirical_density)``.

        Discrete runs use one bin per grid value ``s``: ``[s/T, (s+1)/T)``.
        """
        n = len(self.shares)
        for k in range(1, self.N + 1):
            if self.config.mode == "discrete":
                T = self.config.T
                counts = np.bincount(self.shares[:, k - 1], minlength=T + 1)
                for s, c in enumerate(counts):
                    yield k, s / T, (s + 1) / T, int(c), c / n * T
            else:
                lo, hi = (float(b) for b in model.support_bounds(self.N, k))
                start = math.floor(lo / bin_width)
                stop = math.ceil(hi / bin_width)
                edges = np.arange(start, stop + 1) * bin_width
                counts, _ = np.histogram(self.shares[:, k - 1], bins=edges)
                for a, b, c in zip(edges[:-1], edges[1:], counts):
                    yield k, a, b, int(c), c / (n * bin_width)

    def histogram_csv(self, bin_width=0.002):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["rank", "bin_lower", "bin_upper", "count", "empirical_density"])
        for k, a, b, c, dens in self.histogram_rows(bin_width):
            w.writerow([k, fmt(a), fmt(b), c, fmt(dens)])
        return buf.getvalue()


def _run_chunk(cfg, index):
    n = min(cfg.chunk_size, cfg.samples - index * cfg.chunk_size)
    rng = chunk_rng(cfg.seed, index)
    if cfg.mode == "discrete":
        return _grid_spacings(n, cfg.N, cfg.T, rng)
    return _spacings(n, cfg.N, rng)


def simulate(cfg, threads=1):
    """Draw ``cfg.samples`` ranked share vectors."""
    nchunks = -(-cfg.samples // cfg.chunk_size)
    if threads > 1 and nchunks > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            blocks = list(pool.map(lambda j: _run_chunk(cfg, j), range(nchunks)))
    else:
        blocks = [_run_chunk(cfg, j) for j in range(nchunks)]
    return EmpiricalRankDistribution(cfg, np.concatenate(blocks, axis=0))


def ks_distance(emp, N, k):
    """Kolmogorov-Smirnov distance between the simulated rank-``k`` shares
    and the analytic CDF."""
    if emp.N != N:
        raise RankShareError(f"empirical distribution has N={emp.N}, query has N={N}")
    sample = emp.rank_samples(k)
    return float(stats.kstest(sample, lambda x: model.cdf(N, k, np.asarray(x))).statistic)


def pooled_spacing_ks(emp):
    """KS distance of all shares pooled together against the single-spacing
    law ``1 - (1 - S)^(N-1)``."""
    N = emp.N
    pooled = emp.fractions.ravel()
    return float(stats.kstest(pooled, lambda x: 1.0 - (1.0 - np.asarray(x)) ** (N - 1)).statistic)
