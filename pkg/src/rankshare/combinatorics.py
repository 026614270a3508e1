"""Exact discrete rank-share counts.

Splitting ``T`` indistinguishable units among ``N`` participants gives
``C(T+N-1, N-1)`` weak compositions.  Sorting each composition in
descending order and tallying the value found at every rank yields the
rank-share histogram; dividing by the composition count gives the exact
discrete distribution of the share held by rank ``k``.

Two independent routes build the histogram:

* :func:`enumerate_rank_share_naive` walks every composition (reference
  oracle, guarded).
* :func:`count_rank_share_fast` walks partitions only and weights each by
  the number of compositions it represents, ``N! / prod(m_j!)``.

Everything here is integer or :class:`fractions.Fraction` arithmetic.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels
from ._format import fmt
from .errors import GuardExceeded, RankShareError

NAIVE_GUARD = 10**7

# numba path is used only when every count and multiplicity fits here
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class SplitParams:
    """``total`` units shared among ``participants``."""

    total: int
    participants: int

    def __post_init__(self):
        if int(self.total) != self.total or self.total < 0:
            raise RankShareError(f"total must be a nonnegative integer, got {self.total!r}")
        if int(self.participants) != self.participants or self.participants < 1:
            raise RankShareError(
                f"participants must be a positive integer, got {self.participants!r}")
        object.__setattr__(self, "total", int(self.total))
        object.__setattr__(self, "participants", int(self.participants))

    @property
    def T(self):
        return self.total

    @property
    def N(self):
        return self.participants


@dataclass(eq=False)
class RankShareHistogram:
    """Exact counts of compositions whose rank-``k`` value equals ``s``.

    ``counts[k - 1][s]`` holds the count for rank ``k`` (1-based) and share
    ``s`` in ``0..T``.  Index with ``hist[k, s]`` to use 1-based ranks.
    """

    params: SplitParams
    counts: list = field(repr=False)
    total: int

    def __getitem__(self, key):
        k, s = key
        self._check(k, s)
        return self.counts[k - 1][s]

    def __eq__(self, other):
        if not isinstance(other, RankShareHistogram):
            return NotImplemented
        return (self.params == other.params and self.total == other.total
                and self.counts == other.counts)

    def _check(self, k, s):
        if not 1 <= k <= self.params.N:
            raise RankShareError(f"rank {k} outside 1..{self.params.N}")
        if not 0 <= s <= self.params.T:
            raise RankShareError(f"share {s} outside 0..{self.params.T}")

    def pmf(self, k, s):
        """Exact probability that rank ``k`` holds exactly ``s`` units."""
        return Fraction(self[k, s], self.total)

    def probabilities(self):
        """Float array of shape (N, T + 1); row ``k - 1`` is the rank-``k`` PMF."""
        return np.array([[c / self.total for c in row] for row in self.counts])

    def expected_share(self, k):
        T = self.params.T
        if T == 0:
            raise RankShareError("expected share is undefined for T = 0")
        self._check(k, 0)
        num = sum(s * c for s, c in enumerate(self.counts[k - 1]))
        return float(Fraction(num, T * self.total))

    def rows(self):
        """Yield ``(rank, share, count, probability)`` in rank-major order."""
        for k, row in enumerate(self.counts, start=1):
            for s, c in enumerate(row):
                yield k, s, c, Fraction(c, self.total)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["rank", "share", "count", "probability"])
        for k, s, c, p in self.rows():
            w.writerow([k, s, c, fmt(p)])
        return buf.getvalue()

    def to_json(self):
        doc = {
            "T": self.params.T,
            "N": self.params.N,
            "total": str(self.total),
            "counts": [
                {"rank": k, "share": s, "count": str(c), "probability": fmt(p)}
                for k, s, c, p in self.rows()
            ],
        }
        return json.dumps(doc, indent=2) + "\n"


def count_compositions(p):
    """Number of weak compositions of ``T`` into ``N`` parts, ``C(T+N-1, N-1)``."""
    n = p.T + p.N - 1
    r = min(p.N - 1, p.T)
    # multiplicative form; each partial product is itself a binomial
    out = 1
    for j in range(1, r + 1):
        out = out * (n - r + j) // j
    return out


def _empty_counts(p):
    return [[0] * (p.T + 1) for _ in range(p.N)]


def enumerate_rank_share_naive(p, guard=NAIVE_GUARD):
    """Histogram by visiting every weak composition (stars and bars).

    Raises :class:`GuardExceeded` when there are more than ``guard``
    compositions.
    """
    total = count_compositions(p)
    if total > guard:
        raise GuardExceeded(
            f"{total} compositions for T={p.T}, N={p.N} exceeds the guard of {guard}")
    T, N = p.T, p.N
    counts = _empty_counts(p)
    seen = 0
    for bars in itertools.combinations(range(T + N - 1), N - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(T + N - 2 - prev)
        parts.sort(reverse=True)
        for k, s in enumerate(parts):
            counts[k][s] += 1
        seen += 1
    assert seen == total
    return RankShareHistogram(p, counts, total)


def partition_multiplicity(parts):
    """Number of distinct orderings of ``parts``: ``n! / prod(m_j!)``."""
    out = math.factorial(len(parts))
    for _, grp in itertools.groupby(sorted(parts)):
        out //= math.factorial(len(list(grp)))
    return out


def _default_threads():
    env = os.environ.get("RANKSHARE_THREADS")
    return int(env) if env else 1


def _chunks(lo, hi, n):
    # split [lo, hi] into n contiguous ranges; the upper ranges are cheap,
    # so bias boundaries toward the low end
    if n <= 1 or hi - lo < n:
        return [(lo, hi)]
    edges = [lo + round((hi - lo + 1) * (1 - (1 - j / n) ** 0.5)) for j in range(n + 1)]
    edges[-1] = hi + 1
    return [(a, b - 1) for a, b in zip(edges, edges[1:]) if b > a]


def count_rank_share_fast(p, threads=None, backend="auto"):
    """Histogram by walking partitions of ``T`` into ``N`` nonnegative parts.

    Each partition ``lambda`` adds ``N! / prod(m_j!)`` to
    ``counts[k][lambda_k]`` for every rank.  The result is exactly equal to
    :func:`enumerate_rank_share_naive` wherever both run.

    ``threads`` splits the range of the largest part across workers; the
    merged result does not depend on it.  Defaults to ``RANKSHARE_THREADS``
    or 1.

    ``backend="python"`` forces the arbitrary-precision interpreter path,
    which is otherwise used only when counts could overflow int64.
    """
    T, N = p.T, p.N
    total = count_compositions(p)
    if N == 1:
        counts = _empty_counts(p)
        counts[0][T] = 1
        return RankShareHistogram(p, counts, total)

    fact = math.factorial(N)
    if backend not in ("auto", "python"):
        raise RankShareError(f"unknown backend {backend!r}")
    compiled = backend == "auto" and total < _INT64_SAFE and fact < _INT64_SAFE
    if compiled:
        dtype, fact_arg = np.int64, np.int64(fact)
        walk = _kernels.walk_partitions
    else:
        dtype, fact_arg = object, fact
        walk = _kernels.walk_partitions.py_func

    def zeros(shape):
        if dtype is object:
            return np.full(shape, 0, dtype=object)
        return np.zeros(shape, dtype=np.int64)

    def run(lo, hi):
        hist = zeros((N, T + 1))
        dpen = zeros(T + 2)
        dlast = zeros(T + 2)
        got = walk(T, N, fact_arg, lo, hi, hist, dpen, dlast, zeros(N), zeros(N))
        return hist, dpen, dlast, got

    threads = _default_threads() if threads is None else max(1, int(threads))
    if N == 2:
        parts = [run(0, 0)]
    else:
        ranges = _chunks(-(-T // N), T, threads)
        if len(ranges) == 1:
            parts = [run(*ranges[0])]
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(lambda r: run(*r), ranges))

    counts = _empty_counts(p)
    seen = 0
    pen = [0] * (T + 2)
    last = [0] * (T + 2)
    for hist, dpen, dlast, got in parts:
        seen += int(got)
        for k in range(N - 2):
            row = counts[k]
            for s, c in enumerate(hist[k]):
                if c:
                    row[s] += int(c)
        for s in range(T + 2):
            pen[s] += int(dpen[s])
            last[s] += int(dlast[s])
    if seen != total:
        raise AssertionError(f"partition walk covered {seen} of {total} compositions")
    counts[N - 2] = list(itertools.accumulate(pen))[: T + 1]
    counts[N - 1] = list(itertools.accumulate(last))[: T + 1]
    return RankShareHistogram(p, counts, total)


@lru_cache(maxsize=32)
def rank_share_histogram(p):
    """Cached :func:`count_rank_share_fast`."""
    return count_rank_share_fast(p)


def discrete_pmf(p, k, s):
    """Exact probability that rank ``k`` holds ``s`` of the ``T`` units.

    Returned as a :class:`~fractions.Fraction`; wrap in ``float`` for a double.
    """
    return rank_share_histogram(p).pmf(k, s)


def discrete_expected_share(p, k):
    """Mean fraction ``s / T`` held by rank ``k`` under the discrete law."""
    if p.T == 0:
        raise RankShareError("expected share is undefined for T = 0")
    return rank_share_histogram(p).expected_share(k)
