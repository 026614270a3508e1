"""Continuous rank-share distribution.

With the total normalised to 1, the ``N`` shares are the spacings of
``N - 1`` uniform cut points.  The share held by rank ``k`` (the ``k``-th
largest spacing) has density

    f(S) = N (N-1) C(N-1, k-1) * sum_{i=k}^{d} (-1)^(i-k) C(N-k, i-k) (1 - i S)^(N-2)

where ``d = min(N, floor(1/S))`` selects the active terms.  On each
interval ``(1/(d+1), 1/d]`` the density is therefore a polynomial of degree
``N - 2``.  Its mean reduces to the harmonic sum ``(1/N) sum_{i=k}^{N} 1/i``,
whose decay with rank is the Zipf curve.

Scalar calls accept ``float`` or :class:`fractions.Fraction` (the latter is
evaluated exactly); array-like inputs are evaluated with numpy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import RankShareError


def _check_rank(N, k, min_n=1):
    if int(N) != N or N < min_n:
        raise RankShareError(f"N must be an integer >= {min_n}, got {N!r}")
    if int(k) != k or not 1 <= k <= N:
        raise RankShareError(f"rank k must be in 1..{N}, got {k!r}")


def support_bounds(N, k):
    """``(min, max)`` share attainable by rank ``k``: ``(1/N, 1)`` for the
    leader, ``(0, 1/k)`` for everyone else."""
    _check_rank(N, k)
    if k == 1:
        return Fraction(1, N), Fraction(1)
    return Fraction(0), Fraction(1, k)


def range_index(N, S):
    """Index ``d`` of the interval ``(1/(d+1), 1/d]`` containing ``S``, capped at ``N``."""
    if S < 0 or S > 1:
        raise RankShareError(f"share must lie in [0, 1], got {S!r}")
    if N * S <= 1:
        return N
    return min(N, math.floor(1 / S))


def core_coefficients(N, k, d):
    """Integer weights ``a_1..a_N`` of ``(1 - iS)^(N-2)`` on segment ``d``.

    ``a_i = (-1)^(i-k) C(N-1, k-1) C(N-k, i-k)`` for ``k <= i <= d``, else 0.
    Multiplying by ``N (N-1)`` turns the combination into the density.
    """
    _check_rank(N, k)
    head = math.comb(N - 1, k - 1)
    return tuple(
        (-1) ** (i - k) * head * math.comb(N - k, i - k) if k <= i <= d else 0
        for i in range(1, N + 1)
    )


def _survival_weights(N, k):
    # P(rank k > S) = sum_i w_i (1 - iS)_+^(N-1)
    return [(i, (-1) ** (i - k) * math.comb(i - 1, k - 1) * math.comb(N, i))
            for i in range(k, N + 1)]


def _pdf_scalar(N, k, S):
    lo, hi = support_bounds(N, k)
    if S < lo or S > hi:
        return 0 * S
    d = range_index(N, S)
    if k == 1:
        # S == 1/N belongs to the leader's last segment
        d = min(d, N - 1)
    head = math.comb(N - 1, k - 1)
    acc = 0 * S
    for i in range(k, d + 1):
        acc += (-1) ** (i - k) * math.comb(N - k, i - k) * (1 - i * S) ** (N - 2)
    return N * (N - 1) * head * acc


def _pdf_array(N, k, S):
    S = np.asarray(S, dtype=float)
    lo, hi = (float(b) for b in support_bounds(N, k))
    with np.errstate(divide="ignore", over="ignore"):
        d = np.where(S > 0, np.floor(1.0 / np.where(S > 0, S, 1.0)), N)
    d = np.minimum(d, N if k > 1 else N - 1)
    acc = np.zeros_like(S)
    for i in range(k, N + 1):
        base = np.where(i <= d, 1.0 - i * S, 0.0)
        term = (-1) ** (i - k) * math.comb(N - k, i - k) * base ** (N - 2)
        acc += np.where(i <= d, term, 0.0)
    out = N * (N - 1) * math.comb(N - 1, k - 1) * acc
    return np.where((S < lo) | (S > hi), 0.0, out)


def pdf(N, k, S):
    """Density of the share held by rank ``k`` among ``N >= 2`` participants."""
    _check_rank(N, k, min_n=2)
    if np.ndim(S) == 0 and not isinstance(S, np.ndarray):
        return _pdf_scalar(N, k, S)
    return _pdf_array(N, k, S)


def pdf_last_rank(N, S):
    """Density of the smallest share, ``N (N-1) (1 - N S)^(N-2)`` on ``[0, 1/N]``."""
    _check_rank(N, N, min_n=2)
    if np.ndim(S) == 0 and not isinstance(S, np.ndarray):
        if S < 0 or S > Fraction(1, N):
            return 0 * S
        return N * (N - 1) * (1 - N * S) ** (N - 2)
    S = np.asarray(S, dtype=float)
    inside = (S >= 0) & (S <= 1.0 / N)
    return np.where(inside, N * (N - 1) * np.where(inside, 1 - N * S, 0.0) ** (N - 2), 0.0)


def _cdf_scalar(N, k, S):
    lo, hi = support_bounds(N, k)
    if S < lo:
        return 0 * S
    if S >= hi:
        return 1 + 0 * S
    tail = 0 * S
    for i, w in _survival_weights(N, k):
        base = 1 - i * S
        if base > 0:
            tail += w * base ** (N - 1)
    out = 1 - tail
    if isinstance(out, Fraction):
        return out
    return min(1.0, max(0.0, out))


def _cdf_array(N, k, S):
    S = np.asarray(S, dtype=float)
    lo, hi = (float(b) for b in support_bounds(N, k))
    tail = np.zeros_like(S)
    for i, w in _survival_weights(N, k):
        tail += w * np.maximum(1.0 - i * S, 0.0) ** (N - 1)
    out = np.clip(1.0 - tail, 0.0, 1.0)
    out = np.where(S < lo, 0.0, out)
    return np.where(S >= hi, 1.0, out)


def cdf(N, k, S):
    """``P(rank-k share <= S)``.

    Integrates the density term by term: each ``(1 - iS)^(N-2)`` piece has
    antiderivative ``-(1 - iS)^(N-1) / (i (N-1))``, and because every piece
    switches on exactly where it vanishes the segment sums collapse to a
    single expression in the positive parts ``(1 - iS)_+``.
    """
    _check_rank(N, k, min_n=2)
    if np.ndim(S) == 0 and not isinstance(S, np.ndarray):
        return _cdf_scalar(N, k, S)
    return _cdf_array(N, k, S)


def ppf(N, k, q, iterations=64):
    """Inverse of :func:`cdf` by bisection on the support."""
    _check_rank(N, k, min_n=2)
    q = np.asarray(q, dtype=float)
    lo_b, hi_b = (float(b) for b in support_bounds(N, k))
    lo = np.full_like(q, lo_b)
    hi = np.full_like(q, hi_b)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        below = _cdf_array(N, k, mid) < q
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def pdf_mean(N, k):
    """Mean of the rank-``k`` density integrated term by term.

    ``int_0^{1/i} S (1 - iS)^(N-2) dS = 1 / (i^2 N (N-1))``, which leaves
    ``C(N-1, k-1) sum_i (-1)^(i-k) C(N-k, i-k) / i^2``.  Returned as an
    exact :class:`~fractions.Fraction`.
    """
    _check_rank(N, k, min_n=2)
    head = math.comb(N - 1, k - 1)
    return head * sum(Fraction((-1) ** (i - k) * math.comb(N - k, i - k), i * i)
                      for i in range(k, N + 1))


def expected_share(N, k):
    """Expected share of rank ``k``: ``(1/N) sum_{i=k}^{N} 1/i``."""
    _check_rank(N, k)
    if k == N:
        return 1.0 / (N * N)
    return math.fsum(1.0 / i for i in range(k, N + 1)) / N


@dataclass(frozen=True)
class RankProfile:
    """Expected share for every rank ``1..N``."""

    N: int
    expected: np.ndarray

    def zipf_series(self):
        return zipf_series(self.N, self)


def rank_profile(N):
    _check_rank(N, 1)
    return RankProfile(N, np.array([expected_share(N, k) for k in range(1, N + 1)]))


def zipf_series(N, profile=None):
    """``(log10 k, log10 E[share_k])`` for ``k = 1..N``."""
    profile = profile or rank_profile(N)
    return [(math.log10(k), math.log10(e)) for k, e in enumerate(profile.expected, start=1)]


@dataclass(frozen=True)
class Segment:
    """One polynomial piece of a rank density, valid on ``(lower, upper]``."""

    d: int
    lower: Fraction
    upper: Fraction
    coeffs: tuple

    def monomials(self, N):
        """Expand ``sum_i a_i (1 - iS)^(N-2)`` into integer coefficients of
        ``S^0, S^1, ..., S^(N-2)``."""
        m = N - 2
        out = [0] * (m + 1)
        for i, a in enumerate(self.coeffs, start=1):
            if a:
                for j in range(m + 1):
                    out[j] += a * math.comb(m, j) * (-i) ** j
        return tuple(out)

    def __call__(self, S):
        m = len(self.coeffs) - 2
        return sum(a * (1 - i * S) ** m for i, a in enumerate(self.coeffs, start=1) if a)


@dataclass(frozen=True)
class PiecewisePdf:
    """Rank-``k`` density as core polynomial pieces times ``norm = N (N-1)``.

    Segments are ordered by increasing share and tile the support.
    """

    N: int
    k: int
    segments: tuple
    norm: int

    def segment(self, d):
        for seg in self.segments:
            if seg.d == d:
                return seg
        raise KeyError(d)

    def __call__(self, S):
        first = self.segments[0]
        if S == first.lower:
            return self.norm * first(S)
        for seg in self.segments:
            if seg.lower < S <= seg.upper:
                return self.norm * seg(S)
        return 0 * S

    def to_dict(self):
        return {
            "N": self.N,
            "k": self.k,
            "segments": [
                {"d": s.d, "lower": float(s.lower), "upper": float(s.upper),
                 "coeffs": list(s.coeffs)}
                for s in self.segments
            ],
        }


def piecewise_pdf(N, k):
    _check_rank(N, k, min_n=2)
    segs = []
    top = N if k > 1 else N - 1
    for d in range(top, k - 1, -1):
        lower = Fraction(0) if d == N else Fraction(1, d + 1)
        upper = Fraction(1, d)
        segs.append(Segment(d, lower, upper, core_coefficients(N, k, d)))
    return PiecewisePdf(N, k, tuple(segs), N * (N - 1))


def polynomial_table(N):
    """Piecewise densities for every rank of ``N`` participants."""
    _check_rank(N, 1, min_n=3)
    return [piecewise_pdf(N, k) for k in range(1, N + 1)]


@dataclass(frozen=True)
class SecondLastForms:
    """Unnormalised density of rank ``N-1`` as two closed forms.

    ``lower`` holds on ``(0, 1/N)``, ``upper`` on ``[1/N, 1/(N-1)]``; both
    are monomial coefficient tuples (``S^0`` first).  ``scale`` maps them
    onto :func:`pdf`.
    """

    N: int
    breakpoint: Fraction
    lower: tuple
    upper: tuple
    scale: int

    def __call__(self, S):
        if S < 0 or S > Fraction(1, self.N - 1):
            return 0 * S
        coeffs = self.lower if S < self.breakpoint else self.upper
        return sum(c * S ** j for j, c in enumerate(coeffs))


def _power_monomials(a, m):
    # (1 - a S)^m
    return [math.comb(m, j) * (-a) ** j for j in range(m + 1)]


def second_last_polynomials(N):
    """``[(1-(N-1)S)^(N-2) - (1-NS)^(N-2)] / (N-2)`` below ``1/N`` and
    ``(1-(N-1)S)^(N-2) / (N-2)`` above it."""
    _check_rank(N, 1, min_n=3)
    m = N - 2
    hi = _power_monomials(N - 1, m)
    lo = _power_monomials(N, m)
    upper = tuple(Fraction(c, m) for c in hi)
    lower = tuple(Fraction(a - b, m) for a, b in zip(hi, lo))
    # pdf(N, N-1) = N (N-1) * C(N-1, N-2) * (N-2) * form
    return SecondLastForms(N, Fraction(1, N), lower, upper, N * (N - 1) ** 2 * m)
