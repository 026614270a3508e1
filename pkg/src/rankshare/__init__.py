"""Rank-share distribution: how the share held by the k-th largest of N
participants is distributed, and the Zipf-like decay of its mean."""

from .combinatorics import (RankShareHistogram, SplitParams, count_compositions,
                            count_rank_share_fast, discrete_expected_share, discrete_pmf,
                            enumerate_rank_share_naive)
from .errors import RankShareError
from .model import (cdf, expected_share, pdf, pdf_last_rank, polynomial_table, rank_profile,
                    support_bounds, zipf_series)

__version__ = "0.1.0"

__all__ = [
    "RankShareError",
    "RankShareHistogram",
    "SplitParams",
    "cdf",
    "count_compositions",
    "count_rank_share_fast",
    "discrete_expected_share",
    "discrete_pmf",
    "enumerate_rank_share_naive",
    "expected_share",
    "pdf",
    "pdf_last_rank",
    "polynomial_table",
    "rank_profile",
    "support_bounds",
    "zipf_series",
]
