"""
Continuous rank-share densities
===============================

In the limit of a continuous volume the shares are the spacings of ``N-1``
uniform cut points.  The density of the ``k``-th largest share is a
piecewise polynomial in ``S``.

"""

import matplotlib.pyplot as plt
import numpy as np

from rankshare import model
from rankshare.combinatorics import SplitParams, count_rank_share_fast

N = 4
S = np.linspace(0, 1, 2001)

##############################################################################
# Density and distribution function for every rank.

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
for k in range(1, N + 1):
    ax1.plot(S, model.pdf(N, k, S), label=f"rank {k}")
    ax2.plot(S, model.cdf(N, k, S))
ax1.set_title("pdf")
ax2.set_title("cdf")
ax1.legend()
for ax in (ax1, ax2):
    ax.set_xlabel("S")

##############################################################################
# The pieces
# ----------
#
# Each rank's density switches polynomial at ``S = 1/d``.  The coefficient
# vectors over the basis ``(1 - iS)^(N-2)`` follow a binomial pattern.

for seg in model.piecewise_pdf(N, 2).segments:
    print(f"d={seg.d}  ({seg.lower}, {seg.upper}]  coeffs={list(seg.coeffs)}")

##############################################################################
# Discrete counts approach the density
# ------------------------------------
#
# ``T * P(rank k holds s units)`` approaches ``pdf(s/T)`` with an error of
# order ``1/T``.

T = 400
hist = count_rank_share_fast(SplitParams(T, N))
s = np.arange(T + 1) / T
for k in (1, 3):
    ax1.plot(s, T * np.asarray(hist.probabilities()[k - 1]), "k.", ms=1.5)
    err = np.max(np.abs(T * np.asarray(hist.probabilities()[k - 1]) - model.pdf(N, k, s)))
    print(f"rank {k}: max deviation at T={T} is {err:.4f}")

fig.tight_layout()
plt.show()
