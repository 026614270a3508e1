"""
Counting every way to split a volume
====================================

Split ``T`` indivisible units among ``N`` participants in every possible
way and ask: how often does the largest participant hold ``s`` units?

"""

import matplotlib.pyplot as plt
import numpy as np

from rankshare import SplitParams, count_compositions, count_rank_share_fast, discrete_pmf

##############################################################################
# A small case by hand
# --------------------
#
# Ten units among three participants can be split in 66 ordered ways
# (zero shares allowed).  Twelve of them give the leader exactly seven.

p = SplitParams(10, 3)
print("ways to split:", count_compositions(p))
print("P(leader holds 7) =", discrete_pmf(p, 1, 7), "=", float(discrete_pmf(p, 1, 7)))

##############################################################################
# The full histogram comes from walking integer partitions instead of all
# compositions.  Each partition stands for ``N!/prod(m_j!)`` orderings, so the
# counts stay exact even when they no longer fit in 64 bits.

hist = count_rank_share_fast(p)
print(hist.to_csv()[:120], "...")

##############################################################################
# A larger grid
# -------------
#
# With ``T = 200`` and ``N = 8`` there are about 2.9e12 compositions, yet the
# walk takes about a second.  Plot the probability mass function of each rank.

big = count_rank_share_fast(SplitParams(200, 8))
fig, ax = plt.subplots(figsize=(7, 4))
shares = np.arange(201) / 200
for k, row in enumerate(big.probabilities(), start=1):
    ax.plot(shares, row, label=f"rank {k}")
ax.set_xlabel("share of total")
ax.set_ylabel("probability")
ax.set_title("Exact rank-share distribution, T=200, N=8")
ax.legend(ncol=2, fontsize="small")
fig.tight_layout()
plt.show()
