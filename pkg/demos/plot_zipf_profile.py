"""
Expected shares and Zipf's law
==============================

The expected share of rank ``k`` among ``N`` participants is
``(1/N) * sum_{i=k}^{N} 1/i``.  On log-log axes the profile bends away
from a straight Zipf line only near the tail.

"""

import matplotlib.pyplot as plt
import numpy as np

from rankshare import model

##############################################################################
# The profile for a handful of ranks.

prof = model.rank_profile(5)
print("N=5 expected shares:", np.round(prof.expected, 4))
print("last rank is 1/N^2:", prof.expected[-1] == 1 / 25)

##############################################################################
# Log-log plot against the pure ``1/k`` law, both scaled to the leader.

fig, ax = plt.subplots(figsize=(5, 4))
for N in (10, 100, 1000):
    x, y = np.array(model.zipf_series(N)).T
    ax.plot(x, y - y[0], label=f"N={N}")
k = np.arange(1, 1001)
ax.plot(np.log10(k), -np.log10(k), "k--", lw=1, label="1/k")
ax.set_xlabel("log10 rank")
ax.set_ylabel("log10 share (relative to rank 1)")
ax.legend()
fig.tight_layout()
plt.show()
