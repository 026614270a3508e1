"""
Checking the densities by simulation
====================================

Draw random splits by cutting the unit interval at ``N-1`` uniform points,
rank the pieces and compare the histograms with the exact densities.

"""

import matplotlib.pyplot as plt
import numpy as np

from rankshare import model
from rankshare.montecarlo import SimConfig, ks_distance, simulate

##############################################################################
# Half a million samples with a fixed seed.  The result depends only on the
# seed and chunk size, never on the number of worker threads.

cfg = SimConfig(N=4, samples=500_000, seed=2024)
emp = simulate(cfg)

for k in range(1, 5):
    print(f"rank {k}: mean {emp.means()[k - 1]:.5f} "
          f"(exact {model.expected_share(4, k):.5f}), KS {ks_distance(emp, 4, k):.5f}")

##############################################################################
# Histogram against density.

fig, ax = plt.subplots(figsize=(7, 4))
S = np.linspace(0, 1, 1001)
for k in range(1, 5):
    ax.hist(emp.rank_samples(k), bins=200, density=True, alpha=0.35)
    ax.plot(S, model.pdf(4, k, S), lw=1.2, label=f"rank {k}")
ax.set_xlabel("share")
ax.legend()
fig.tight_layout()

##############################################################################
# The discrete mode cuts a grid of ``T`` units instead, so shares are
# integers and zero shares occur.

disc = simulate(SimConfig(N=4, samples=50_000, seed=1, mode="discrete", T=100))
print("discrete mode, fraction of last-rank zeros:", np.mean(disc.shares[:, 3] == 0))
plt.show()
