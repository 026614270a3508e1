"""
Ranked occupation shares in five towns
======================================

Employment shares of 22 occupational groups in five towns, ranked within
each town and averaged by rank, closely follow the harmonic profile.

"""

import matplotlib.pyplot as plt
import numpy as np

from rankshare import analysis, model

##############################################################################
# The bundled table lists percents per occupational group, one column per
# town.  Category marks such as ``*`` are stripped while parsing and the
# "Total" row is dropped.

towns = analysis.load_bls_towns()
print(towns.entities)
print(len(towns.categories), "categories")

##############################################################################
# Rank each town's shares, average by rank and correlate with the model.
# Without renormalizing, the percents are used as printed.

report = analysis.fit_report(towns, renormalize=False)
print("mean share by rank (%):", np.round(100 * report.observed, 2))
print("Pearson r:", round(report.pearson_r, 6))

fig, ax = plt.subplots(figsize=(6, 4))
k = np.arange(1, report.N + 1)
ax.plot(k, 100 * report.observed, "o", label="five towns")
ax.plot(k, 100 * report.model, "-", label="harmonic profile")
ax.set_xlabel("rank")
ax.set_ylabel("share (%)")
ax.legend()
fig.tight_layout()
plt.show()
