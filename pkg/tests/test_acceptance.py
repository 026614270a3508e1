"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -s -q`` to see just the
verdict lines.  Tolerances below are pinned; do not loosen them to make a
line go green.
"""

import math
import subprocess
import sys
import time
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np
import pytest
import sympy as sp
from scipy import integrate

from rankshare import analysis, model
from rankshare.combinatorics import (SplitParams, count_compositions, count_rank_share_fast,
                                     discrete_pmf, enumerate_rank_share_naive)
from rankshare.montecarlo import SimConfig, ks_distance, simulate

from printed_tables import PRINTED_POLYNOMIALS, POLYNOMIAL_MISPRINTS

GOLDEN = Path(__file__).parent / "golden"
TOWNS = str(resources.files("rankshare") / "data" / "bls_towns.csv")

PUBLISHED_RANK_MEANS = [16.2, 11.08, 9.36, 7.76, 7.06, 6.08, 5.32, 4.9, 4.64, 4.18, 3.94,
                3.04, 2.84, 2.68, 2.42, 2.2, 1.72, 1.46, 1.28, 1.0, 0.66, 0.18]


@pytest.fixture
def verdict(capsys):
    """Print one PASS/FAIL line for the criterion, then assert it."""
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}")
        assert ok, detail
    return emit


def test_c01_worked_example(verdict):
    t0 = time.perf_counter()
    p = SplitParams(10, 3)
    total = count_compositions(p)
    pmf = discrete_pmf(p, 1, 7)
    elapsed = time.perf_counter() - t0
    ok = total == 66 and pmf == Fraction(12, 66) and elapsed < 1.0
    verdict(1, ok, f"compositions={total}, P(rank1=7)={pmf} ({float(pmf):.6f}), {elapsed:.3f}s")


def test_c02_oracle_equivalence(verdict):
    t0 = time.perf_counter()
    bad = [(T, N) for T in range(13) for N in range(1, 6)
           if count_rank_share_fast(SplitParams(T, N)) != enumerate_rank_share_naive(SplitParams(T, N))]
    elapsed = time.perf_counter() - t0
    verdict(2, not bad and elapsed < 30, f"65 (T,N) pairs, mismatches={bad}, {elapsed:.2f}s")


def test_c03_normalization(verdict):
    worst = max(abs(model.cdf(N, k, 1 / k) - 1) for N in range(2, 11) for k in range(1, N + 1))
    # the printed factorial prefactor scales every density by (N-2)!, which
    # leaves N=2,3 intact and breaks normalization from N=4 on
    printed_mass = {N: math.factorial(N - 1) / (N - 1) for N in range(2, 11)}
    printed_fails = all(abs(printed_mass[N] - 1) > 0.5 for N in range(4, 11))
    ok = worst < 1e-9 and printed_fails
    verdict(3, ok, f"max|cdf(N,k,1/k)-1|={worst:.2e}; printed prefactor total mass "
                   f"N=4:{printed_mass[4]:g}, N=10:{printed_mass[10]:g} (not 1)")


def test_c03_printed_prefactor_mass_by_quadrature():
    # cross-check of the (N-2)! claim above by integrating the printed form
    N, k = 5, 2
    scale = (math.factorial(N - 1) * math.factorial(N)
             / (math.factorial(k - 1) * math.factorial(N - k))) / (N * (N - 1) * math.comb(N - 1, k - 1))
    cuts = [0.0] + [1 / m for m in range(N, 0, -1)]
    mass = sum(integrate.quad(lambda s: scale * model.pdf(N, k, s), a, b)[0]
               for a, b in zip(cuts, cuts[1:]))
    assert mass == pytest.approx(math.factorial(N - 2), rel=1e-9)


def test_c04_spacing_sum(verdict):
    worst = 0.0
    for N in range(2, 9):
        S = np.linspace(0, 1, 1002)[1:-1]
        total = sum(model.pdf(N, k, S) for k in range(1, N + 1))
        ref = N * (N - 1) * (1 - S) ** (N - 2)
        worst = max(worst, float(np.max(np.abs(total - ref) / ref)))
    verdict(4, worst < 1e-9, f"1000 interior points, N=2..8, max relative error={worst:.2e}")


def test_c05_expected_values(verdict):
    moment_err = max(abs(float(model.pdf_mean(N, k)) - sum(1 / i for i in range(k, N + 1)) / N)
                     for N in range(2, 11) for k in range(1, N + 1))
    last_ok = all(model.expected_share(N, N) == 1 / N**2 for N in range(1, 51))
    sum_err = max(abs(math.fsum(model.expected_share(N, k) for k in range(1, N + 1)) - 1)
                  for N in range(1, 101))
    ok = moment_err < 1e-8 and last_ok and sum_err < 1e-12
    verdict(5, ok, f"moment vs harmonic {moment_err:.1e}, E[last]=1/N^2 {last_ok}, "
                   f"|sum-1| {sum_err:.1e}")


def test_c06_polynomial_tables(verdict):
    S = sp.Symbol("S")
    matched, flagged, failed = 0, [], []
    tables = {N: model.polynomial_table(N) for N in (3, 4, 5)}
    for (N, k, lower), text in sorted(PRINTED_POLYNOMIALS.items()):
        lower = Fraction(lower)
        seg = next(s for s in tables[N][k - 1].segments if s.lower == lower)
        ours = sp.expand(sum(c * S**j for j, c in enumerate(seg.monomials(N))))
        printed = sp.expand(sp.sympify(text, locals={"S": S}))
        if ours == printed:
            matched += 1
        elif (N, k, str(lower)) in POLYNOMIAL_MISPRINTS and \
                sp.expand(ours - sp.Rational(POLYNOMIAL_MISPRINTS[N, k, str(lower)]) * printed) == 0:
            flagged.append((N, k, str(lower)))
        else:
            failed.append((N, k, str(lower)))
    ok = not failed and len(flagged) == len(POLYNOMIAL_MISPRINTS) and matched + len(flagged) == len(PRINTED_POLYNOMIALS)
    verdict(6, ok, f"{matched}/{len(PRINTED_POLYNOMIALS)} rows match exactly; flagged typos {flagged}; "
                   f"unexplained {failed}")


def _limit_error(T, N=4):
    hist = count_rank_share_fast(SplitParams(T, N))
    s = np.arange(T + 1)
    errs = []
    for k in range(1, N + 1):
        scaled = T * np.array([c / hist.total for c in hist.counts[k - 1]], dtype=float)
        errs.append(float(np.max(np.abs(scaled - model.pdf(N, k, s / T)))))
    return np.array(errs)


def test_c07_discrete_limit(verdict):
    N = 4
    grid = np.linspace(0, 1, 20001)
    peak = np.array([np.max(model.pdf(N, k, grid)) for k in range(1, N + 1)])
    # calibration: the lattice error shrinks like C/T; estimate C from two
    # coarser grids and require T=400 to follow the prediction
    e100, e200, e400 = _limit_error(100), _limit_error(200), _limit_error(400)
    C = (100 * e100 + 200 * e200) / 2
    predicted = C / 400
    follows = bool(np.all(np.abs(e400 - predicted) <= 0.25 * predicted))
    gate = 0.05 * peak
    ok = follows and bool(np.all(e400 < gate))
    verdict(7, ok, "T=400 error/max pdf per rank "
                   f"{np.round(e400 / peak, 4).tolist()} (gate 0.05); 1/T calibration "
                   f"predicted {np.round(predicted / peak, 4).tolist()}, within 25%: {follows}")


def test_c08_monte_carlo(verdict):
    t0 = time.perf_counter()
    emp = simulate(SimConfig(N=4, samples=500_000, seed=20240101))
    ks = [ks_distance(emp, 4, k) for k in range(1, 5)]
    z = (emp.means() - model.rank_profile(4).expected) / emp.standard_errors()
    elapsed = time.perf_counter() - t0
    ok = max(ks) < 0.005 and bool(np.all(np.abs(z) < 5)) and elapsed < 60
    verdict(8, ok, f"KS per rank {np.round(ks, 5).tolist()}, mean z-scores "
                   f"{np.round(z, 2).tolist()}, {elapsed:.2f}s")


def test_c09_published_rank_means(verdict):
    towns = analysis.load_bls_towns()
    means = analysis.mean_by_rank(analysis.rank_rows(towns.values))
    agree = all(round(m, 2) == t for m, t in zip(means, PUBLISHED_RANK_MEANS)) and len(means) == 22
    r = analysis.pearson(means, 100 * model.rank_profile(22).expected)
    verdict(9, agree and r > 0.99,
            f"22 rank means match to 2 decimals: {agree}; Pearson r={r:.6f}")


def test_c10_performance(verdict):
    t0 = time.perf_counter()
    hist = count_rank_share_fast(SplitParams(200, 8))
    elapsed = time.perf_counter() - t0
    exact = hist.total == math.comb(207, 7) and all(sum(row) == hist.total for row in hist.counts)
    verdict(10, exact and elapsed < 120, f"T=200, N=8 in {elapsed:.2f}s, total={hist.total}")


CLI_CASES = {
    "enumerate_t10_n3.csv": ["enumerate", "--t", "10", "--n", "3"],
    "expected_n22.csv": ["expected", "--n", "22"],
    "fit_towns.json": ["fit", "--input", TOWNS, "--no-renormalize", "--format", "json"],
}
CLI_OTHERS = [
    ["pdf", "--n", "4", "--k", "2", "--points", "21"],
    ["cdf", "--n", "4", "--k", "2", "--points", "21", "--format", "json"],
    ["zipf", "--n", "22"],
    ["table", "--n", "5"],
    ["simulate", "--n", "3", "--samples", "5000", "--seed", "7"],
]


def _cli(argv):
    proc = subprocess.run([sys.executable, "-m", "rankshare", *argv], capture_output=True)
    return proc.returncode, proc.stdout


def test_c11_cli_determinism(verdict):
    problems = []
    for name, argv in CLI_CASES.items():
        a, b = _cli(argv), _cli(argv)
        if a != b or a[0] != 0 or a[1] != (GOLDEN / name).read_bytes():
            problems.append(argv[0])
    for argv in CLI_OTHERS:
        a, b = _cli(argv), _cli(argv)
        if a != b or a[0] != 0:
            problems.append(argv[0])
    verdict(11, not problems, f"golden enumerate/expected/fit and repeat runs of "
                              f"{len(CLI_CASES) + len(CLI_OTHERS)} commands; differing: {problems}")
