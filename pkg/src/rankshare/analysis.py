"""Rank-size verification against tabulated category shares.

Input tables list categories down the first column and entities (towns,
countries, languages) across the header.  Each entity's values are turned
into shares, sorted descending, and averaged rank by rank; the averages are
then correlated with :func:`rankshare.model.rank_profile`.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import model
from ._format import fmt
from .errors import (DegenerateVariance, DuplicateCategory, EmptyTable,
                     MalformedCell, RankShareError, ZeroRowSum)


@dataclass
class Dataset:
    """``values[e][c]`` is the raw value of category ``c`` for entity ``e``."""

    entities: list
    categories: list
    values: np.ndarray
    provenance: str = ""

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if len(self.entities) < 1 or len(self.categories) < 1:
            raise EmptyTable("dataset needs at least one entity and one category")
        if self.values.shape != (len(self.entities), len(self.categories)):
            raise RankShareError(
                f"values shape {self.values.shape} does not match "
                f"{len(self.entities)} entities x {len(self.categories)} categories")
        if (self.values < 0).any():
            raise RankShareError("dataset values must be nonnegative")


@dataclass(frozen=True)
class ParseOptions:
    delimiter: str = ","
    total_row_pattern: str = "Total"
    drop_incomplete: bool = False


def _parse_cell(text):
    t = text.strip().rstrip("*").strip().rstrip("%").strip()
    return float(t)


def parse_table(source, options=ParseOptions()):
    """Read a delimiter-separated category table.

    ``source`` is a text stream or a string.  Trailing ``*`` footnote marks
    and ``%`` signs are stripped; rows whose label starts with
    ``options.total_row_pattern`` are skipped.  Empty cells raise
    :class:`MalformedCell` unless ``drop_incomplete`` is set, in which case
    the affected entity is dropped.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    rows = [r for r in csv.reader(source, delimiter=options.delimiter)
            if any(c.strip() for c in r)]
    if len(rows) < 2:
        raise EmptyTable("table needs a header row and at least one data row")
    header = [h.strip() for h in rows[0]]
    entities = header[1:]
    if not entities:
        raise EmptyTable("header names no entities")

    categories, table, missing = [], [], set()
    for r, row in enumerate(rows[1:], start=2):
        label = row[0].strip()
        if options.total_row_pattern and label.startswith(options.total_row_pattern):
            continue
        if label in categories:
            raise DuplicateCategory(label)
        cells = row[1:] + [""] * (len(entities) - len(row) + 1)
        if len(cells) > len(entities):
            raise MalformedCell(r, len(entities) + 2, options.delimiter.join(cells[len(entities):]))
        vals = []
        for c, text in enumerate(cells, start=2):
            if not text.strip():
                if options.drop_incomplete:
                    missing.add(c - 2)
                    vals.append(math.nan)
                    continue
                raise MalformedCell(r, c, text)
            try:
                v = _parse_cell(text)
            except ValueError:
                raise MalformedCell(r, c, text) from None
            if v < 0 or not math.isfinite(v):
                raise MalformedCell(r, c, text)
            vals.append(v)
        categories.append(label)
        table.append(vals)

    if not categories:
        raise EmptyTable("no category rows after filtering")
    keep = [j for j in range(len(entities)) if j not in missing]
    if not keep:
        raise EmptyTable("every entity has missing cells")
    values = np.array(table, dtype=float).T[keep]
    return Dataset([entities[j] for j in keep], categories, values)


def load_bls_towns():
    """Five-town occupational employment table (percent of total employment)."""
    text = resources.files("rankshare").joinpath("data/bls_towns.csv").read_text("utf-8")
    return parse_table(text)


@dataclass
class ShareMatrix:
    entities: list
    categories: list
    values: np.ndarray
    renormalized: bool


def to_shares(d, renormalize=True):
    """Row-normalise to shares; with ``renormalize=False`` treat values as percents."""
    sums = d.values.sum(axis=1)
    for name, s in zip(d.entities, sums):
        if not s > 0:
            raise ZeroRowSum(name)
    if renormalize:
        vals = d.values / sums[:, None]
    else:
        vals = d.values / 100.0
    return ShareMatrix(list(d.entities), list(d.categories), vals, renormalize)


def rank_rows(m):
    """Sort every row descending; equal values keep category order."""
    vals = m.values if isinstance(m, ShareMatrix) else np.asarray(m, dtype=float)
    order = np.argsort(-vals, axis=1, kind="stable")
    return np.take_along_axis(vals, order, axis=1)


def mean_by_rank(ranked):
    ranked = np.asarray(ranked, dtype=float)
    if ranked.ndim != 2:
        raise RankShareError("ranked matrix must be two-dimensional")
    return ranked.mean(axis=0)


def pearson(x, y):
    """Product-moment correlation using compensated sums."""
    x = [float(v) for v in x]
    y = [float(v) for v in y]
    if len(x) != len(y) or len(x) < 2:
        raise RankShareError("pearson needs two vectors of equal length >= 2")
    n = len(x)
    mx = math.fsum(x) / n
    my = math.fsum(y) / n
    dx = [v - mx for v in x]
    dy = [v - my for v in y]
    sxx = math.fsum(v * v for v in dx)
    syy = math.fsum(v * v for v in dy)
    if sxx == 0 or syy == 0:
        raise DegenerateVariance("correlation undefined for a constant vector")
    r = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


@dataclass
class FitReport:
    N: int
    observed: np.ndarray
    model: np.ndarray
    pearson_r: float
    entities: list
    ranked: np.ndarray = field(repr=False)
    options: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "n": self.N,
            "observed": [float(fmt(v)) for v in self.observed],
            "model": [float(fmt(v)) for v in self.model],
            "pearson_r": float(fmt(self.pearson_r)),
            "entities": list(self.entities),
            "options": dict(self.options),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["rank", "observed", "model"])
        for k, (o, e) in enumerate(zip(self.observed, self.model), start=1):
            w.writerow([k, fmt(o), fmt(e)])
        return buf.getvalue()


def fit_report(d, renormalize=True):
    """Rank every entity, average per rank and correlate with the model profile."""
    if len(d.categories) < 2:
        raise RankShareError("fit needs at least two categories")
    shares = to_shares(d, renormalize)
    ranked = rank_rows(shares)
    observed = mean_by_rank(ranked)
    N = len(d.categories)
    expected = model.rank_profile(N).expected
    r = pearson(observed, expected)
    return FitReport(N, observed, expected, r, list(d.entities), ranked,
                     {"renormalize": renormalize})
