"""Dataset ingestion, serialization and nearest-neighbor classification.

Two input formats are supported:

* timestamped CSV: header ``t,v1,...,vk`` (optionally preceded by a
  ``series_id`` column for multi-series files), one sample per row,
  sorted by time within each series;
* label TSV: one series per row, a label followed by the values, with
  implicit timestamps 1..n.
"""

from __future__ import annotations

import csv
import re
import warnings
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .kernel import twed
from .model import (
    ConfigError,
    MalformedHeader,
    NonIncreasingTimestamps,
    NonNumericField,
    TimeSeries,
    TwedParams,
    make_series,
)


@dataclass(frozen=True)
class Dataset:
    """A named collection of series, all of one dimension, with labels
    either present for every series or absent for every series."""

    name: str
    items: tuple[tuple[str | None, TimeSeries], ...]
    source_format: str

    def __post_init__(self):
        dims = {s.dim for _, s in self.items}
        if len(dims) > 1:
            raise ConfigError(f"mixed series dimensions in dataset: {sorted(dims)}")
        labelled = [label is not None for label, _ in self.items]
        if any(labelled) and not all(labelled):
            raise ConfigError("labels must be present for all series or none")

    def __len__(self) -> int:
        return len(self.items)

    @property
    def series(self) -> list[TimeSeries]:
        return [s for _, s in self.items]

    @property
    def labels(self) -> list[str | None]:
        return [label for label, _ in self.items]

    @property
    def labelled(self) -> bool:
        return len(self.items) > 0 and self.items[0][0] is not None


def _parse_float(text: str, line_no: int, path) -> float:
    try:
        return float(text)
    except ValueError:
        raise NonNumericField(f"{path}:{line_no}: not a number: {text!r}") from None


def parse_timestamped_csv(path) -> Dataset:
    """Parse a timestamped CSV file into a dataset (one or more series)."""
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MalformedHeader(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        has_id = header and header[0] == "series_id"
        cols = header[1:] if has_id else header
        if not cols or cols[0] != "t" or any(
            c != f"v{n}" for n, c in enumerate(cols[1:], start=1)
        ) or len(cols) < 2:
            raise MalformedHeader(
                f"{path}: expected header [series_id,]t,v1,...,vk, got {header}"
            )
        k = len(cols) - 1
        rows_by_series: dict[str, list] = {}
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise MalformedHeader(
                    f"{path}:{line_no}: expected {len(header)} fields, got {len(row)}"
                )
            sid = row[0].strip() if has_id else ""
            data = row[1:] if has_id else row
            t = _parse_float(data[0], line_no, path)
            values = [_parse_float(c, line_no, path) for c in data[1:]]
            bucket = rows_by_series.setdefault(sid, [])
            if bucket and t <= bucket[-1][0]:
                raise NonIncreasingTimestamps(
                    f"{path}:{line_no}: timestamp {t} is <= previous {bucket[-1][0]}"
                )
            bucket.append((t, values))
    items = tuple(
        (None, make_series(rows, dim=k)) for rows in rows_by_series.values()
    )
    if not items:
        warnings.warn(f"{path}: no data rows, dataset is empty", stacklevel=2)
    return Dataset(name=path.stem, items=items, source_format="timestamped-csv")


_FIELD_SPLIT = re.compile(r"[,\t ]+")


def parse_label_tsv(path) -> Dataset:
    """Parse a label-plus-values file (one series per row, implicit
    timestamps 1..n). Rows may have different lengths."""
    path = Path(path)
    items = []
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            fields = _FIELD_SPLIT.split(line)
            if len(fields) < 2:
                raise NonNumericField(
                    f"{path}:{line_no}: row has a label but no values"
                )
            label = fields[0]
            values = [_parse_float(f, line_no, path) for f in fields[1:]]
            series = make_series(
                [(float(t), [v]) for t, v in enumerate(values, start=1)], dim=1
            )
            items.append((label, series))
    return Dataset(name=path.stem, items=tuple(items), source_format="label-tsv")


def load_dataset(path, fmt: str | None = None) -> Dataset:
    """Load a dataset, inferring the format from the extension when not
    given (.csv -> timestamped, .tsv/.txt -> labelled)."""
    path = Path(path)
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" else "tsv"
    if fmt == "csv":
        return parse_timestamped_csv(path)
    if fmt == "tsv":
        return parse_label_tsv(path)
    raise ConfigError(f"unknown dataset format {fmt!r}")


def format_float(x: float) -> str:
    """Decimal serialization with 17 significant digits (round-trips
    float64 exactly)."""
    return format(float(x), ".17g")


def write_series_csv(series: TimeSeries, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t"] + [f"v{n}" for n in range(1, series.dim + 1)])
        for t, row in zip(series.times, series.values):
            writer.writerow([format_float(t)] + [format_float(v) for v in row])


def write_matrix_csv(matrix: np.ndarray, path) -> None:
    with open(path, "w", newline="") as fh:
        for row in matrix:
            fh.write(",".join(format_float(v) for v in row) + "\n")


def parse_matrix_csv(path) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", ndmin=2)


def distance_matrix(
    dataset: Dataset, params: TwedParams, jobs: int = 1
) -> np.ndarray:
    """Pairwise distance matrix: each unordered pair computed once and
    mirrored, so symmetry and the zero diagonal are structural. Output is
    identical for any worker count."""
    n = len(dataset)
    series = dataset.series
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    M = np.zeros((n, n))
    if jobs > 1 and len(pairs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        args = [
            (series[i].values, series[i].times, series[j].values, series[j].times,
             params.lam, params.gamma, params.norm_p)
            for i, j in pairs
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            dists = list(pool.map(_pair_distance, args, chunksize=64))
    else:
        dists = [twed(series[i], series[j], params) for i, j in pairs]
    for (i, j), d in zip(pairs, dists):
        M[i, j] = d
        M[j, i] = d
    return M


def _pair_distance(arg):
    va, ta, vb, tb, lam, gamma, norm_p = arg
    params = TwedParams(lam=lam, gamma=gamma, norm_p=norm_p)
    return twed(TimeSeries(va, ta), TimeSeries(vb, tb), params)


def knn_classify(
    train: Dataset, test: Dataset, k: int, params: TwedParams
) -> tuple[list[str], float]:
    """k-nearest-neighbor predictions for every test series.

    Distance ties go to the lower train index; vote ties to the smallest
    label in sort order. Returns (predictions, accuracy); accuracy is
    against the test labels when present, else NaN.
    """
    if not train.labelled:
        raise ConfigError("training dataset must be labelled")
    if not 1 <= k <= len(train):
        raise ConfigError(f"k={k} not in 1..{len(train)}")
    predictions = []
    correct = 0
    for label, series in test.items:
        dists = sorted(
            (twed(series, ts, params), idx, tl)
            for idx, (tl, ts) in enumerate(train.items)
        )
        votes = Counter(tl for _, _, tl in dists[:k])
        top = max(votes.values())
        predicted = min(l for l, c in votes.items() if c == top)
        predictions.append(predicted)
        if label is not None and predicted == label:
            correct += 1
    accuracy = correct / len(test) if test.labelled and len(test) else float("nan")
    return predictions, accuracy
