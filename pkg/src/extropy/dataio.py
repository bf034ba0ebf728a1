"""CSV ingestion, column typing, and discretization.

Bridges raw tabular files to the categorical code matrices the selection
and rate estimators consume.  Parsing is strict: ragged rows, empty cells,
and unparseable numbers are reported with their row and column, never
repaired silently.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .distributions import JointPmf, Pmf, ValidationError
from .selection import FeatureMatrix

__all__ = [
    "Dataset",
    "DiscretizeSpec",
    "read_csv",
    "write_csv",
    "discretize",
    "dataset_to_feature_matrix",
    "ColumnDiscretizer",
    "read_pmf_file",
    "write_pmf_file",
]

COLUMN_TYPES = ("integer", "real", "categorical")


@dataclass(frozen=True)
class Dataset:
    """Typed columns parsed from a delimited file.

    ``columns`` holds numpy arrays for numeric columns and lists of strings
    for categorical ones, all of equal length; ``target`` optionally names
    the label column.
    """

    names: tuple
    columns: tuple
    types: tuple
    target: str | None = None

    def __post_init__(self) -> None:
        if len(self.names) != len(self.columns) or len(self.names) != len(self.types):
            raise ValidationError("names, columns, and types must align")
        if len(set(self.names)) != len(self.names):
            raise ValidationError("column names must be unique")
        lengths = {len(c) for c in self.columns}
        if len(lengths) > 1:
            raise ValidationError("columns must have equal length")
        for t in self.types:
            if t not in COLUMN_TYPES:
                raise ValidationError(f"unknown column type {t!r}")
        if self.target is not None and self.target not in self.names:
            raise ValidationError(f"target column {self.target!r} not present")

    @property
    def n_rows(self) -> int:
        return len(self.columns[0]) if self.columns else 0

    def column(self, name: str):
        try:
            return self.columns[self.names.index(name)]
        except ValueError:
            raise ValidationError(f"no column named {name!r}") from None

    def column_type(self, name: str) -> str:
        return self.types[self.names.index(name)]

    def with_target(self, target: str) -> "Dataset":
        return replace(self, target=target)


def _parse_cell(text: str):
    """Return an int, float, or None when the non-empty cell is not numeric."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        value = float(text)
    except ValueError:
        return None
    if not math.isfinite(value):
        return None
    return value


def read_csv(path, has_header: bool = True, delimiter: str = ",") -> Dataset:
    """Parse a delimited file into typed columns.

    Column types are inferred: all-integer cells give ``integer``, numeric
    cells ``real``, anything else ``categorical``.  Rows are numbered from 1
    (excluding the header) in error messages.
    """
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle, delimiter=delimiter)
        rows = list(reader)
    if not rows:
        raise ValidationError(f"{path}: file is empty")
    if has_header:
        names = tuple(h.strip() for h in rows[0])
        data_rows = rows[1:]
    else:
        names = tuple(f"c{i}" for i in range(len(rows[0])))
        data_rows = rows
    if not data_rows:
        raise ValidationError(f"{path}: no data rows")
    width = len(names)
    parsed: list[list] = [[] for _ in range(width)]
    raw: list[list] = [[] for _ in range(width)]
    for r, row in enumerate(data_rows, start=1):
        if len(row) != width:
            raise ValidationError(
                f"{path}: row {r} has {len(row)} cells, expected {width}"
            )
        for c, cell in enumerate(row):
            text = cell.strip()
            if not text:
                raise ValidationError(
                    f"{path}: row {r}, column {names[c]!r} is empty"
                )
            parsed[c].append(_parse_cell(text))
            raw[c].append(text)
    columns = []
    types = []
    for c in range(width):
        values = parsed[c]
        if any(v is None for v in values):
            columns.append(list(raw[c]))
            types.append("categorical")
        elif all(isinstance(v, int) for v in values):
            columns.append(np.array(values, dtype=np.int64))
            types.append("integer")
        else:
            columns.append(np.array(values, dtype=float))
            types.append("real")
    return Dataset(names, tuple(columns), tuple(types))


def write_csv(dataset: Dataset, path, delimiter: str = ",") -> None:
    """Write a dataset back to disk; floats keep 17 significant digits."""

    def fmt(value) -> str:
        if isinstance(value, (float, np.floating)):
            return repr(float(value))
        return str(value)

    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, delimiter=delimiter)
        writer.writerow(dataset.names)
        for r in range(dataset.n_rows):
            writer.writerow([fmt(col[r]) for col in dataset.columns])


@dataclass(frozen=True)
class DiscretizeSpec:
    """How to turn a real column into categorical codes.

    mode 'round' indexes distinct rounded values in sorted order,
    'equal_width' clamps floor((x - min)/width) into [0, bins), and
    'quantile' cuts at rank-based boundaries with ties going to the lower
    bin.  Codes are compacted to a contiguous 0..m-1 alphabet afterwards.
    """

    mode: str = "quantile"
    bins: int = 10
    decimals: int = 1

    def __post_init__(self) -> None:
        if self.mode not in ("round", "equal_width", "quantile"):
            raise ValidationError(f"unknown discretize mode {self.mode!r}")
        if self.bins < 1 or self.decimals < 0:
            raise ValidationError("need bins >= 1 and decimals >= 0")


def _compact(codes: np.ndarray) -> np.ndarray:
    _, compacted = np.unique(codes, return_inverse=True)
    return compacted.astype(np.int64)


def discretize(values, spec: DiscretizeSpec) -> np.ndarray:
    """Map a real column to contiguous non-negative integer codes.

    Monotone for the 'round' and 'equal_width' modes; a zero-width range
    collapses to a single code 0.
    """
    x = np.asarray(values, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ValidationError("discretize expects a non-empty 1-d column")
    if not np.all(np.isfinite(x)):
        raise ValidationError("discretize expects finite values")
    if spec.mode == "round":
        return _compact(np.round(x, spec.decimals))
    lo = float(x.min())
    hi = float(x.max())
    if hi == lo:
        return np.zeros(x.size, dtype=np.int64)
    if spec.mode == "equal_width":
        width = (hi - lo) / spec.bins
        codes = np.floor((x - lo) / width).astype(np.int64)
        return _compact(np.clip(codes, 0, spec.bins - 1))
    boundaries = np.quantile(x, [i / spec.bins for i in range(1, spec.bins)])
    return _compact(np.searchsorted(boundaries, x, side="left"))


def default_feature_spec(values) -> DiscretizeSpec:
    """Quantile binning with bins = min(10, distinct count)."""
    distinct = len(np.unique(np.asarray(values, dtype=float)))
    return DiscretizeSpec("quantile", bins=max(1, min(10, distinct)))


def dataset_to_feature_matrix(
    dataset: Dataset,
    target: str | None = None,
    spec: DiscretizeSpec | None = None,
    overrides: dict | None = None,
) -> FeatureMatrix:
    """Discretize every non-target column into a FeatureMatrix.

    Integer and categorical columns are recoded directly; real columns go
    through ``spec`` (default: quantile with min(10, distinct) bins), with
    ``overrides`` supplying per-column specs by name.
    """
    overrides = overrides or {}
    code_columns = []
    names = []
    for name, column, ctype in zip(dataset.names, dataset.columns, dataset.types):
        if target is not None and name == target:
            continue
        if ctype == "real":
            column_spec = overrides.get(name, spec) or default_feature_spec(column)
            codes = discretize(column, column_spec)
        elif ctype == "integer":
            if name in overrides:
                codes = discretize(np.asarray(column, dtype=float), overrides[name])
            else:
                codes = _compact(np.asarray(column))
        else:
            _, codes = np.unique(np.asarray(column, dtype=object), return_inverse=True)
            codes = codes.astype(np.int64)
        code_columns.append(codes)
        names.append(name)
    if not code_columns:
        raise ValidationError("no feature columns left after removing the target")
    return FeatureMatrix(np.column_stack(code_columns), tuple(names))


class ColumnDiscretizer(BaseEstimator, TransformerMixin):
    """Per-column discretizer over a 2-d real matrix.

    Fit records each column's code mapping (rounded-value alphabet, bin
    edges, or quantile boundaries); transform applies it, clamping unseen
    values into the nearest bin.
    """

    def __init__(self, mode: str = "quantile", bins: int = 10, decimals: int = 1):
        self.mode = mode
        self.bins = bins
        self.decimals = decimals

    def fit(self, X, y=None):
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.size == 0:
            raise ValidationError("expected a non-empty 2-d matrix")
        spec = DiscretizeSpec(self.mode, self.bins, self.decimals)
        self.spec_ = spec
        self.columns_ = []
        for c in range(X.shape[1]):
            x = X[:, c]
            if spec.mode == "round":
                alphabet = np.unique(np.round(x, spec.decimals))
                self.columns_.append(("round", alphabet))
            elif spec.mode == "equal_width":
                self.columns_.append(("equal_width", (float(x.min()), float(x.max()))))
            else:
                cuts = np.quantile(x, [i / spec.bins for i in range(1, spec.bins)])
                self.columns_.append(("quantile", cuts))
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.n_features_in_:
            raise ValidationError("transform input must match the fitted column count")
        out = np.empty(X.shape, dtype=np.int64)
        for c, (mode, state) in enumerate(self.columns_):
            x = X[:, c]
            if mode == "round":
                alphabet = state
                idx = np.searchsorted(alphabet, np.round(x, self.spec_.decimals))
                out[:, c] = np.clip(idx, 0, alphabet.size - 1)
            elif mode == "equal_width":
                lo, hi = state
                if hi == lo:
                    out[:, c] = 0
                else:
                    width = (hi - lo) / self.spec_.bins
                    codes = np.floor((x - lo) / width).astype(np.int64)
                    out[:, c] = np.clip(codes, 0, self.spec_.bins - 1)
            else:
                out[:, c] = np.searchsorted(state, x, side="left")
        return out


def read_pmf_file(path):
    """Parse the tab-separated pmf/joint text format.

    Each non-comment line is an index tuple followed by a probability, all
    tab-separated.  Single-index files give a Pmf (labels may be arbitrary
    strings); multi-index files give a JointPmf with integer indices.
    """
    entries = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            parts = text.split("\t")
            if len(parts) < 2:
                raise ValidationError(
                    f"{path}: line {lineno} needs an index and a probability"
                )
            try:
                prob = float(parts[-1])
            except ValueError:
                raise ValidationError(
                    f"{path}: line {lineno} has a non-numeric probability"
                ) from None
            entries.append((tuple(p.strip() for p in parts[:-1]), prob))
    if not entries:
        raise ValidationError(f"{path}: no pmf entries found")
    arity = len(entries[0][0])
    if any(len(idx) != arity for idx, _ in entries):
        raise ValidationError(f"{path}: inconsistent index arity")
    if arity == 1:
        labels = [idx[0] for idx, _ in entries]
        if len(set(labels)) != len(labels):
            raise ValidationError(f"{path}: duplicate labels")
        return Pmf(np.array([p for _, p in entries]), tuple(labels))
    try:
        table = {tuple(int(i) for i in idx): p for idx, p in entries}
    except ValueError:
        raise ValidationError(f"{path}: joint indices must be integers") from None
    return JointPmf.from_table(table)


def write_pmf_file(dist, path) -> None:
    """Write a Pmf or JointPmf in the tab-separated text format."""
    with open(path, "w", encoding="utf-8") as handle:
        if isinstance(dist, JointPmf):
            for idx, p in dist.table.items():
                handle.write("\t".join(str(i) for i in idx) + f"\t{p!r}\n")
        else:
            labels = dist.labels or tuple(range(dist.masses.size))
            for label, p in zip(labels, dist.masses):
                handle.write(f"{label}\t{float(p)!r}\n")
