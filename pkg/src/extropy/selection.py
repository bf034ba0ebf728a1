"""Filter feature selection: extropy-rate prefix profiles and three baselines.

The extropy-rate method walks the columns in dataset order, scores the
prefix (X_1, ..., X_j) with the finite extropy rate of its empirical joint,
and keeps the k columns whose prefix values are largest.  Mutual
information, chi-square, and ANOVA F provide the per-column comparison
scores.  Estimator wrappers expose everything through the usual
fit/transform interface.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .distributions import LogBase, ValidationError
from .measures import _entropy_nats
from .rates import empirical_joint as _empirical_joint, prefix_rate_profile

__all__ = [
    "FeatureMatrix",
    "SelectionResult",
    "empirical_joint",
    "select_features_extropy",
    "mutual_information_score",
    "chi_square_score",
    "anova_f_score",
    "rank_features",
    "ExtropyRateSelector",
    "FilterScoreSelector",
]

RANK_METHODS = ("mi", "chi2", "fscore")


@dataclass(frozen=True)
class FeatureMatrix:
    """Rectangular matrix of categorical codes with named columns."""

    codes: np.ndarray
    names: tuple

    def __post_init__(self) -> None:
        codes = np.asarray(self.codes)
        if codes.ndim != 2 or codes.size == 0:
            raise ValidationError("feature matrix must be a non-empty 2-d array")
        if not np.issubdtype(codes.dtype, np.integer):
            if not np.all(codes == np.floor(codes)):
                raise ValidationError("feature codes must be integers")
            codes = codes.astype(np.int64)
        if np.any(codes < 0):
            raise ValidationError("feature codes must be non-negative")
        names = tuple(str(n) for n in self.names)
        if len(names) != codes.shape[1]:
            raise ValidationError("one name per column required")
        if len(set(names)) != len(names):
            raise ValidationError("column names must be distinct")
        codes.setflags(write=False)
        object.__setattr__(self, "codes", codes)
        object.__setattr__(self, "names", names)

    @property
    def n_rows(self) -> int:
        return self.codes.shape[0]

    @property
    def n_columns(self) -> int:
        return self.codes.shape[1]

    def column(self, index: int) -> np.ndarray:
        return self.codes[:, index]


def _columns_and_names(m) -> tuple[list, tuple]:
    """Columns as value lists plus names; accepts FeatureMatrix or 2-d array."""
    if isinstance(m, FeatureMatrix):
        return [m.column(c).tolist() for c in range(m.n_columns)], m.names
    arr = np.asarray(m)
    if arr.ndim != 2 or arr.size == 0:
        raise ValidationError("expected a FeatureMatrix or non-empty 2-d array")
    columns = [arr[:, c].tolist() for c in range(arr.shape[1])]
    return columns, tuple(f"x{i}" for i in range(arr.shape[1]))


@dataclass(frozen=True)
class SelectionResult:
    """Outcome of a selection run.

    ``selected`` lists column indices best-first; ``scores`` holds the
    per-prefix rate values for the extropy method and per-column scores for
    the baselines.
    """

    method: str
    k: int
    selected: tuple
    scores: tuple
    names: tuple
    prefix_rates: tuple | None = None

    @property
    def selected_names(self) -> tuple:
        return tuple(self.names[i] for i in self.selected)


def empirical_joint(m, cols: Sequence[int]):
    """Empirical joint pmf over the chosen columns of a feature matrix."""
    columns, _ = _columns_and_names(m)
    cols = list(cols)
    if not cols:
        raise ValidationError("need at least one column")
    for c in cols:
        if not 0 <= c < len(columns):
            raise ValidationError(f"column index {c} out of range")
    return _empirical_joint([columns[c] for c in cols])


def _top_k(scores: Sequence[float], k: int) -> tuple:
    # highest score wins, ties go to the lower column index
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    return tuple(order[:k])


def select_features_extropy(
    m, k: int, base: LogBase | str = LogBase.NATURAL
) -> SelectionResult:
    """Keep the k columns with the largest prefix extropy-rate values.

    The profile is computed over columns in matrix order; the method is
    deliberately order-sensitive.
    """
    columns, names = _columns_and_names(m)
    if not 1 <= k <= len(columns):
        raise ValidationError(f"k={k} out of range for {len(columns)} columns")
    profile = prefix_rate_profile(columns, base=base)
    values = [r.value for r in profile]
    return SelectionResult(
        method="extropy",
        k=k,
        selected=_top_k(values, k),
        scores=tuple(values),
        names=names,
        prefix_rates=tuple(profile),
    )


def _check_pair(feature, target) -> tuple[list, list]:
    feature = list(feature)
    target = list(target)
    if not feature:
        raise ValidationError("empty column")
    if len(feature) != len(target):
        raise ValidationError("feature and target must have the same length")
    return feature, target


def mutual_information_score(
    feature, target, base: LogBase | str = LogBase.NATURAL
) -> float:
    """I(F; T) = H(F) + H(T) - H(F, T) on the empirical distributions."""
    feature, target = _check_pair(feature, target)
    ln = LogBase.coerce(base).ln
    n = len(feature)

    def h(values) -> float:
        counts = Counter(values)
        return _entropy_nats([c / n for c in counts.values()])

    return (h(feature) + h(target) - h(list(zip(feature, target)))) / ln


def chi_square_score(feature, target) -> float:
    """Pearson chi-square statistic of the feature/target contingency table."""
    feature, target = _check_pair(feature, target)
    n = len(feature)
    observed = Counter(zip(feature, target))
    f_margin = Counter(feature)
    t_margin = Counter(target)
    if min(f_margin.values()) <= 0 or min(t_margin.values()) <= 0:
        raise ValidationError("contingency margins must be positive")
    total = 0.0
    for f in sorted(f_margin):
        for t in sorted(t_margin):
            expected = f_margin[f] * t_margin[t] / n
            diff = observed.get((f, t), 0) - expected
            total += diff * diff / expected
    return total


def anova_f_score(feature, target) -> float:
    """One-way ANOVA F statistic of a real feature grouped by target class.

    Returns 0 when the between-class sum of squares vanishes and +inf when
    classes are separated with zero within-class variance.
    """
    feature, target = _check_pair(feature, target)
    values = np.asarray(feature, dtype=float)
    groups: dict = {}
    for v, t in zip(values, target):
        groups.setdefault(t, []).append(v)
    c = len(groups)
    n = values.size
    if c < 2:
        raise ValidationError("ANOVA needs at least two classes")
    if n <= c:
        raise ValidationError("ANOVA needs more samples than classes")
    grand = float(values.mean())
    ss_between = 0.0
    ss_within = 0.0
    for members in groups.values():
        g = np.asarray(members)
        mean = float(g.mean())
        ss_between += g.size * (mean - grand) ** 2
        ss_within += float(((g - mean) ** 2).sum())
    if ss_between == 0.0:
        return 0.0
    if ss_within == 0.0:
        return math.inf
    return (ss_between / (c - 1)) / (ss_within / (n - c))


def rank_features(m, target, method: str, k: int) -> SelectionResult:
    """Score each column against the target independently and keep the top k.

    mi and chi2 treat column values as categories; fscore treats them as
    reals, so it can be handed the raw pre-discretization matrix.
    """
    columns, names = _columns_and_names(m)
    if method not in RANK_METHODS:
        raise ValidationError(f"unknown method {method!r}; choose from {RANK_METHODS}")
    if not 1 <= k <= len(columns):
        raise ValidationError(f"k={k} out of range for {len(columns)} columns")
    target = list(target)
    scorers = {
        "mi": mutual_information_score,
        "chi2": chi_square_score,
        "fscore": anova_f_score,
    }
    scorer = scorers[method]
    scores = [scorer(column, target) for column in columns]
    return SelectionResult(
        method=method,
        k=k,
        selected=_top_k(scores, k),
        scores=tuple(scores),
        names=names,
    )


class ExtropyRateSelector(BaseEstimator, TransformerMixin):
    """Unsupervised selector keeping the k best prefix extropy-rate columns.

    Parameters
    ----------
    k : int
        Number of columns to keep.
    base : str or LogBase
        Logarithm base for the rate values (does not affect the ranking).
    """

    def __init__(self, k: int = 3, base: str = "natural"):
        self.k = k
        self.base = base

    def fit(self, X, y=None):
        self.result_ = select_features_extropy(X, self.k, LogBase.coerce(self.base))
        self.n_features_in_ = len(self.result_.scores)
        self.support_ = np.zeros(self.n_features_in_, dtype=bool)
        self.support_[list(self.result_.selected)] = True
        return self

    def get_support(self) -> np.ndarray:
        return self.support_.copy()

    def transform(self, X):
        X = np.asarray(X)
        if X.ndim != 2 or X.shape[1] != self.n_features_in_:
            raise ValidationError("transform input must match the fitted column count")
        return X[:, self.support_]


class FilterScoreSelector(BaseEstimator, TransformerMixin):
    """Supervised top-k selector using mi, chi2, or fscore column scores."""

    def __init__(self, method: str = "mi", k: int = 3):
        self.method = method
        self.k = k

    def fit(self, X, y):
        if y is None:
            raise ValidationError("this selector needs a target")
        self.result_ = rank_features(X, list(y), self.method, self.k)
        self.n_features_in_ = len(self.result_.scores)
        self.support_ = np.zeros(self.n_features_in_, dtype=bool)
        self.support_[list(self.result_.selected)] = True
        return self

    def get_support(self) -> np.ndarray:
        return self.support_.copy()

    def transform(self, X):
        X = np.asarray(X)
        if X.ndim != 2 or X.shape[1] != self.n_features_in_:
            raise ValidationError("transform input must match the fitted column count")
        return X[:, self.support_]
