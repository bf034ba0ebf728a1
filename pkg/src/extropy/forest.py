"""Small deterministic random forest plus the evaluation utilities around it.

The classifier is bagged CART: Gini impurity, midpoint threshold splits on
real features, equality splits on declared categorical features, and
majority vote at prediction.  Every source of randomness derives from the
seed (tree t uses seed + t), so identical inputs give identical models.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from .distributions import ValidationError

__all__ = [
    "ForestClassifier",
    "Metrics",
    "classification_metrics",
    "stratified_split",
    "make_classification_data",
]


@dataclass
class _Node:
    prediction: int | None = None
    feature: int = -1
    threshold: float = 0.0
    categorical: bool = False
    left: "_Node | None" = None
    right: "_Node | None" = None


def _gini_pair(left_counts: np.ndarray, right_counts: np.ndarray, n: int) -> np.ndarray:
    nl = left_counts.sum(axis=1)
    nr = right_counts.sum(axis=1)
    gl = 1.0 - ((left_counts / nl[:, None]) ** 2).sum(axis=1)
    gr = 1.0 - ((right_counts / nr[:, None]) ** 2).sum(axis=1)
    return (nl * gl + nr * gr) / n


def _best_split(x: np.ndarray, y: np.ndarray, n_classes: int, categorical: bool):
    """Best (impurity, threshold) for one feature, or None if unsplittable."""
    n = x.size
    if categorical:
        values = np.unique(x)
        if values.size < 2:
            return None
        rows = []
        total = np.bincount(y, minlength=n_classes).astype(float)
        for v in values:
            left = np.bincount(y[x == v], minlength=n_classes).astype(float)
            rows.append(left)
        left_counts = np.array(rows)
        impurity = _gini_pair(left_counts, total - left_counts, n)
        j = int(np.argmin(impurity))
        return float(impurity[j]), float(values[j])
    order = np.argsort(x, kind="stable")
    xs = x[order]
    ys = y[order]
    boundary = xs[:-1] < xs[1:]
    if not boundary.any():
        return None
    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), ys] = 1.0
    cum = np.cumsum(onehot, axis=0)
    left_counts = cum[:-1][boundary]
    total = cum[-1]
    impurity = _gini_pair(left_counts, total - left_counts, n)
    j = int(np.argmin(impurity))
    lo = xs[:-1][boundary][j]
    hi = xs[1:][boundary][j]
    return float(impurity[j]), float((lo + hi) / 2.0)


class ForestClassifier(BaseEstimator, ClassifierMixin):
    """Bagged CART ensemble with per-split feature subsampling.

    Parameters
    ----------
    n_trees, max_depth, min_samples_split : int
        Usual tree-growing controls.
    features_per_split : int, optional
        Features examined per split; defaults to ceil(sqrt(n_features)).
    seed : int
        Master seed; tree t draws from seed + t.
    categorical_features : sequence of int
        Column indices split by equality instead of threshold.
    """

    def __init__(
        self,
        n_trees: int = 50,
        max_depth: int = 10,
        min_samples_split: int = 2,
        features_per_split: int | None = None,
        seed: int = 0,
        categorical_features: Sequence[int] = (),
    ):
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.features_per_split = features_per_split
        self.seed = seed
        self.categorical_features = categorical_features

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y)
        if X.ndim != 2 or X.shape[0] != y.shape[0] or X.shape[0] == 0:
            raise ValidationError("X must be 2-d with one label per row")
        if self.n_trees < 1 or self.max_depth < 1 or self.min_samples_split < 2:
            raise ValidationError("invalid forest parameters")
        self.classes_, codes = np.unique(y, return_inverse=True)
        if self.classes_.size < 2:
            raise ValidationError("training data must contain at least two classes")
        d = X.shape[1]
        fps = self.features_per_split
        if fps is None:
            fps = math.ceil(math.sqrt(d))
        fps = max(1, min(fps, d))
        categorical = frozenset(int(c) for c in self.categorical_features)
        n = X.shape[0]
        self.trees_ = []
        for t in range(self.n_trees):
            rng = np.random.default_rng(self.seed + t)
            sample = rng.integers(0, n, size=n)
            self.trees_.append(
                self._grow(X[sample], codes[sample], rng, fps, categorical)
            )
        return self

    def _grow(self, X, y, rng, fps, categorical) -> _Node:
        n_classes = self.classes_.size

        def leaf(y_node) -> _Node:
            counts = np.bincount(y_node, minlength=n_classes)
            return _Node(prediction=int(np.argmax(counts)))

        def build(rows: np.ndarray, depth: int) -> _Node:
            y_node = y[rows]
            if (
                depth >= self.max_depth
                or rows.size < self.min_samples_split
                or np.all(y_node == y_node[0])
            ):
                return leaf(y_node)
            chosen = np.sort(rng.choice(X.shape[1], size=fps, replace=False))
            best = None
            for f in chosen:
                found = _best_split(X[rows, f], y_node, n_classes, f in categorical)
                if found is None:
                    continue
                impurity, threshold = found
                if best is None or impurity < best[0]:
                    best = (impurity, int(f), threshold)
            if best is None:
                return leaf(y_node)
            _, feature, threshold = best
            x = X[rows, feature]
            mask = (x == threshold) if feature in categorical else (x <= threshold)
            node = _Node(
                feature=feature,
                threshold=threshold,
                categorical=feature in categorical,
            )
            node.left = build(rows[mask], depth + 1)
            node.right = build(rows[~mask], depth + 1)
            return node

        return build(np.arange(X.shape[0]), 0)

    def predict(self, X):
        X = np.asarray(X, dtype=float)
        if X.ndim != 2:
            raise ValidationError("X must be 2-d")
        votes = np.zeros((X.shape[0], self.classes_.size), dtype=np.int64)

        def route(node: _Node, rows: np.ndarray) -> None:
            if node.prediction is not None:
                votes[rows, node.prediction] += 1
                return
            x = X[rows, node.feature]
            mask = (x == node.threshold) if node.categorical else (x <= node.threshold)
            if mask.any():
                route(node.left, rows[mask])
            if (~mask).any():
                route(node.right, rows[~mask])

        for tree in self.trees_:
            route(tree, np.arange(X.shape[0]))
        # ties go to the smallest class label
        return self.classes_[np.argmax(votes, axis=1)]


def stratified_split(X, y, test_fraction: float, seed: int = 0):
    """Per-class proportional train/test split, deterministic given the seed.

    Each class contributes round(test_fraction * count) test rows (capped at
    count - 1 so training always sees every class).  Classes with fewer than
    two samples are rejected.

    Returns (X_train, X_test, y_train, y_test).
    """
    X = np.asarray(X)
    y = np.asarray(y)
    if X.shape[0] != y.shape[0]:
        raise ValidationError("X and y must have the same number of rows")
    if not 0.0 < test_fraction < 1.0:
        raise ValidationError("test_fraction must be in (0, 1)")
    rng = np.random.default_rng(seed)
    train_idx: list[int] = []
    test_idx: list[int] = []
    for cls in np.unique(y):
        members = np.flatnonzero(y == cls)
        if members.size < 2:
            raise ValidationError(f"class {cls!r} has fewer than 2 samples")
        members = members[rng.permutation(members.size)]
        t = min(int(round(test_fraction * members.size)), members.size - 1)
        test_idx.extend(members[:t].tolist())
        train_idx.extend(members[t:].tolist())
    train = np.array(train_idx, dtype=int)
    test = np.array(test_idx, dtype=int)
    return X[train], X[test], y[train], y[test]


@dataclass(frozen=True)
class Metrics:
    """Confusion counts and the derived scores, with 0/0 defined as 0."""

    accuracy: float
    f1: float
    tpr: float
    tp: int
    fp: int
    fn: int
    tn: int
    positive_class: object = None


def classification_metrics(y_true, y_pred, positive_class=None) -> Metrics:
    """Accuracy, F1, and TPR from predictions.

    Accuracy is overall (multi-class); F1 and TPR are one-vs-rest against
    ``positive_class``, which defaults to the largest class label.  Ratios
    are computed in exact rational arithmetic and converted at the end.
    """
    y_true = list(y_true)
    y_pred = list(y_pred)
    if not y_true:
        raise ValidationError("empty label sequences")
    if len(y_true) != len(y_pred):
        raise ValidationError("y_true and y_pred must have the same length")
    if positive_class is None:
        positive_class = max(y_true)
    tp = fp = fn = tn = 0
    correct = 0
    for t, p in zip(y_true, y_pred):
        if t == p:
            correct += 1
        if t == positive_class and p == positive_class:
            tp += 1
        elif t == positive_class:
            fn += 1
        elif p == positive_class:
            fp += 1
        else:
            tn += 1

    def ratio(num: int, den: int) -> Fraction:
        return Fraction(num, den) if den else Fraction(0)

    accuracy = Fraction(correct, len(y_true))
    precision = ratio(tp, tp + fp)
    recall = ratio(tp, tp + fn)
    f1 = (
        2 * precision * recall / (precision + recall)
        if precision + recall > 0
        else Fraction(0)
    )
    return Metrics(
        accuracy=float(accuracy),
        f1=float(f1),
        tpr=float(recall),
        tp=tp,
        fp=fp,
        fn=fn,
        tn=tn,
        positive_class=positive_class,
    )


def make_classification_data(
    n_rows: int = 500,
    n_informative: int = 3,
    n_noise: int = 4,
    n_constant: int = 1,
    class_sep: float = 2.0,
    seed: int = 0,
):
    """Synthetic binary-classification table: informative columns first,
    then standard-normal noise, then constant columns.

    Returns (X, y, names) with a balanced label vector.
    """
    if n_rows < 4 or n_informative < 1:
        raise ValidationError("need n_rows >= 4 and at least one informative column")
    rng = np.random.default_rng(seed)
    y = np.zeros(n_rows, dtype=int)
    y[n_rows // 2 :] = 1
    y = y[rng.permutation(n_rows)]
    blocks = []
    names = []
    for i in range(n_informative):
        scale = 1.0 + 0.25 * i
        blocks.append(rng.normal(class_sep * y * scale, 1.0))
        names.append(f"info{i}")
    for i in range(n_noise):
        blocks.append(rng.normal(0.0, 1.0, size=n_rows))
        names.append(f"noise{i}")
    for i in range(n_constant):
        blocks.append(np.zeros(n_rows))
        names.append(f"const{i}")
    return np.column_stack(blocks), y, names
