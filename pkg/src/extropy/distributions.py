"""Discrete probability containers shared by every module in the package.

``Pmf`` holds a finite one-dimensional mass function, ``JointPmf`` a sparse
table over integer index tuples.  Both are immutable and validated at
construction so downstream code can assume well-formed inputs.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from itertools import product as _cartesian
from typing import Iterable, Mapping, Sequence

import numpy as np

#: absolute tolerance on sum(masses) == 1
MASS_TOLERANCE = 1e-9


class ValidationError(ValueError):
    """An input violates a documented precondition."""


class NumericalDomainError(ArithmeticError):
    """A computation left its numerical domain (log of zero, divergent orbit)."""


class LogBase(Enum):
    """Logarithm base for information quantities: nats, bits, or hartleys."""

    NATURAL = "natural"
    TWO = "two"
    TEN = "ten"

    @property
    def ln(self) -> float:
        """ln(base); internal sums are in nats and divided by this."""
        return _BASE_LN[self]

    @classmethod
    def coerce(cls, base: "LogBase | str | int | float") -> "LogBase":
        """Accept a LogBase or a friendly alias such as ``'two'``, ``2``, ``'e'``."""
        if isinstance(base, cls):
            return base
        key = str(base).lower().strip()
        if key in _BASE_ALIASES:
            return _BASE_ALIASES[key]
        raise ValidationError(
            f"unknown log base {base!r}; expected one of natural, two, ten"
        )


_BASE_LN = {
    LogBase.NATURAL: 1.0,
    LogBase.TWO: math.log(2.0),
    LogBase.TEN: math.log(10.0),
}
_BASE_ALIASES = {
    "natural": LogBase.NATURAL,
    "nat": LogBase.NATURAL,
    "e": LogBase.NATURAL,
    "two": LogBase.TWO,
    "2": LogBase.TWO,
    "2.0": LogBase.TWO,
    "ten": LogBase.TEN,
    "10": LogBase.TEN,
    "10.0": LogBase.TEN,
}


@dataclass(frozen=True)
class Pmf:
    """Finite discrete probability mass function.

    Parameters
    ----------
    masses : array-like of float
        Non-negative probabilities summing to 1 within ``MASS_TOLERANCE``.
        Zero entries are legal and carry no information; they are kept so
        indices stay aligned with ``labels``.
    labels : sequence, optional
        Distinct category identifiers, one per mass.
    """

    masses: np.ndarray
    labels: tuple | None = None

    def __post_init__(self) -> None:
        masses = np.asarray(self.masses, dtype=float)
        if masses.ndim != 1 or masses.size == 0:
            raise ValidationError("a pmf needs a non-empty 1-d mass vector")
        if not np.all(np.isfinite(masses)):
            raise ValidationError("pmf masses must be finite")
        if np.any(masses < 0.0):
            raise ValidationError("pmf masses must be non-negative")
        total = math.fsum(masses.tolist())
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise ValidationError(
                f"pmf masses sum to {total!r}, expected 1 within {MASS_TOLERANCE}"
            )
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != masses.size:
                raise ValidationError("labels and masses must have equal length")
            if len(set(labels)) != len(labels):
                raise ValidationError("labels must be distinct")
            object.__setattr__(self, "labels", labels)
        masses.setflags(write=False)
        object.__setattr__(self, "masses", masses)

    @property
    def support_size(self) -> int:
        """Number of strictly positive masses."""
        return int(np.count_nonzero(self.masses > 0.0))

    @classmethod
    def uniform(cls, m: int, labels: Sequence | None = None) -> "Pmf":
        if m < 1:
            raise ValidationError("uniform pmf needs m >= 1")
        return cls(np.full(m, 1.0 / m), labels)

    @classmethod
    def normalized(cls, weights: Iterable[float], labels: Sequence | None = None) -> "Pmf":
        """Explicitly renormalize non-negative weights into a pmf."""
        w = np.asarray(list(weights), dtype=float)
        if w.size == 0 or np.any(w < 0.0) or not np.all(np.isfinite(w)):
            raise ValidationError("weights must be finite, non-negative, non-empty")
        total = math.fsum(w.tolist())
        if total <= 0.0:
            raise ValidationError("weights must have a positive sum")
        return cls(w / total, labels)

    @classmethod
    def from_counts(cls, counts: Mapping) -> "Pmf":
        """Empirical pmf from a label -> count mapping, labels sorted."""
        if not counts:
            raise ValidationError("empty counts")
        labels = sorted(counts)
        total = math.fsum(float(counts[k]) for k in labels)
        if total <= 0.0:
            raise ValidationError("counts must have a positive total")
        return cls(np.array([counts[k] / total for k in labels]), tuple(labels))


@dataclass(frozen=True)
class JointPmf:
    """Sparse joint probability table over integer index tuples.

    Only strictly positive entries are stored; ``support_sizes`` records the
    per-axis count of distinct indices that occur with positive mass.
    """

    table: dict
    arity: int
    support_sizes: tuple

    def __post_init__(self) -> None:
        if not isinstance(self.table, dict):
            raise ValidationError("table must be a dict")

    @classmethod
    def from_table(cls, entries: Mapping) -> "JointPmf":
        """Validate and build from a mapping of index tuples to probabilities."""
        if not entries:
            raise ValidationError("empty joint table")
        cleaned: dict[tuple, float] = {}
        arity = None
        for key, value in entries.items():
            idx = (key,) if isinstance(key, int) else tuple(key)
            if not idx or not all(isinstance(i, (int, np.integer)) for i in idx):
                raise ValidationError(f"joint index {key!r} is not a tuple of integers")
            idx = tuple(int(i) for i in idx)
            if arity is None:
                arity = len(idx)
            elif len(idx) != arity:
                raise ValidationError("all index tuples must share one arity")
            p = float(value)
            if not math.isfinite(p) or p < 0.0:
                raise ValidationError(f"probability {value!r} at {idx} is invalid")
            if idx in cleaned:
                raise ValidationError(f"duplicate index tuple {idx}")
            if p > 0.0:
                cleaned[idx] = p
        total = math.fsum(entries[k] for k in entries)
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise ValidationError(
                f"joint masses sum to {total!r}, expected 1 within {MASS_TOLERANCE}"
            )
        if not cleaned:
            raise ValidationError("joint table has no positive entries")
        ordered = dict(sorted(cleaned.items()))
        sizes = tuple(
            len({idx[axis] for idx in ordered}) for axis in range(arity)
        )
        return cls(ordered, arity, sizes)

    @classmethod
    def from_matrix(cls, matrix) -> "JointPmf":
        """2-axis joint from a dense probability matrix."""
        m = np.asarray(matrix, dtype=float)
        if m.ndim != 2:
            raise ValidationError("matrix joint must be 2-d")
        return cls.from_table({(i, j): m[i, j] for i in range(m.shape[0]) for j in range(m.shape[1])})

    @classmethod
    def uniform(cls, shape: Sequence[int]) -> "JointPmf":
        shape = tuple(int(s) for s in shape)
        if not shape or any(s < 1 for s in shape):
            raise ValidationError("uniform joint needs positive per-axis sizes")
        mass = 1.0 / math.prod(shape)
        return cls.from_table({idx: mass for idx in _cartesian(*(range(s) for s in shape))})

    @classmethod
    def product(cls, *components: Pmf) -> "JointPmf":
        """Independent joint of one pmf per axis."""
        if not components:
            raise ValidationError("product needs at least one component")
        table: dict[tuple, float] = {}
        supports = [
            [(i, p) for i, p in enumerate(c.masses) if p > 0.0] for c in components
        ]
        for combo in _cartesian(*supports):
            idx = tuple(i for i, _ in combo)
            table[idx] = math.prod(p for _, p in combo)
        return cls.from_table(table)

    @classmethod
    def from_rows(cls, rows: Iterable[tuple]) -> "JointPmf":
        """Empirical joint: each distinct observed tuple gets mass count/N."""
        counts = Counter(tuple(int(v) for v in row) for row in rows)
        n = sum(counts.values())
        if n == 0:
            raise ValidationError("no observations")
        return cls.from_table({idx: c / n for idx, c in counts.items()})

    @property
    def support_size(self) -> int:
        """Number of outcomes with strictly positive probability."""
        return len(self.table)

    def masses(self) -> np.ndarray:
        """Positive masses in index-sorted order."""
        return np.array(list(self.table.values()))

    def flatten(self) -> Pmf:
        """One-dimensional pmf over the positive joint outcomes."""
        keys = list(self.table)
        return Pmf(np.array([self.table[k] for k in keys]), tuple(keys))

    def axis_support(self, axis: int) -> list:
        self._check_axis(axis)
        return sorted({idx[axis] for idx in self.table})

    def marginal(self, axis: int) -> Pmf:
        """Sum the table over every other axis."""
        self._check_axis(axis)
        sums: dict[int, list] = {}
        for idx, p in self.table.items():
            sums.setdefault(idx[axis], []).append(p)
        labels = sorted(sums)
        return Pmf(np.array([math.fsum(sums[i]) for i in labels]), tuple(labels))

    def marginalize_onto(self, axes: Sequence[int]) -> "JointPmf":
        """Joint over the given axes (in the given order), others summed out."""
        axes = tuple(axes)
        for a in axes:
            self._check_axis(a)
        if len(set(axes)) != len(axes):
            raise ValidationError("axes must be distinct")
        sums: dict[tuple, list] = {}
        for idx, p in self.table.items():
            sums.setdefault(tuple(idx[a] for a in axes), []).append(p)
        return JointPmf.from_table({k: math.fsum(v) for k, v in sums.items()})

    def _check_axis(self, axis: int) -> None:
        if not 0 <= axis < self.arity:
            raise ValidationError(f"axis {axis} out of range for arity {self.arity}")
