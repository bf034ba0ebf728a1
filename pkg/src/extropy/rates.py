"""Per-step uncertainty rates for finite discrete processes.

The finite extropy rate of an n-variable process with joint support size S is

    (1/n) * (log(S - 1) + J(joint) / (S - 1)),

with the degenerate convention that a single-outcome process has rate zero.
Large state counts such as m**n are handled in log space throughout.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .distributions import JointPmf, LogBase, ValidationError
from .measures import _entropy_nats, _extropy_nats

__all__ = [
    "RateEstimate",
    "finite_extropy_rate",
    "finite_entropy_rate",
    "naive_rate_sequence",
    "iid_rate_limit_check",
    "sequence_extropy_rate",
    "prefix_rate_profile",
    "encode_column",
    "empirical_joint",
]

# above this support count the single-sequence correction term is
# numerically zero and is clamped to avoid float degradation
_CORRECTION_SUPPORT_LIMIT = 1e15


@dataclass(frozen=True)
class RateEstimate:
    """An uncertainty rate together with the context that produced it.

    ``support`` is the number of positive-probability joint states (possibly
    a huge Python int for sequence estimates), ``n`` the process length.
    """

    value: float
    n: int
    support: int
    base: LogBase

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError("process length must be >= 1")
        if self.support < 1:
            raise ValidationError("support must be >= 1")


def finite_extropy_rate(
    joint: JointPmf, n: int | None = None, base: LogBase | str = LogBase.NATURAL
) -> RateEstimate:
    """Finite-process extropy rate of a joint distribution.

    ``n`` defaults to the joint's arity; pass it explicitly when the table
    already encodes a flattened multi-step process.
    """
    base = LogBase.coerce(base)
    if n is None:
        n = joint.arity
    if n < 1:
        raise ValidationError("process length must be >= 1")
    s = joint.support_size
    if s == 1:
        return RateEstimate(0.0, n, 1, base)
    j_nats = _extropy_nats(joint.table.values())
    value = (math.log(s - 1) + j_nats / (s - 1)) / (n * base.ln)
    return RateEstimate(value, n, s, base)


def finite_entropy_rate(
    joint: JointPmf, n: int | None = None, base: LogBase | str = LogBase.NATURAL
) -> RateEstimate:
    """Entropy of the joint divided by the process length."""
    base = LogBase.coerce(base)
    if n is None:
        n = joint.arity
    if n < 1:
        raise ValidationError("process length must be >= 1")
    h_nats = _entropy_nats(joint.table.values())
    return RateEstimate(h_nats / (n * base.ln), n, joint.support_size, base)


def _uniform_extropy_nats(log_states: float) -> float:
    """Extropy (nats) of a uniform distribution with ln(#states) = log_states."""
    u = math.exp(-log_states)  # 1 / S, underflows to 0 for huge state counts
    if u >= 1.0:
        return 0.0
    if u <= 0.0:
        return 1.0
    return (1.0 / u - 1.0) * (-math.log1p(-u))


def naive_rate_sequence(
    k: int, n_max: int, base: LogBase | str = LogBase.NATURAL
) -> list[float]:
    """J(uniform over k**n states) / n for n = 1..n_max.

    Dividing the bounded joint extropy by n drives this to zero, which is
    why the rate definition rescales by the support size instead.
    """
    base = LogBase.coerce(base)
    if k < 2:
        raise ValidationError("naive rate sequence needs k >= 2")
    if n_max < 1:
        raise ValidationError("n_max must be >= 1")
    log_k = math.log(k)
    return [
        _uniform_extropy_nats(n * log_k) / (n * base.ln) for n in range(1, n_max + 1)
    ]


def iid_rate_limit_check(
    k: int, n: int, base: LogBase | str = LogBase.NATURAL
) -> float:
    """Residual of the finite rate of an IID uniform process against log k.

    Computes (1/n) log(k**n - 1) + J_uniform / (n (k**n - 1)) - log k from
    independently evaluated pieces; the result vanishes as n grows.
    """
    base = LogBase.coerce(base)
    if k < 2 or n < 1:
        raise ValidationError("need k >= 2 and n >= 1")
    log_k = math.log(k)
    log_s = n * log_k
    u = math.exp(-log_s)
    log_s_minus_1 = log_s + math.log1p(-u)
    j_nats = _uniform_extropy_nats(log_s)
    if log_s < 700.0:
        s_minus_1 = math.expm1(log_s)
        correction = j_nats / (n * s_minus_1)
    else:
        correction = 0.0
    return (log_s_minus_1 / n + correction - log_k) / base.ln


def sequence_extropy_rate(
    values: Sequence, base: LogBase | str = LogBase.NATURAL
) -> RateEstimate:
    """Extropy rate of a finite categorical series under the IID product model.

    With n observations over m distinct values, the observed sequence gets
    probability P = prod_t count(x_t)/n and the modeled support is m**n, so

        rate = (1/n) * (log(m**n - 1) - (1-P) log(1-P) / (m**n - 1)).

    A single-valued series has rate zero.  Relabeling the values leaves the
    result unchanged.
    """
    base = LogBase.coerce(base)
    values = list(values)
    n = len(values)
    if n == 0:
        raise ValidationError("series must be non-empty")
    counts = Counter(values)
    m = len(counts)
    if m == 1:
        return RateEstimate(0.0, n, 1, base)

    log_m = math.log(m)
    log_support = n * log_m
    log_support_minus_1 = log_support + math.log1p(-math.exp(-log_support))

    log_n = math.log(n)
    log_p = math.fsum(c * (math.log(c) - log_n) for c in sorted(counts.values()))
    if log_support > math.log(_CORRECTION_SUPPORT_LIMIT):
        correction = 0.0
    else:
        denominator = float(m) ** n - 1.0
        one_minus_p = -math.expm1(log_p)
        correction = -one_minus_p * math.log(one_minus_p) / denominator

    value = (log_support_minus_1 + correction) / (n * base.ln)
    return RateEstimate(value, n, m**n, base)


def encode_column(values: Sequence) -> tuple[np.ndarray, list]:
    """Map arbitrary hashable values to contiguous integer codes.

    Returns (codes, alphabet) with the alphabet in sorted order when the
    values are sortable, first-seen order otherwise.
    """
    distinct = list(dict.fromkeys(values))
    try:
        alphabet = sorted(distinct)
    except TypeError:
        alphabet = distinct
    lookup = {v: i for i, v in enumerate(alphabet)}
    return np.array([lookup[v] for v in values], dtype=np.int64), alphabet


def empirical_joint(columns: Sequence[Sequence]) -> JointPmf:
    """Empirical joint over row tuples, each distinct tuple with mass count/N."""
    columns = [list(c) for c in columns]
    if not columns:
        raise ValidationError("need at least one column")
    n_rows = len(columns[0])
    if n_rows == 0:
        raise ValidationError("columns must be non-empty")
    if any(len(c) != n_rows for c in columns):
        raise ValidationError("columns must all have the same number of rows")
    encoded = [encode_column(c)[0] for c in columns]
    return JointPmf.from_rows(zip(*encoded))


def prefix_rate_profile(
    columns: Sequence[Sequence], base: LogBase | str = LogBase.NATURAL
) -> list[RateEstimate]:
    """Finite extropy rate of the first j columns, for j = 1..#columns.

    Each prefix is treated as a j-variable process whose empirical joint
    assigns mass count/N to every distinct observed row tuple.
    """
    base = LogBase.coerce(base)
    columns = [list(c) for c in columns]
    if not columns:
        raise ValidationError("need at least one column")
    n_rows = len(columns[0])
    if any(len(c) != n_rows for c in columns):
        raise ValidationError("columns must all have the same number of rows")
    profile = []
    for j in range(1, len(columns) + 1):
        joint = empirical_joint(columns[:j])
        profile.append(finite_extropy_rate(joint, n=j, base=base))
    return profile
