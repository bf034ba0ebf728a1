"""Scalar and joint information functionals on discrete distributions.

Entropy weights surprise by occurrence probabilities, extropy by the
complementary non-occurrence probabilities.  All sums use ``math.fsum`` so
results are exactly invariant under permutations of the masses, and the
conventions 0*log(0) = 0 and (1-p)*log(1-p) = 0 at p = 1 hold throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .distributions import (
    JointPmf,
    LogBase,
    NumericalDomainError,
    Pmf,
    ValidationError,
)

__all__ = [
    "shannon_entropy",
    "extropy",
    "generalized_extropy",
    "joint_extropy",
    "marginal",
    "conditional_extropy",
    "duality_gap",
    "rescaled_entropy_identity_gap",
    "simpson_diversity",
    "generalized_conditional_identity_gap",
    "joint_extropy_bounds",
    "JointExtropyBounds",
]


def as_pmf(p) -> Pmf:
    """Coerce a Pmf, mass sequence, or array into a validated Pmf."""
    if isinstance(p, Pmf):
        return p
    if isinstance(p, JointPmf):
        return p.flatten()
    return Pmf(np.asarray(p, dtype=float))


def as_joint(j) -> JointPmf:
    """Coerce a JointPmf, mapping, or 2-d array into a validated JointPmf."""
    if isinstance(j, JointPmf):
        return j
    if isinstance(j, dict):
        return JointPmf.from_table(j)
    arr = np.asarray(j, dtype=float)
    if arr.ndim == 2:
        return JointPmf.from_matrix(arr)
    raise ValidationError("expected a JointPmf, an index->probability dict, or a 2-d array")


def _entropy_nats(masses: Iterable[float]) -> float:
    return math.fsum(-p * math.log(p) for p in masses if p > 0.0)


def _extropy_nats(masses: Iterable[float]) -> float:
    # terms vanish at p = 0 and, by convention, at p = 1
    return math.fsum(-(1.0 - p) * math.log1p(-p) for p in masses if 0.0 < p < 1.0)


def shannon_entropy(p, base: LogBase | str = LogBase.NATURAL) -> float:
    """Shannon entropy -sum p_i log p_i of a pmf."""
    pmf = as_pmf(p)
    return _entropy_nats(pmf.masses) / LogBase.coerce(base).ln


def extropy(p, base: LogBase | str = LogBase.NATURAL) -> float:
    """Extropy -sum (1 - p_i) log(1 - p_i), the complementary dual of entropy."""
    pmf = as_pmf(p)
    return _extropy_nats(pmf.masses) / LogBase.coerce(base).ln


def generalized_extropy(masses: Sequence[float], base: LogBase | str = LogBase.NATURAL) -> float:
    """Extropy form -sum (T - m_i) log(T - m_i) for an unnormalized mass vector.

    ``T`` is the total mass.  For a valid pmf (T = 1) this reduces to
    :func:`extropy`.  Unlike extropy the result may be negative when T > 1.
    """
    m = np.asarray(masses, dtype=float)
    if m.ndim != 1 or m.size == 0:
        raise ValidationError("masses must be a non-empty 1-d vector")
    if not np.all(np.isfinite(m)) or np.any(m < 0.0):
        raise ValidationError("masses must be finite and non-negative")
    total = math.fsum(m.tolist())
    if total <= 0.0:
        raise ValidationError("total mass must be positive")
    terms = []
    for v in m:
        rest = total - v
        if rest > 0.0:
            terms.append(-rest * math.log(rest))
    return math.fsum(terms) / LogBase.coerce(base).ln


def joint_extropy(j, base: LogBase | str = LogBase.NATURAL) -> float:
    """Extropy of the flattened joint probability table."""
    joint = as_joint(j)
    return _extropy_nats(joint.table.values()) / LogBase.coerce(base).ln


def marginal(j, axis: int) -> Pmf:
    """Marginal pmf of one axis of a joint table."""
    return as_joint(j).marginal(axis)


def conditional_extropy(
    j,
    target_axis: int = 0,
    given_axes: int | Sequence[int] | None = None,
    base: LogBase | str = LogBase.NATURAL,
) -> float:
    """Weighted average sum_y p_y * J(target | given = y).

    ``given_axes`` defaults to every axis other than ``target_axis``; several
    conditioning axes are flattened into one composite axis.  Axes outside
    target and given are marginalized out first.
    """
    joint = as_joint(j)
    if given_axes is None:
        given = tuple(a for a in range(joint.arity) if a != target_axis)
    elif isinstance(given_axes, int):
        given = (given_axes,)
    else:
        given = tuple(given_axes)
    if not given:
        raise ValidationError("conditioning needs at least one given axis")
    if target_axis in given:
        raise ValidationError("target axis cannot also be a conditioning axis")
    reduced = joint.marginalize_onto((target_axis,) + given)

    groups: dict[tuple, list] = {}
    for idx, p in reduced.table.items():
        groups.setdefault(idx[1:], []).append(p)
    terms = []
    for cond_masses in groups.values():
        p_given = math.fsum(cond_masses)
        conditional = [p / p_given for p in cond_masses]
        terms.append(p_given * _extropy_nats(conditional))
    return math.fsum(terms) / LogBase.coerce(base).ln


def duality_gap(p, base: LogBase | str = LogBase.NATURAL) -> float:
    """H(p) + J(p) - sum_i H({p_i, 1-p_i}); zero for every valid pmf."""
    pmf = as_pmf(p)
    ln = LogBase.coerce(base).ln
    eventwise = math.fsum(
        _entropy_nats((v, 1.0 - v)) for v in pmf.masses
    )
    return (_entropy_nats(pmf.masses) + _extropy_nats(pmf.masses) - eventwise) / ln


def rescaled_entropy_identity_gap(p, base: LogBase | str = LogBase.NATURAL) -> float:
    """H(q) - [log(m-1) + J(p)/(m-1)] for q_i = (1-p_i)/(m-1) over the support.

    ``m`` is the support size; the identity makes the gap zero.  A degenerate
    pmf (m = 1) has no rescaled counterpart.
    """
    pmf = as_pmf(p)
    positive = [v for v in pmf.masses if v > 0.0]
    m = len(positive)
    if m < 2:
        raise NumericalDomainError("rescaled identity needs support size >= 2")
    ln = LogBase.coerce(base).ln
    q = [(1.0 - v) / (m - 1) for v in positive]
    lhs = _entropy_nats(q)
    rhs = math.log(m - 1) + _extropy_nats(positive) / (m - 1)
    return (lhs - rhs) / ln


def simpson_diversity(p) -> float:
    """Simpson's diversity index 1 - sum p_i**2."""
    pmf = as_pmf(p)
    return 1.0 - math.fsum(float(v) * float(v) for v in pmf.masses)


def generalized_conditional_identity_gap(j, base: LogBase | str = LogBase.NATURAL) -> float:
    """J(X|Y) - [genJ(X|Y) - (m_X - 1) H(Y)] for a 2-axis joint; zero when exact.

    genJ(X|Y) = -sum_{i,j} (p_j - p_ij) log(p_j - p_ij) runs over the full
    support grid of X and Y, so absent cells contribute p_j log p_j terms.
    """
    joint = as_joint(j)
    if joint.arity != 2:
        raise ValidationError("identity is defined for 2-axis joints")
    ln = LogBase.coerce(base).ln
    xs = joint.axis_support(0)
    y_marginal = joint.marginal(1)
    terms = []
    for y_label, p_y in zip(y_marginal.labels, y_marginal.masses):
        for x in xs:
            rest = p_y - joint.table.get((x, y_label), 0.0)
            if rest > 0.0:
                terms.append(-rest * math.log(rest))
    gen_j = math.fsum(terms)
    h_y = _entropy_nats(y_marginal.masses)
    j_cond = conditional_extropy(joint, 0, 1)
    return (j_cond - (gen_j - (len(xs) - 1) * h_y)) / ln


@dataclass(frozen=True)
class JointExtropyBounds:
    """Diagnostic comparison of J(X,Y) against its candidate bounds.

    The conditional-extropy branch is reported for inspection only; the
    marginal-product branches come with the condition under which they are
    guaranteed (every relevant marginal mass below 1 - 1/e).
    """

    joint: float
    extropy_x: float
    extropy_y: float
    cond_x_given_y: float
    cond_y_given_x: float
    m_x: int
    m_y: int
    max_joint_mass: float
    max_marginal_x: float
    max_marginal_y: float
    bound_via_x_applies: bool
    bound_via_y_applies: bool
    joint_le_my_jx: bool
    joint_le_mx_jy: bool
    joint_le_cond_x_given_y: bool


def joint_extropy_bounds(j, base: LogBase | str = LogBase.NATURAL) -> JointExtropyBounds:
    """Evaluate the joint-extropy bound inequalities on a 2-axis joint."""
    joint = as_joint(j)
    if joint.arity != 2:
        raise ValidationError("bounds report is defined for 2-axis joints")
    threshold = 1.0 - 1.0 / math.e
    px = joint.marginal(0)
    py = joint.marginal(1)
    j_xy = joint_extropy(joint, base)
    j_x = extropy(px, base)
    j_y = extropy(py, base)
    j_x_given_y = conditional_extropy(joint, 0, 1, base)
    j_y_given_x = conditional_extropy(joint, 1, 0, base)
    m_x = joint.support_sizes[0]
    m_y = joint.support_sizes[1]
    max_px = float(np.max(px.masses))
    max_py = float(np.max(py.masses))
    return JointExtropyBounds(
        joint=j_xy,
        extropy_x=j_x,
        extropy_y=j_y,
        cond_x_given_y=j_x_given_y,
        cond_y_given_x=j_y_given_x,
        m_x=m_x,
        m_y=m_y,
        max_joint_mass=float(max(joint.table.values())),
        max_marginal_x=max_px,
        max_marginal_y=max_py,
        bound_via_x_applies=max_px < threshold,
        bound_via_y_applies=max_py < threshold,
        joint_le_my_jx=j_xy <= m_y * j_x + 1e-12,
        joint_le_mx_jy=j_xy <= m_x * j_y + 1e-12,
        joint_le_cond_x_given_y=j_xy <= j_x_given_y + 1e-12,
    )
