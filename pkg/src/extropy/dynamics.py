"""Logistic and Henon map orbits and extropy-rate bifurcation scans.

A parameter sweep generates one orbit per grid point, rounds it to a fixed
number of decimals, and scores it with the sequence extropy-rate estimator.
The rate jumps wherever the attractor gains states, which makes the scan a
cheap bifurcation indicator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .complexity import SeriesSample
from .distributions import LogBase, NumericalDomainError, ValidationError
from .rates import RateEstimate, sequence_extropy_rate

__all__ = [
    "MapConfig",
    "ScanPoint",
    "ScanResult",
    "logistic_orbit",
    "henon_orbit",
    "bifurcation_scan",
]

LOGISTIC_PARAM_RANGE = (2.5, 4.0)
HENON_PARAM_RANGE = (1.0, 1.4)
_HENON_ESCAPE = 1e6


def logistic_orbit(
    r: float, x0: float = 0.1, burn_in: int = 500, length: int = 300
) -> SeriesSample:
    """Iterate x <- r x (1 - x), discard burn_in, return the next length values.

    Raises NumericalDomainError if the orbit leaves the open interval (0, 1).
    """
    lo, hi = LOGISTIC_PARAM_RANGE
    if not lo <= r <= hi:
        raise ValidationError(f"logistic parameter r={r} outside [{lo}, {hi}]")
    if not 0.0 < x0 < 1.0:
        raise ValidationError("logistic initial point must lie in (0, 1)")
    if burn_in < 0 or length < 1:
        raise ValidationError("need burn_in >= 0 and length >= 1")
    x = x0
    values = np.empty(length)
    for i in range(burn_in + length):
        x = r * x * (1.0 - x)
        if not 0.0 < x < 1.0:
            raise NumericalDomainError(
                f"logistic orbit left (0, 1) at iterate {i + 1} (x={x!r})"
            )
        if i >= burn_in:
            values[i - burn_in] = x
    return SeriesSample(values, name=f"logistic r={r:g}")


def henon_orbit(
    a: float,
    b: float = 0.3,
    x0: float = 0.1,
    y0: float = 0.1,
    burn_in: int = 500,
    length: int = 300,
) -> SeriesSample:
    """x-coordinate series of the Henon map x <- 1 + y - a x**2, y <- b x.

    Raises NumericalDomainError when the orbit diverges (|x| > 1e6).
    """
    lo, hi = HENON_PARAM_RANGE
    if not lo <= a <= hi:
        raise ValidationError(f"henon parameter a={a} outside [{lo}, {hi}]")
    if burn_in < 0 or length < 1:
        raise ValidationError("need burn_in >= 0 and length >= 1")
    x, y = x0, y0
    values = np.empty(length)
    for i in range(burn_in + length):
        x, y = 1.0 + y - a * x * x, b * x
        if not math.isfinite(x) or abs(x) > _HENON_ESCAPE:
            raise NumericalDomainError(f"henon orbit diverged at iterate {i + 1}")
        if i >= burn_in:
            values[i - burn_in] = x
    return SeriesSample(values, name=f"henon a={a:g}")


@dataclass(frozen=True)
class MapConfig:
    """Orbit generation settings for one map family."""

    kind: str
    params: dict
    burn_in: int = 500
    length: int = 300
    round_decimals: int = 2

    def __post_init__(self) -> None:
        if self.kind not in ("logistic", "henon"):
            raise ValidationError(f"unknown map kind {self.kind!r}")
        if self.burn_in < 0 or self.length < 1 or self.round_decimals < 0:
            raise ValidationError("invalid burn_in, length, or round_decimals")

    def orbit(self) -> SeriesSample:
        if self.kind == "logistic":
            return logistic_orbit(
                burn_in=self.burn_in, length=self.length, **self.params
            )
        return henon_orbit(burn_in=self.burn_in, length=self.length, **self.params)


@dataclass(frozen=True)
class ScanPoint:
    """One grid point of a bifurcation scan; rate is None on orbit failure."""

    parameter: float
    rate: RateEstimate | None
    distinct_states: int | None
    orbit_min: float | None
    orbit_max: float | None
    error: str | None = None


@dataclass(frozen=True)
class ScanResult:
    kind: str
    param_lo: float
    param_hi: float
    steps: int
    round_decimals: int
    base: LogBase
    points: tuple = field(default_factory=tuple)

    def parameters(self) -> list[float]:
        return [p.parameter for p in self.points]


def bifurcation_scan(
    kind: str,
    param_lo: float,
    param_hi: float,
    steps: int,
    burn_in: int = 500,
    length: int = 300,
    round_decimals: int = 2,
    x0: float = 0.1,
    y0: float = 0.1,
    b: float = 0.3,
    base: LogBase | str = LogBase.NATURAL,
) -> ScanResult:
    """Extropy rate of the discretized orbit at each parameter on a grid.

    Grid points whose orbit escapes are recorded with an error message
    instead of aborting the whole scan.
    """
    base = LogBase.coerce(base)
    if steps < 2:
        raise ValidationError("a scan needs at least 2 grid points")
    if not param_lo < param_hi:
        raise ValidationError("need param_lo < param_hi")
    grid = np.linspace(param_lo, param_hi, steps)
    points = []
    for value in grid:
        if kind == "logistic":
            config = MapConfig(
                "logistic", {"r": float(value), "x0": x0}, burn_in, length, round_decimals
            )
        elif kind == "henon":
            config = MapConfig(
                "henon",
                {"a": float(value), "b": b, "x0": x0, "y0": y0},
                burn_in,
                length,
                round_decimals,
            )
        else:
            raise ValidationError(f"unknown map kind {kind!r}")
        try:
            orbit = config.orbit()
        except (NumericalDomainError, ValidationError) as exc:
            points.append(ScanPoint(float(value), None, None, None, None, str(exc)))
            continue
        rounded = np.round(orbit.values, round_decimals)
        rate = sequence_extropy_rate(rounded.tolist(), base=base)
        points.append(
            ScanPoint(
                float(value),
                rate,
                len(set(rounded.tolist())),
                float(orbit.values.min()),
                float(orbit.values.max()),
            )
        )
    return ScanResult(
        kind, float(param_lo), float(param_hi), steps, round_decimals, base, tuple(points)
    )
