"""Validated demand/forecast series containers and prefix-sum helpers.

Quantities are non-negative reals (SKU units per time step). Time steps are
abstract integer units; all external reporting is 1-based (t = 1..n), while
internal numpy storage is 0-based as usual.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptySeries, LengthMismatch, NegativeValue, NonFiniteValue, SeriesError


def _validated_array(raw) -> np.ndarray:
    arr = np.asarray(raw, dtype=float)
    if arr.ndim != 1:
        raise SeriesError(f"expected a 1-d sequence of quantities, got shape {arr.shape}")
    if arr.size == 0:
        raise EmptySeries("series must contain at least one time step")
    if not np.isfinite(arr).all():
        raise NonFiniteValue("series contains NaN or infinite entries")
    if (arr < 0).any():
        raise NegativeValue("series contains negative quantities")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DemandSeries:
    """Actual demand quantities, one non-negative value per time step."""

    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _validated_array(self.values))

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, type(self)):
            return NotImplemented
        return np.array_equal(self.values, other.values)


@dataclass(frozen=True, eq=False)
class ForecastSeries:
    """Forecast quantities; negative forecasts are rejected, not clamped.

    A negative value would mean a negative delivery into the notional
    warehouse, which has no interpretation in this cost model.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _validated_array(self.values))

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, type(self)):
            return NotImplemented
        return np.array_equal(self.values, other.values)


@dataclass(frozen=True)
class EvaluationPair:
    """An aligned (actual, forecast) pair covering the same horizon."""

    actual: DemandSeries
    forecast: ForecastSeries

    def __post_init__(self) -> None:
        if self.actual.n != self.forecast.n:
            raise LengthMismatch(
                f"actual has {self.actual.n} steps but forecast has {self.forecast.n}"
            )

    @property
    def n(self) -> int:
        return self.actual.n

    @classmethod
    def from_values(cls, actual, forecast) -> "EvaluationPair":
        return cls(DemandSeries(actual), ForecastSeries(forecast))


@dataclass(frozen=True, eq=False)
class PrefixSums:
    """cumulative[t] holds the sum of the first t+1 values (0-based index)."""

    cumulative: np.ndarray

    def at(self, t: int) -> float:
        """Cumulative total through 1-based time step t."""
        return float(self.cumulative[t - 1])


def validate_series(raw) -> DemandSeries:
    """Check a raw sequence and wrap it as a DemandSeries.

    Raises EmptySeries, NegativeValue or NonFiniteValue on bad input.
    """
    return DemandSeries(raw)


def prefix_sums(series: DemandSeries | ForecastSeries) -> PrefixSums:
    cum = np.cumsum(series.values)
    cum.setflags(write=False)
    return PrefixSums(cum)
