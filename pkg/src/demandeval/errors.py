"""Exception hierarchy shared by all demandeval modules.

Everything user-facing derives from :class:`DemandEvalError` so the CLI can
map any expected failure to exit code 2 in one place.
"""


class DemandEvalError(ValueError):
    """Base class for all errors raised by this package."""


class SeriesError(DemandEvalError):
    """A raw value sequence cannot be used as a demand or forecast series."""


class EmptySeries(SeriesError):
    """The input contains no time steps."""


class NegativeValue(SeriesError):
    """A quantity was negative; demand and forecast volumes cannot be."""


class NonFiniteValue(SeriesError):
    """A quantity was NaN or infinite."""


class LengthMismatch(DemandEvalError):
    """Two sequences that must align step-for-step have different lengths."""


class InvalidParams(DemandEvalError):
    """Cost weights or other metric parameters are out of range."""


class InvalidConfig(DemandEvalError):
    """A simulation or experiment configuration failed validation."""


class WindowTooLarge(InvalidConfig):
    """A requested extract window exceeds the series length."""


class StatsError(DemandEvalError):
    """Base class for statistical-routine errors."""


class DegenerateInput(StatsError):
    """The statistic is undefined on this input (e.g. constant sequence)."""


class TooFewGroups(StatsError):
    """A grouped test needs at least two groups."""


class GroupTooSmall(StatsError):
    """Every group in a grouped test needs at least two observations."""


class InvalidDegreesOfFreedom(StatsError):
    """Degrees of freedom must be positive integers."""


class MalformedRow(DemandEvalError):
    """A CSV row could not be parsed against the expected schema."""


class NonContiguousTime(DemandEvalError):
    """CSV time indices must run 1..n without gaps or duplicates."""
