"""
Series and Empirical CDF Models

A Series is one realization X_1, ..., X_n of a (possibly dependent) time
series. It is the input of every estimator in madstat.

Key Concepts:
- Values are stored once as a read-only float64 numpy array, in observation order
- Every value must be finite; n >= 1
- The arithmetic mean is computed once (numpy pairwise summation) and reused,
  so every statistic built on the mean sees the same floating-point value
"""

from functools import cached_property
from typing import Iterable, Union

import numpy as np
from numpy.typing import ArrayLike

from madstat.services.errors import DomainError


class Series:
    """
    Immutable ordered batch of finite real observations.

    Use ``Series.of(values)`` (or pass any array-like to a service function,
    which coerces through ``as_series``).
    """

    def __init__(self, values: ArrayLike):
        array = np.array(values, dtype=np.float64, copy=True).reshape(-1)
        if array.size == 0:
            raise DomainError("Series must contain at least one observation")
        if not np.all(np.isfinite(array)):
            bad = int(np.flatnonzero(~np.isfinite(array))[0])
            raise DomainError(f"Series value at position {bad} is not finite: {array[bad]!r}")
        array.setflags(write=False)
        self._values = array

    @classmethod
    def of(cls, values: Union["Series", ArrayLike]) -> "Series":
        """Return ``values`` unchanged if already a Series, else wrap it."""
        if isinstance(values, Series):
            return values
        return cls(values)

    @property
    def values(self) -> np.ndarray:
        """Read-only view of the observations."""
        return self._values

    @property
    def n(self) -> int:
        return int(self._values.size)

    @cached_property
    def mean(self) -> float:
        """Arithmetic mean (numpy pairwise summation, computed once)."""
        return float(np.sum(self._values) / self._values.size)

    def shifted(self, c: float) -> "Series":
        return Series(self._values + c)

    def scaled(self, c: float) -> "Series":
        return Series(self._values * c)

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterable[float]:
        return iter(self._values.tolist())

    def __repr__(self) -> str:
        return f"<Series n={self.n} mean={self.mean:.6g}>"


def as_series(values: Union[Series, ArrayLike]) -> Series:
    """Coerce any array-like into a validated Series."""
    return Series.of(values)


class EcdfSummary:
    """
    Empirical distribution function of a Series with left and right limits.

    For a query x:
        F_n(x)  = #{i : X_i <= x} / n     (right-continuous value)
        F_n(x-) = #{i : X_i <  x} / n     (left limit)

    Counts are exact integers; the float versions are count / n.
    """

    __slots__ = ("sorted_values", "n")

    def __init__(self, series: Series):
        self.sorted_values = np.sort(series.values)
        self.n = series.n

    def count_at_or_below(self, x: ArrayLike) -> np.ndarray:
        return np.searchsorted(self.sorted_values, x, side="right")

    def count_below(self, x: ArrayLike) -> np.ndarray:
        return np.searchsorted(self.sorted_values, x, side="left")

    def cdf(self, x: ArrayLike):
        """F_n(x); scalar in, scalar out."""
        result = self.count_at_or_below(x) / self.n
        return float(result) if np.ndim(result) == 0 else result

    def cdf_left(self, x: ArrayLike):
        """F_n(x-); scalar in, scalar out."""
        result = self.count_below(x) / self.n
        return float(result) if np.ndim(result) == 0 else result

    def count_equal(self, x: float) -> int:
        return int(self.count_at_or_below(x) - self.count_below(x))
