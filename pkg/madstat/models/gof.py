"""
Goodness-of-fit report: raw distances and quantile gaps, no p-values.
"""

from typing import List

from pydantic import BaseModel, ConfigDict, Field, model_validator


class QuantileRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    level: float = Field(..., gt=0.0, lt=1.0)
    sample_q: float
    reference_q: float
    abs_gap: float = Field(..., ge=0.0)


class GofReport(BaseModel):
    """Two-sample comparison of a study sample against a reference sample."""

    model_config = ConfigDict(frozen=True)

    ks_distance: float = Field(..., ge=0.0, le=1.0)
    quantile_table: List[QuantileRow]
    n_sample: int = Field(..., ge=1)
    n_reference: int = Field(..., ge=1)

    @model_validator(mode="after")
    def _levels_increasing(self):
        levels = [row.level for row in self.quantile_table]
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise ValueError("quantile levels must be strictly increasing")
        return self

    @property
    def max_quantile_gap(self) -> float:
        return max((row.abs_gap for row in self.quantile_table), default=0.0)

    def to_dict(self) -> dict:
        return self.model_dump(mode="json")


class MomentSummary(BaseModel):
    """First moments of a sample, with the standard errors used by tolerance checks."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    mean: float
    variance: float = Field(..., ge=0.0, description="Unbiased (ddof=1) variance")
    mean_se: float = Field(..., ge=0.0)
    kurtosis: float = Field(..., description="Non-excess kurtosis (3 for a normal law)")
    kurtosis_se: float = Field(..., ge=0.0, description="sqrt(24 / n)")

    def to_dict(self) -> dict:
        return self.model_dump(mode="json")
