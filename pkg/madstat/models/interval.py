"""
Confidence interval report for theta.
"""

import enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Regime(str, enum.Enum):
    """Asymptotic regime declared by the user (never inferred)."""
    IID = "iid"
    MIXING = "mixing"
    STABLE = "stable"


class IntervalReport(BaseModel):
    """Point estimate and interval, with the limit model that produced it."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    regime: Regime
    atom: bool
    level: float = Field(..., gt=0.0, lt=1.0)
    estimate: float = Field(..., ge=0.0, description="sample MAD")
    lower: float
    upper: float
    method: str = Field(..., description="normal | limit_quantiles")
    limit: dict
    bandwidth: Optional[int] = None
    norming: float = Field(..., gt=0.0, description="rate_n used to scale the limit quantiles")

    @model_validator(mode="after")
    def _ordered(self):
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")
        return self

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    def covers(self, theta: float) -> bool:
        return self.lower <= theta <= self.upper

    def to_dict(self) -> dict:
        return self.model_dump(mode="json")
