"""
Lag window specification for long-run covariance estimation.
"""

import enum
import math
from typing import Literal, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from madstat.services.errors import ConfigError


class KernelType(str, enum.Enum):
    """
    Lag window kernels.

    - BARTLETT: w_k = 1 - k / (B + 1), guarantees a PSD estimate
    - TRUNCATED: w_k = 1 for k <= B (no PSD guarantee)
    """
    BARTLETT = "bartlett"
    TRUNCATED = "truncated"


class LagWindowSpec(BaseModel):
    """Kernel plus bandwidth B (an integer, or "auto" = floor(4 (n/100)^(2/9)))."""

    model_config = ConfigDict(frozen=True)

    kernel: KernelType = KernelType.BARTLETT
    bandwidth: Union[int, Literal["auto"]] = Field("auto", description="Highest lag or 'auto'")

    @field_validator("bandwidth")
    @classmethod
    def _non_negative(cls, value):
        if value != "auto" and value < 0:
            raise ValueError("bandwidth must be a non-negative integer or 'auto'")
        return value

    def resolve(self, n: int) -> int:
        if self.bandwidth == "auto":
            return int(math.floor(4.0 * (n / 100.0) ** (2.0 / 9.0)))
        return int(self.bandwidth)

    @classmethod
    def parse(cls, text: str, kernel: KernelType = KernelType.BARTLETT) -> "LagWindowSpec":
        """Build from a CLI value: 'auto' or an integer."""
        text = text.strip().lower()
        if text == "auto":
            return cls(kernel=kernel, bandwidth="auto")
        try:
            bandwidth = int(text)
        except ValueError:
            raise ConfigError(f"bandwidth must be 'auto' or an integer (got {text!r})")
        if bandwidth < 0:
            raise ConfigError(f"bandwidth must be non-negative (got {bandwidth})")
        return cls(kernel=kernel, bandwidth=bandwidth)
