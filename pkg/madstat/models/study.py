"""
Monte Carlo Study Models

A study replicates the statistic rate_n * (MAD_n - theta) ``reps`` times for
one generator and one sample size.

Reproducibility Contract:
- Replication r uses the seed derived from (seed, r); see simulate.rep_seed
- Results are indexed by replication, so the output never depends on the
  number of worker processes or their schedule
- Identical configuration -> identical results vector
"""

import enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from madstat.models.generators import GeneratorSpec
from madstat.models.limits import NormingRate


class ThetaSource(str, enum.Enum):
    """Where a study takes (mu, theta) from."""
    ANALYTIC = "analytic"            # closed form / quadrature when available
    REFERENCE_RUN = "reference_run"  # always estimate at n_ref


class CenteringValues(BaseModel):
    """Population centre and MAD used to centre a study."""

    model_config = ConfigDict(frozen=True)

    mu: float
    theta: float
    source: str = Field(..., description="declared | analytic | quadrature | estimated")
    theta_se: float = Field(0.0, ge=0.0, description="Monte Carlo SE when estimated")

    @property
    def estimated(self) -> bool:
        return self.source == "estimated"


class StudyMetadata(BaseModel):
    """Run facts recorded next to the results."""

    mu: float
    theta: float
    theta_source: str
    theta_se: float = 0.0
    norming: float = Field(..., description="rate_n actually applied")
    rep_seeds: List[int]
    wall_time_seconds: float = 0.0


class McStudy(BaseModel):
    """Configuration plus (after run_study) results of a replication experiment."""

    generator: GeneratorSpec
    n: int = Field(..., ge=2)
    reps: int = Field(..., ge=1)
    rate: NormingRate = NormingRate.SQRT_N
    mu_theta_source: ThetaSource = ThetaSource.ANALYTIC
    seed: int = Field(..., ge=0)
    n_ref: int = Field(10_000_000, ge=1000, description="Size of the reference run for theta")
    results: Optional[List[float]] = None
    metadata: Optional[StudyMetadata] = None

    @field_validator("results")
    @classmethod
    def _results_length(cls, value, info):
        reps = info.data.get("reps")
        if value is not None and reps is not None and len(value) != reps:
            raise ValueError(f"results must have length reps={reps} (got {len(value)})")
        return value

    def save(self, path: Path) -> None:
        Path(path).write_text(self.model_dump_json(indent=2), encoding="utf-8")

    @classmethod
    def load(cls, path: Path) -> "McStudy":
        return cls.model_validate_json(Path(path).read_text(encoding="utf-8"))


class VerifyConfig(BaseModel):
    """Study file for mc-verify: the study plus how to build and compare its reference."""

    study: McStudy
    n_reference: int = Field(100_000, ge=100)
    reference_seed: Optional[int] = Field(None, ge=0, description="Defaults to study seed + 1")
    reference_length: int = Field(1_000_000, ge=1000, description="Series length for long-run estimates")
    levels: List[float] = Field(default_factory=lambda: [0.1, 0.25, 0.5, 0.75, 0.9])
    ks_tolerance: float = Field(0.03, gt=0.0, le=1.0)
    quantile_tolerance: Optional[float] = Field(None, gt=0.0)
    reference_scale: float = Field(1.0, gt=0.0, description="Multiplies the reference sample")

    @field_validator("levels")
    @classmethod
    def _levels_increasing(cls, value: List[float]) -> List[float]:
        if not value:
            raise ValueError("levels must not be empty")
        if any(not 0.0 < level < 1.0 for level in value):
            raise ValueError("levels must lie strictly inside (0, 1)")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("levels must be strictly increasing")
        return value

    @property
    def resolved_reference_seed(self) -> int:
        return self.reference_seed if self.reference_seed is not None else self.study.seed + 1

    @classmethod
    def load(cls, path: Path) -> "VerifyConfig":
        return cls.model_validate_json(Path(path).read_text(encoding="utf-8"))
