"""
Estimate API Endpoints

Statistics on an inline list of observations:
- Sample MAD and sign balance
- Confidence intervals for theta in the declared regime
- Exact expansion of sample_mad - oracle_mad

Responses are the same JSON reports the CLI prints.
"""

import logging
from typing import List, Literal, Optional, Union

from fastapi import APIRouter, HTTPException, status
from pydantic import BaseModel, Field

from madstat.config import get_settings
from madstat.models.interval import Regime
from madstat.models.limits import TailModel
from madstat.models.series import Series
from madstat.models.window import KernelType, LagWindowSpec
from madstat.services.data_io import with_version
from madstat.services.errors import ConfigError, DomainError, InputValidationError
from madstat.services.expansion import decompose
from madstat.services.intervals import gaussian_interval, stable_interval
from madstat.services.mad_core import sample_mad, sign_balance

logger = logging.getLogger(__name__)

router = APIRouter()


# ============================================================================
# PYDANTIC SCHEMAS (Request Models)
# ============================================================================

class EstimateRequest(BaseModel):
    """Schema for a point estimate."""
    values: List[float] = Field(..., min_length=1, description="Observations in order")
    mu: Optional[float] = Field(None, description="Centre for the sign balance (default: sample mean)")

    class Config:
        json_schema_extra = {"example": {"values": [1.0, 2.0, 3.0]}}


class IntervalRequest(BaseModel):
    """Schema for a confidence interval for theta."""
    values: List[float] = Field(..., min_length=2, description="Observations in order")
    regime: Regime = Field(..., description="Declared regime: iid, mixing or stable")
    atom: bool = Field(False, description="Declare an atom at mu (needs mu)")
    level: float = Field(0.95, gt=0.0, lt=1.0)
    mu: Optional[float] = Field(None, description="Known population mean")
    bandwidth: Union[int, Literal["auto"]] = Field("auto", description="Lag window (mixing regime)")
    kernel: KernelType = KernelType.BARTLETT
    tail: Optional[TailModel] = Field(None, description="Tail model (stable regime)")
    seed: Optional[int] = Field(None, ge=0, description="Seed of the simulated limit")

    class Config:
        json_schema_extra = {
            "example": {"values": [0.3, -1.2, 0.8, 2.1, -0.4], "regime": "iid", "level": 0.95}
        }


class ExpansionRequest(BaseModel):
    """Schema for the exact expansion of a sample."""
    values: List[float] = Field(..., min_length=1)
    mu: float = Field(..., description="Population mean")

    class Config:
        json_schema_extra = {"example": {"values": [0.0, 0.0, 3.0], "mu": 0.0}}


def _series(values: List[float]) -> Series:
    try:
        return Series(values)
    except DomainError as exc:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(exc))


# ============================================================================
# ENDPOINTS
# ============================================================================

@router.post("/estimates", response_model=dict)
async def create_estimate(request: EstimateRequest):
    """Sample MAD, mean and sign balance of the observations."""
    series = _series(request.values)
    centre = series.mean if request.mu is None else request.mu
    logger.info(f"Estimate for n={series.n}")
    return with_version({
        "command": "estimate",
        "n": series.n,
        "mean": series.mean,
        "sample_mad": sample_mad(series),
        "sign_balance": {"mu": centre, **sign_balance(series, centre).to_dict()},
    })


@router.post("/intervals", response_model=dict)
async def create_interval(request: IntervalRequest):
    """
    Confidence interval for theta in the declared regime.

    **Errors**: 400 for configuration or regime problems.
    """
    settings = get_settings()
    series = _series(request.values)
    seed = settings.default_seed if request.seed is None else request.seed
    logger.info(f"Interval for n={series.n}, regime={request.regime.value}, atom={request.atom}")
    try:
        if request.regime is Regime.STABLE:
            if request.tail is None:
                raise ConfigError("the stable regime needs a tail model")
            report = stable_interval(series, request.tail, request.level, request.mu,
                                     settings.reference_draws, seed)
        else:
            window = LagWindowSpec(kernel=request.kernel, bandwidth=request.bandwidth)
            report = gaussian_interval(series, request.level, request.regime, request.atom, request.mu,
                                       window, settings.reference_draws, seed)
    except (ConfigError, InputValidationError, ValueError) as exc:
        logger.warning(f"Interval rejected: {exc}")
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(exc))
    return with_version({"command": "ci", "seed": seed, **report.to_dict()})


@router.post("/expansions", response_model=dict)
async def create_expansion(request: ExpansionRequest):
    """Exact decomposition of sample_mad - oracle_mad."""
    series = _series(request.values)
    try:
        report = decompose(series, request.mu)
    except DomainError as exc:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(exc))
    return with_version({"command": "expansion-check", "mu": request.mu, **report.to_dict()})
