"""
Limit Law Models

Parameters of the asymptotic distributions of the normalised sample MAD.

Regimes:
1. GAUSSIAN (finite variance, iid or strongly mixing):
   sqrt(n)(MAD_n - theta) -> a Y + p_eq |Y| + Z, (Y, Z) bivariate normal
2. STABLE (iid, regularly varying tails with index alpha in (1, 2)):
   (n / a_n)(MAD_n - theta) -> totally right-skewed alpha-stable law

The regime is always declared by the caller, never inferred from data.
"""

import enum
import math
from typing import Annotated, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import stats

PSD_TOLERANCE = 1e-10


class TailShape(str, enum.Enum):
    """
    Shape of the tail function Pr[|X| > x].

    - PARETO: (x / x_m)^(-alpha) for x >= x_m (slowly varying part constant)
    - LOG_MODIFIED: (x / x_m)^(-alpha) (1 + log(x / x_m)) for x >= x_m
    - STUDENT_T: two-sided Student t tail with alpha degrees of freedom
    """
    PARETO = "pareto"
    LOG_MODIFIED = "log_modified"
    STUDENT_T = "student_t"


class NormingRate(str, enum.Enum):
    """Rate multiplying MAD_n - theta."""
    SQRT_N = "sqrt_n"
    N_OVER_AN = "n_over_an"


class TailModel(BaseModel):
    """Regularly varying tail: Pr[X > x] = p x^-alpha L(x), Pr[X < -x] = (1-p) x^-alpha L(x)."""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(..., gt=1.0, lt=2.0, description="Tail index")
    p: float = Field(0.5, ge=0.0, le=1.0, description="Share of the right tail")
    x_m: float = Field(1.0, gt=0.0, description="Scale constant (Pareto threshold)")
    shape: TailShape = TailShape.PARETO

    def survival(self, x):
        """Pr[|X| > x], vectorised."""
        x = np.asarray(x, dtype=np.float64)
        if self.shape is TailShape.STUDENT_T:
            return 2.0 * stats.t.sf(x / self.x_m, df=self.alpha)
        ratio = np.maximum(x / self.x_m, 1.0)
        tail = ratio ** (-self.alpha)
        if self.shape is TailShape.LOG_MODIFIED:
            tail = tail * (1.0 + np.log(ratio))
        return np.where(x < self.x_m, 1.0, tail)


class GaussianFunctionalParams(BaseModel):
    """
    Parameters of the Gaussian-functional limit a Y + p_eq |Y| + Z.

    a = Pr[X < mu] - Pr[X > mu], p_eq = Pr[X = mu]; (Y, Z) has covariance
    [[var_y, cov_yz], [cov_yz, var_z]].
    """

    model_config = ConfigDict(frozen=True)

    regime: Literal["gaussian"] = "gaussian"
    a: float = Field(..., ge=-1.0, le=1.0)
    p_eq: float = Field(..., ge=0.0, le=1.0)
    var_y: float
    var_z: float
    cov_yz: float

    @model_validator(mode="after")
    def _check_invariants(self):
        if abs(self.a) + self.p_eq > 1.0 + 1e-12:
            raise ValueError(f"|a| + p_eq must be <= 1 (got {abs(self.a) + self.p_eq})")
        eigenvalues = np.linalg.eigvalsh(self.cov)
        if eigenvalues.min() < -PSD_TOLERANCE:
            raise ValueError(f"covariance is not positive semidefinite (eigenvalues {eigenvalues})")
        return self

    @property
    def cov(self) -> np.ndarray:
        return np.array([[self.var_y, self.cov_yz], [self.cov_yz, self.var_z]])

    @property
    def rate(self) -> NormingRate:
        return NormingRate.SQRT_N

    def to_dict(self) -> dict:
        return {
            "regime": "gaussian",
            "a": self.a,
            "p_eq": self.p_eq,
            "cov": self.cov.tolist(),
        }


class StableParams(BaseModel):
    """
    Parameters of the stable limit with transform
    exp{-sigma^alpha |s|^alpha (1 - i sign(s) tan(alpha pi / 2))}.
    """

    model_config = ConfigDict(frozen=True)

    regime: Literal["stable"] = "stable"
    alpha: float = Field(..., gt=1.0, lt=2.0)
    sigma: float = Field(..., gt=0.0)
    p: float = Field(..., ge=0.0, le=1.0)
    p_less: float = Field(..., ge=0.0, le=1.0)
    p_greater: float = Field(..., ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _check_probabilities(self):
        if self.p_less + self.p_greater > 1.0 + 1e-12:
            raise ValueError("p_less + p_greater must be <= 1")
        return self

    @property
    def b(self) -> float:
        return self.p_less - self.p_greater

    @property
    def rate(self) -> NormingRate:
        return NormingRate.N_OVER_AN

    @property
    def tan_term(self) -> float:
        return math.tan(self.alpha * math.pi / 2.0)

    def to_dict(self) -> dict:
        return {
            "regime": "stable",
            "alpha": self.alpha,
            "sigma": self.sigma,
            "p": self.p,
            "p_less": self.p_less,
            "p_greater": self.p_greater,
        }


LimitModel = Annotated[Union[GaussianFunctionalParams, StableParams], Field(discriminator="regime")]
