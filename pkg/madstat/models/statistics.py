"""
Statistic Result Models

Typed results returned by the mad_core and expansion services.

Business Context:
- SignBalance holds the empirical counterparts of Pr[X < mu], Pr[X = mu],
  Pr[X > mu]; they drive the linear and atom terms of the expansion
- ExpansionReport exposes every term of the exact finite-sample decomposition
  of sample_mad - oracle_mad, so the identity and the remainder bound can be
  checked sample by sample
"""

from pydantic import BaseModel, ConfigDict, Field


class SignBalance(BaseModel):
    """Position of a sample relative to a centre mu (exact float comparison)."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    n_less: int = Field(..., ge=0)
    n_eq: int = Field(..., ge=0)
    n_greater: int = Field(..., ge=0)

    @property
    def p_less(self) -> float:
        return self.n_less / self.n

    @property
    def p_eq(self) -> float:
        return self.n_eq / self.n

    @property
    def p_greater(self) -> float:
        return self.n_greater / self.n

    @property
    def b_hat(self) -> float:
        """(1/n) sum sign(mu - X_i) = p_less - p_greater."""
        return (self.n_less - self.n_greater) / self.n

    def to_dict(self) -> dict:
        return {
            "b_hat": self.b_hat,
            "p_less": self.p_less,
            "p_eq": self.p_eq,
            "p_greater": self.p_greater,
        }


class DispersionSlope(BaseModel):
    """Value of 2 F_n(u) - 1; ``kink`` is set when u is a sample point."""

    model_config = ConfigDict(frozen=True)

    value: float = Field(..., ge=-1.0, le=1.0)
    kink: bool


class ExpansionReport(BaseModel):
    """
    Exact decomposition of (1/n) sum(|X_i - mean| - |X_i - mu|).

    lhs = linear_term + atom_term + remainder, where remainder is R_n / n and
    R_n collects the terms of the points strictly between mu and the mean.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    mean_gap: float = Field(..., description="sample mean - mu")
    lhs: float = Field(..., description="sample_mad - oracle_mad")
    linear_term: float
    atom_term: float = Field(..., ge=0.0)
    remainder: float = Field(..., description="R_n / n")
    k_count: int = Field(..., ge=0, description="#{i : min(mean, mu) < X_i < max(mean, mu)}")
    population_linear_coeff: float = Field(..., ge=-1.0, le=1.0)

    @property
    def identity_error(self) -> float:
        return self.lhs - self.linear_term - self.atom_term - self.remainder

    @property
    def remainder_bound(self) -> float:
        """3 |mean_gap| |K_n| / n."""
        return 3.0 * abs(self.mean_gap) * self.k_count / self.n

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mean_gap": self.mean_gap,
            "lhs": self.lhs,
            "linear_term": self.linear_term,
            "atom_term": self.atom_term,
            "remainder": self.remainder,
            "k_count": self.k_count,
            "population_linear_coeff": self.population_linear_coeff,
        }


class DecayRow(BaseModel):
    """One row of the remainder decay table, averaged over replications."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=2)
    mean_k_fraction: float = Field(..., ge=0.0, description="mean |K_n| / n")
    mean_remainder_ratio: float = Field(..., ge=0.0, description="mean |R_n/n| / |mean_gap|")
    reps: int = Field(..., ge=1)


class KFractionBound(BaseModel):
    """The two one-sided ECDF increments that dominate |K_n| / n."""

    model_config = ConfigDict(frozen=True)

    k_fraction: float = Field(..., ge=0.0, le=1.0)
    upper_increment: float = Field(..., description="F_n(B_n-) - F_n(mu)")
    lower_increment: float = Field(..., description="F_n(mu-) - F_n(A_n)")

    @property
    def bound(self) -> float:
        return max(self.upper_increment, self.lower_increment)


class InfluenceSplit(BaseModel):
    """sample_mad - theta split into the expansion term and the centred average."""

    model_config = ConfigDict(frozen=True)

    mean_estimation_term: float = Field(..., description="sample_mad - oracle_mad")
    centred_term: float = Field(..., description="(1/n) sum (|X_i - mu| - theta)")

    @property
    def total(self) -> float:
        return self.mean_estimation_term + self.centred_term
