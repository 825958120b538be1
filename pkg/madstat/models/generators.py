"""
Generator Specifications

Data-generating processes for every regime the library treats.

Generator kinds:
- iid_normal(mu, sd)
- iid_exponential(rate)
- iid_discrete(atoms)                  -> laws with an atom at the mean
- iid_pareto_symmetric(alpha, p, x_m)  -> regularly varying tails, alpha > 1
- iid_student_t(dof)
- ar1(phi, innovation)                 -> strongly mixing, stationary
- ma1(theta, innovation)               -> m-dependent, stationary

Any spec may carry a declared ``centering`` (mu, theta) that overrides the
closed forms and reference runs used by ``simulate.true_theta``.
"""

import math
from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, field_validator, model_validator

PROBABILITY_TOLERANCE = 1e-9


class Centering(BaseModel):
    """Declared population mean and mean absolute deviation."""

    model_config = ConfigDict(frozen=True)

    mu: float
    theta: float = Field(..., ge=0.0)


class _SpecBase(BaseModel):
    model_config = ConfigDict(frozen=True)

    centering: Optional[Centering] = None

    @property
    def is_iid(self) -> bool:
        return True


class NormalSpec(_SpecBase):
    kind: Literal["iid_normal"] = "iid_normal"
    mu: float = 0.0
    sd: float = Field(1.0, gt=0.0)


class ExponentialSpec(_SpecBase):
    kind: Literal["iid_exponential"] = "iid_exponential"
    rate: float = Field(1.0, gt=0.0)


class Atom(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float
    prob: float = Field(..., ge=0.0, le=1.0)

    @field_validator("value")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("atom value must be finite")
        return value


class DiscreteSpec(_SpecBase):
    kind: Literal["iid_discrete"] = "iid_discrete"
    atoms: List[Atom] = Field(..., min_length=1)

    @model_validator(mode="after")
    def _check_probabilities(self):
        total = math.fsum(atom.prob for atom in self.atoms)
        if abs(total - 1.0) > PROBABILITY_TOLERANCE:
            raise ValueError(f"atom probabilities must sum to 1 (got {total})")
        return self

    @classmethod
    def constant(cls, value: float = 0.0) -> "DiscreteSpec":
        return cls(atoms=[Atom(value=value, prob=1.0)])


class ParetoSymmetricSpec(_SpecBase):
    """|X| ~ Pareto(alpha, x_m); X > 0 with probability p, X < 0 otherwise."""

    kind: Literal["iid_pareto_symmetric"] = "iid_pareto_symmetric"
    alpha: float = Field(..., gt=1.0, description="Tail index; > 1 so the mean exists")
    p: float = Field(0.5, ge=0.0, le=1.0)
    x_m: float = Field(1.0, gt=0.0)


class StudentTSpec(_SpecBase):
    kind: Literal["iid_student_t"] = "iid_student_t"
    dof: float = Field(..., gt=0.0)


class Ar1Spec(_SpecBase):
    """X_t = phi X_{t-1} + e_t."""

    kind: Literal["ar1"] = "ar1"
    phi: float = Field(..., gt=-1.0, lt=1.0)
    innovation: "GeneratorSpec"

    @property
    def is_iid(self) -> bool:
        return self.phi == 0.0 and self.innovation.is_iid


class Ma1Spec(_SpecBase):
    """X_t = e_t + theta e_{t-1}."""

    kind: Literal["ma1"] = "ma1"
    theta: float
    innovation: "GeneratorSpec"

    @property
    def is_iid(self) -> bool:
        return self.theta == 0.0 and self.innovation.is_iid


GeneratorSpec = Annotated[
    Union[NormalSpec, ExponentialSpec, DiscreteSpec, ParetoSymmetricSpec, StudentTSpec, Ar1Spec, Ma1Spec],
    Field(discriminator="kind"),
]

Ar1Spec.model_rebuild()
Ma1Spec.model_rebuild()

GENERATOR_ADAPTER = TypeAdapter(GeneratorSpec)


def parse_generator(text: str):
    """Parse a generator spec from JSON text."""
    return GENERATOR_ADAPTER.validate_json(text)


GENERATOR_TYPES = (NormalSpec, ExponentialSpec, DiscreteSpec, ParetoSymmetricSpec, StudentTSpec, Ar1Spec, Ma1Spec)
