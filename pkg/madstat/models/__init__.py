"""
Domain Models Package

Typed records shared by the services, the CLI and the API.

Models:
- Series / EcdfSummary: one realisation and its empirical distribution
- SignBalance, ExpansionReport, DecayRow: mad_core and expansion results
- GaussianFunctionalParams / StableParams: the two limit laws (LimitModel)
- TailModel: regularly varying tail specification
- GeneratorSpec: data-generating processes (tagged union on "kind")
- McStudy / VerifyConfig: Monte Carlo study files
- GofReport, IntervalReport: comparison and interval reports

Usage:
    from madstat.models import Series, McStudy, TailModel
"""

from madstat.models.series import EcdfSummary, Series, as_series
from madstat.models.statistics import (
    DecayRow,
    DispersionSlope,
    ExpansionReport,
    InfluenceSplit,
    KFractionBound,
    SignBalance,
)
from madstat.models.limits import (
    GaussianFunctionalParams,
    LimitModel,
    NormingRate,
    StableParams,
    TailModel,
    TailShape,
)
from madstat.models.window import KernelType, LagWindowSpec
from madstat.models.generators import GENERATOR_ADAPTER, GeneratorSpec, parse_generator
from madstat.models.study import CenteringValues, McStudy, StudyMetadata, ThetaSource, VerifyConfig
from madstat.models.gof import GofReport, MomentSummary, QuantileRow
from madstat.models.interval import IntervalReport, Regime

__all__ = [
    # Data
    "Series",
    "EcdfSummary",
    "as_series",
    # Results
    "SignBalance",
    "DispersionSlope",
    "ExpansionReport",
    "InfluenceSplit",
    "KFractionBound",
    "DecayRow",
    "GofReport",
    "QuantileRow",
    "MomentSummary",
    "IntervalReport",
    # Limit laws
    "GaussianFunctionalParams",
    "StableParams",
    "LimitModel",
    "TailModel",
    # Configuration
    "GeneratorSpec",
    "GENERATOR_ADAPTER",
    "parse_generator",
    "LagWindowSpec",
    "McStudy",
    "StudyMetadata",
    "CenteringValues",
    "VerifyConfig",
    # Enums
    "NormingRate",
    "TailShape",
    "KernelType",
    "ThetaSource",
    "Regime",
]
