"""
This module contains data models and exceptions used in the application.
"""

from models.data_models import (
    CHECK_FAMILIES,
    DEFAULT_FD_TOL,
    DEFAULT_HURWITZ_TOL,
    DEFAULT_IDENTITY_TOL,
    DEFAULT_MAX_TERMS,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_SERIES,
    DEFAULT_TOL,
    DEFAULT_WDVV_TOL,
    CriticalPointRecord,
    EllipticArg,
    ModularParameter,
    RootSystemDocument,
    RunConfig,
    SeriesParams,
    VectorEntry,
    VerificationReport,
    VSystemDocument,
)
from models.errors import (
    CatalogError,
    ConfigError,
    ConvergenceStripError,
    CriticalPointError,
    DomainError,
    LatticePointError,
    OrbitBoundError,
    RankDeficiencyError,
    SeriesTruncationError,
    VerificationError,
)

__all__ = [
    'CHECK_FAMILIES',
    'DEFAULT_FD_TOL',
    'DEFAULT_HURWITZ_TOL',
    'DEFAULT_IDENTITY_TOL',
    'DEFAULT_MAX_TERMS',
    'DEFAULT_SAMPLES',
    'DEFAULT_SEED',
    'DEFAULT_SERIES',
    'DEFAULT_TOL',
    'DEFAULT_WDVV_TOL',
    'CriticalPointRecord',
    'EllipticArg',
    'ModularParameter',
    'RootSystemDocument',
    'RunConfig',
    'SeriesParams',
    'VectorEntry',
    'VerificationReport',
    'VSystemDocument',
    'CatalogError',
    'ConfigError',
    'ConvergenceStripError',
    'CriticalPointError',
    'DomainError',
    'LatticePointError',
    'OrbitBoundError',
    'RankDeficiencyError',
    'SeriesTruncationError',
    'VerificationError',
]
