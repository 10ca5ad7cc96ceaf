"""
This module contains data models used across the application.
"""

import cmath
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, field_serializer, field_validator

from models.errors import DomainError

DEFAULT_TOL = 1e-11
DEFAULT_FD_TOL = 1e-6
DEFAULT_WDVV_TOL = 1e-9
DEFAULT_HURWITZ_TOL = 1e-6
DEFAULT_IDENTITY_TOL = 1e-10
DEFAULT_SERIES_TOL = 1e-16
DEFAULT_MAX_TERMS = 200
DEFAULT_SAMPLES = 20
DEFAULT_SEED = 20240101

# default sample region
TAU_IMAG_RANGE = (0.8, 2.5)
TAU_REAL_BOUND = 0.5
Z_BOUND = 0.4

CHECK_FAMILIES = ("vee", "wdvv", "limits", "identities", "hurwitz")


class SeriesParams(BaseModel):
    """Truncation policy for q-series evaluation."""
    model_config = ConfigDict(frozen=True)

    max_terms: PositiveInt = DEFAULT_MAX_TERMS
    target_tol: PositiveFloat = DEFAULT_SERIES_TOL


DEFAULT_SERIES = SeriesParams()


class ModularParameter(BaseModel):
    """A point tau of the upper half plane together with q = exp(2 pi i tau)."""
    model_config = ConfigDict(frozen=True)

    tau: complex

    @field_validator("tau")
    @classmethod
    def _upper_half_plane(cls, value: complex) -> complex:
        if not value.imag > 0:
            raise DomainError(f"tau must have positive imaginary part, got {value}")
        return value

    @property
    def q(self) -> complex:
        return cmath.exp(2j * cmath.pi * self.tau)

    def shifted(self) -> "ModularParameter":
        """tau + 1"""
        return ModularParameter(tau=self.tau + 1)

    def inverted(self) -> "ModularParameter":
        """-1/tau"""
        return ModularParameter(tau=-1 / self.tau)


class EllipticArg(BaseModel):
    """An argument (z, tau) of the elliptic trilogarithm."""
    model_config = ConfigDict(frozen=True)

    z: complex
    tau: ModularParameter

    def in_strip(self) -> bool:
        return abs(self.z.imag) < self.tau.tau.imag


class RunConfig(BaseModel):
    """Configuration for a verification run, built from the command line."""
    tol: PositiveFloat = DEFAULT_TOL
    fd_tol: PositiveFloat = DEFAULT_FD_TOL
    wdvv_tol: PositiveFloat = DEFAULT_WDVV_TOL
    hurwitz_tol: PositiveFloat = DEFAULT_HURWITZ_TOL
    identity_tol: PositiveFloat = DEFAULT_IDENTITY_TOL
    series: SeriesParams = DEFAULT_SERIES
    samples: PositiveInt = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    output: Optional[str] = None
    output_format: Literal["text", "json"] = "text"
    params: Dict[str, str] = Field(default_factory=dict)
    checks: List[str] = Field(default_factory=lambda: list(CHECK_FAMILIES))
    timings: bool = False
    high_rank: bool = False

    def tolerances(self) -> Dict[str, float]:
        return {
            "tol": self.tol,
            "fd_tol": self.fd_tol,
            "wdvv_tol": self.wdvv_tol,
            "hurwitz_tol": self.hurwitz_tol,
            "identity_tol": self.identity_tol,
            "series_tol": self.series.target_tol,
        }


class VerificationReport(BaseModel):
    """Outcome of a single named check."""
    check: str
    target: str
    status: Literal["pass", "fail", "skipped"]
    max_residual: Optional[float] = None
    seed: Optional[int] = None
    tolerances: Dict[str, float] = Field(default_factory=dict)
    elapsed_ms: Optional[float] = None
    details: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    @field_serializer("max_residual", "elapsed_ms", when_used="json")
    def _format_scalar(self, value: Optional[float]) -> Optional[str]:
        return None if value is None else f"{value:.16e}"

    @field_serializer("tolerances", when_used="json")
    def _format_tolerances(self, value: Dict[str, float]) -> Dict[str, str]:
        return {key: f"{tol:.16e}" for key, tol in value.items()}


class CriticalPointRecord(BaseModel):
    """A critical point of a superpotential as it appears in reports."""
    v: str
    value: str
    second_log_derivative: str


class RootSystemDocument(BaseModel):
    """JSON form of a root system; rationals are "p/q" strings."""
    family: str
    rank: int
    form: List[List[str]]
    roots: List[List[str]]


class VectorEntry(BaseModel):
    """A vector of a candidate system with its multiplicity."""
    coords: List[str]
    h: str


class VSystemDocument(BaseModel):
    """JSON form of a candidate elliptic system."""
    name: str
    dim: int
    form: List[List[str]]
    vectors: List[VectorEntry]
    params: Dict[str, str] = Field(default_factory=dict)
