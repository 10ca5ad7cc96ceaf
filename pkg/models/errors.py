"""
This module contains the exceptions raised across the application.
"""


class VerificationError(Exception):
    """Base class for every error raised by the toolkit."""


class SeriesTruncationError(VerificationError, RuntimeError):
    """A q-series did not reach its tolerance within max_terms."""

    def __init__(self, name: str, max_terms: int, last_term: float):
        self.name = name
        self.max_terms = max_terms
        self.last_term = last_term
        super().__init__(
            f"{name}: series did not converge within {max_terms} terms "
            f"(last term magnitude {last_term:.3e})"
        )


class ConvergenceStripError(VerificationError, ValueError):
    """The argument lies outside the strip |Im z| < Im tau."""


class LatticePointError(VerificationError, ValueError):
    """The argument is a lattice point or lies within the pole guard radius."""


class DomainError(VerificationError, ValueError):
    """An argument is outside the domain of the operation."""


class CatalogError(VerificationError, ValueError):
    """Unknown catalog entry, parameter or family/rank combination."""


class RankDeficiencyError(VerificationError, ValueError):
    """The dual lattice of a system does not have full rank."""

    def __init__(self, achieved_rank: int, dimension: int):
        self.achieved_rank = achieved_rank
        self.dimension = dimension
        super().__init__(f"dual lattice has rank {achieved_rank}, expected {dimension}")


class OrbitBoundError(VerificationError, RuntimeError):
    """Orbit closure exceeded its safety bound."""


class CriticalPointError(VerificationError, RuntimeError):
    """Critical point search returned an unexpected configuration."""


class ConfigError(VerificationError, ValueError):
    """Invalid command line usage or run configuration."""
