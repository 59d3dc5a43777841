"""Exception hierarchy for the cohcert package."""

from typing import Any, Dict, Optional


class CohcertError(Exception):
    """Base class for every error raised by cohcert."""

    code = "cohcert-error"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = dict(details or {})
        self.stage: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable error object emitted by the CLI."""
        return {
            "error": {
                "code": self.code,
                "message": self.message,
                "stage": self.stage,
                "details": self.details,
            }
        }


class InvalidDimensionError(CohcertError, ValueError):
    code = "invalid-dimension"


class ShapeError(CohcertError, ValueError):
    code = "shape"


class ValidationError(CohcertError, ValueError):
    code = "validation"


class SingularityError(CohcertError, ValueError):
    code = "singularity"


class DegenerateStatisticsError(CohcertError, ValueError):
    code = "degenerate-statistics"


class NoisyStatisticsError(CohcertError, ValueError):
    """Reconstructed POVM element is not positive beyond tolerance."""

    code = "noisy-statistics"

    def __init__(self, message: str, eigenvalue: float, details=None):
        super().__init__(message, {"eigenvalue": eigenvalue, **(details or {})})
        self.eigenvalue = eigenvalue


class InconsistentStatisticsError(CohcertError, ValueError):
    code = "inconsistent-statistics"


class InfeasibleStatisticsError(CohcertError, ValueError):
    code = "infeasible-statistics"


class InformationallyIncompleteError(CohcertError, ValueError):
    """Ancilla set does not span the operator space."""

    code = "informationally-incomplete"

    def __init__(self, message: str, deficiency: int, details=None):
        super().__init__(message, {"deficiency": deficiency, **(details or {})})
        self.deficiency = deficiency


class PreconditionError(CohcertError, ValueError):
    code = "precondition"


class SolverFailureError(CohcertError, RuntimeError):
    code = "solver-failure"


class FeasibilityFailureError(CohcertError, RuntimeError):
    code = "feasibility-failure"


class ConfigError(CohcertError, ValueError):
    """Config could not be parsed; carries line and field context."""

    code = "config"

    def __init__(
        self, message: str, line: Optional[int] = None, field: Optional[str] = None
    ):
        super().__init__(message, {"line": line, "field": field})
        self.line = line
        self.field = field


class UnknownTaskError(CohcertError, ValueError):
    code = "unknown-task"


class UnknownFigureError(CohcertError, ValueError):
    code = "unknown-figure"


class InternalError(CohcertError, RuntimeError):
    """Unexpected failure outside the documented error kinds."""

    code = "internal"
