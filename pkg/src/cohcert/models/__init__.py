"""Data models shared across cohcert."""

from .results import (
    CoherenceMeasure,
    L1Branch,
    L1BoundResult,
    NormalizedInstance,
    OracleResult,
    ReBoundResult,
    ReconstructionCertificate,
    ReMethod,
)
from .states import (
    AncillaSet,
    BlochVector,
    DensityMatrix,
    PovmElement,
    TwoOutcomePovm,
    qubit_default_ancillas,
    z_basis_ancillas,
)
from .statistics import MeasurementStatistics, PartialPovmKnowledge

__all__ = [
    "CoherenceMeasure",
    "L1Branch",
    "L1BoundResult",
    "NormalizedInstance",
    "OracleResult",
    "ReBoundResult",
    "ReconstructionCertificate",
    "ReMethod",
    "AncillaSet",
    "BlochVector",
    "DensityMatrix",
    "PovmElement",
    "TwoOutcomePovm",
    "qubit_default_ancillas",
    "z_basis_ancillas",
    "MeasurementStatistics",
    "PartialPovmKnowledge",
]
