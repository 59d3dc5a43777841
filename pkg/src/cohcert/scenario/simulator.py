"""Prepare-and-measure statistics for the unknown state and trusted ancillas."""

from typing import Dict, Optional, Union

import numpy as np
from loguru import logger

from cohcert.errors import ShapeError, ValidationError
from cohcert.models.states import (
    RHO_LABEL,
    AncillaSet,
    DensityMatrix,
    PovmElement,
    TwoOutcomePovm,
)
from cohcert.models.statistics import MeasurementStatistics
from cohcert.quantum.random import make_rng


def _element(povm: Union[PovmElement, TwoOutcomePovm]) -> PovmElement:
    element = povm.element if isinstance(povm, TwoOutcomePovm) else povm
    if not isinstance(element, PovmElement):
        raise ValidationError(f"Expected a POVM element, got {type(povm).__name__}")
    return element


def exact_probability(state: DensityMatrix, element: PovmElement) -> float:
    """Tr[ρM] for the click outcome."""
    element = _element(element)
    if state.dim != element.dim:
        raise ShapeError(
            f"State dimension {state.dim} does not match POVM dimension {element.dim}"
        )
    p = float(np.real(np.trace(state.matrix @ element.matrix)))
    return min(max(p, 0.0), 1.0)


def bloch_probability(state: DensityMatrix, element: PovmElement) -> float:
    """Same quantity through a(1 + (2/d) r·ν)."""
    element = _element(element)
    d = element.dim
    r = state.bloch().coords
    return element.scale * (1.0 + 2.0 / d * float(r @ element.direction))


def run_session(
    state: DensityMatrix,
    povm: Union[PovmElement, TwoOutcomePovm],
    ancillas: AncillaSet,
    shots: Optional[int] = None,
    seed: Optional[int] = None,
) -> MeasurementStatistics:
    """Run one fixed-measurement session over ρ and every ancilla.

    Without shots the exact probabilities are returned. With shots, each
    preparation draws its Bernoulli trials from its own Philox stream,
    spawned from ``seed`` in the order ρ then ancillas, so appending an
    ancilla leaves the earlier counts unchanged.
    """
    element = _element(povm)
    if ancillas.dim != element.dim:
        raise ShapeError(
            f"Ancilla dimension {ancillas.dim} does not match POVM dimension {element.dim}"
        )
    exact: Dict[str, float] = {RHO_LABEL: exact_probability(state, element)}
    for label, ancilla in ancillas:
        exact[label] = exact_probability(ancilla, element)

    if shots is None:
        return MeasurementStatistics(
            m=exact[RHO_LABEL],
            n={label: exact[label] for label in ancillas.labels},
            seed=seed,
        )

    if shots < 1:
        raise ValidationError(f"shots must be >= 1, got {shots}")
    streams = np.random.SeedSequence(seed).spawn(len(exact))
    counts = {
        label: int(make_rng(stream).binomial(shots, p))
        for (label, p), stream in zip(exact.items(), streams)
    }
    logger.debug(f"Sampled {shots} shots per preparation: {counts}")
    return MeasurementStatistics(
        m=counts[RHO_LABEL] / shots,
        n={label: counts[label] / shots for label in ancillas.labels},
        shots=shots,
        counts=counts,
        seed=seed,
    )
