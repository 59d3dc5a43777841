"""Helper functions for the cohcert package."""

import dataclasses
import os
from enum import Enum
from typing import Any, Optional, Tuple

import numpy as np

from cohcert.errors import ConfigError

THREADS_ENV = "COHCERT_THREADS"


def resolve_workers(workers: Optional[int] = None) -> int:
    """Worker count: explicit value, else ``COHCERT_THREADS``, else 1.

    Args:
        workers: Explicit request; values below 1 are treated as 1.

    Returns:
        int: Number of workers to use, capped by ``COHCERT_THREADS`` when set.
    """
    raw = os.environ.get(THREADS_ENV)
    cap = None
    if raw:
        try:
            cap = max(1, int(raw))
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got '{raw}'", field=THREADS_ENV)
    if workers is None:
        return cap or 1
    workers = max(1, int(workers))
    return min(workers, cap) if cap else workers


def parse_resolution(text: str) -> Tuple[int, int]:
    """Parse a ``RxA`` grid resolution such as ``64x128``.

    Args:
        text: Resolution string.

    Returns:
        Tuple[int, int]: Radii and angles.
    """
    try:
        radii, angles = (int(part) for part in str(text).lower().split("x"))
    except ValueError:
        raise ConfigError(f"Resolution must look like RxA (e.g. 64x128), got '{text}'",
                          field="resolution") from None
    if radii < 1 or angles < 1:
        raise ConfigError(f"Resolution entries must be positive, got '{text}'", field="resolution")
    return radii, angles


def to_serializable(value: Any) -> Any:
    """Recursively convert results into JSON-friendly values.

    Dataclasses become dicts, arrays become lists, complex numbers become
    ``[re, im]`` pairs and enums become their values.
    """
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_serializable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_serializable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_serializable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_serializable(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def complex_matrix(value: Any, field: str = "matrix") -> np.ndarray:
    """Matrix from nested lists whose entries are numbers or ``[re, im]`` pairs."""
    try:
        array = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise ConfigError(f"Malformed matrix entries in '{field}'", field=field) from None
    if array.ndim == 3 and array.shape[-1] == 2:
        return array[..., 0] + 1j * array[..., 1]
    if array.ndim == 2:
        return array.astype(np.complex128)
    raise ConfigError(f"'{field}' must be a square matrix of numbers or [re, im] pairs", field=field)
