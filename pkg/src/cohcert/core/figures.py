"""Figure series for the reference POVM: bounds against the true coherence."""

import os
from typing import Callable, Dict, Tuple

import numpy as np
import pandas as pd
from loguru import logger

from cohcert.bounds import l1_bound_convex, l1_lower_bound_qubit, re_bound_convex, re_bound_dual
from cohcert.coherence.measures import c_l1_bloch, c_re_bloch
from cohcert.errors import UnknownFigureError
from cohcert.models.states import PovmElement

REFERENCE_SCALE = 0.6
REFERENCE_DIRECTION = (0.5, 0.25, 0.25)
FIGURE_IDS = (4, 5, 6, 7)
CSV_FLOAT_FORMAT = "%.17g"


def reference_element() -> PovmElement:
    return PovmElement(dim=2, scale=REFERENCE_SCALE, direction=np.array(REFERENCE_DIRECTION))


def _state_axis(figure_id: int) -> int:
    # 4 and 6 rotate along σx, 5 and 7 along σy
    return 0 if figure_id in (4, 6) else 1


def _re_row(element: PovmElement, r: np.ndarray, m: float) -> Dict[str, float]:
    return {
        "actual": c_re_bloch(r),
        "method1": re_bound_convex(element, m).bound,
        "method2": re_bound_dual(element, m).bound,
    }


def _l1_row(element: PovmElement, r: np.ndarray, m: float) -> Dict[str, float]:
    return {
        "actual": c_l1_bloch(2, r),
        "method1": l1_bound_convex(element, m).bound,
        "analytical": l1_lower_bound_qubit(element.a, element.nu, m).bound,
    }


ROW_BUILDERS: Dict[int, Callable] = {4: _re_row, 5: _re_row, 6: _l1_row, 7: _l1_row}


def emit_figure_data(figure_id: int, points: int = 101) -> pd.DataFrame:
    """Series over q in [0, 1] for the state (𝕀 + q·σ)/2 and the reference POVM.

    Figures 4 and 5 compare the relative-entropy bounds (columns ``q, actual,
    method1, method2``); figures 6 and 7 the l1 bounds (``q, actual, method1,
    analytical``).
    """
    try:
        builder = ROW_BUILDERS[int(figure_id)]
    except (KeyError, ValueError, TypeError):
        raise UnknownFigureError(
            f"Unknown figure id '{figure_id}'; expected one of {list(FIGURE_IDS)}",
            {"figure": figure_id},
        ) from None
    element = reference_element()
    axis = _state_axis(int(figure_id))
    rows = []
    for q in np.linspace(0.0, 1.0, points):
        r = np.zeros(3)
        r[axis] = q
        m = element.a * (1.0 + float(element.nu @ r))
        rows.append({"q": float(q), **builder(element, r, m)})
    logger.debug(f"Figure {figure_id}: {len(rows)} rows")
    return pd.DataFrame(rows)


def write_figure_csv(frame: pd.DataFrame, path: str) -> str:
    """Write a figure series as CSV at full double precision.

    Args:
        frame: Series from ``emit_figure_data``.
        path: Target file; parent directories are created.

    Returns:
        The path written.
    """
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
    return path


def emit_figures(figure_ids, output_dir: str, points: int = 101) -> Tuple[str, ...]:
    """Write ``figure<N>.csv`` for every requested id into ``output_dir``."""
    paths = []
    for figure_id in figure_ids:
        frame = emit_figure_data(figure_id, points=points)
        path = write_figure_csv(frame, os.path.join(output_dir, f"figure{int(figure_id)}.csv"))
        logger.info(f"Figure {figure_id} series saved to {path}")
        paths.append(path)
    return tuple(paths)
