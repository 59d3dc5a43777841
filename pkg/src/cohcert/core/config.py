"""Run configuration: parsing, validation and canonical emission."""

import json
from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from cohcert.errors import CohcertError, ConfigError
from cohcert.models.results import CoherenceMeasure
from cohcert.models.states import (
    AncillaSet,
    DensityMatrix,
    PovmElement,
    qubit_default_ancillas,
    z_basis_ancillas,
)
from cohcert.models.statistics import MeasurementStatistics
from cohcert.utils.helpers import complex_matrix, parse_resolution

TASKS = ("simulate", "tomo", "bound-l1", "bound-re", "oracle", "nogo", "figures")
ANCILLA_PRESETS = ("qubit-default", "z-basis")
OPTION_KEYS = (
    "method",
    "measure",
    "tolerance",
    "lambda_range",
    "resolution",
    "restarts",
    "with_oracle",
    "partial",
    "figures",
    "p_table",
    "joint",
    "oracle_resolution",
    "oracle_samples",
    "slack",
)


@dataclass
class RunConfig:
    """One CLI run: scenario, task and per-task options."""

    task: str
    dim: int = 2
    state: Optional[Dict[str, Any]] = None
    povm: Optional[Dict[str, Any]] = None
    ancillas: Any = "qubit-default"
    statistics: Optional[Dict[str, Any]] = None
    shots: Optional[int] = None
    seed: Optional[int] = None
    options: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    @classmethod
    def parse(cls, text: str) -> "RunConfig":
        """Build a config from JSON text; errors carry the line or field."""
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"Invalid JSON: {e.msg}", line=e.lineno) from None
        if not isinstance(data, dict):
            raise ConfigError("Config must be a JSON object", line=1)
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"Unknown config field '{unknown[0]}'", field=unknown[0])
        if "task" not in data:
            raise ConfigError("Missing required field 'task'", field="task")
        return cls(**data)

    @classmethod
    def load(cls, path: str) -> "RunConfig":
        """Read and parse a JSON config file.

        Args:
            path: Path to the config file.

        Returns:
            Validated configuration.
        """
        with open(path, "r", encoding="utf-8") as f:
            return cls.parse(f.read())

    def to_dict(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def emit(self) -> str:
        """Canonical JSON: field order fixed, 2-space indent, trailing newline."""
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def with_overrides(self, **overrides) -> "RunConfig":
        """Copy with top-level fields and options replaced; ``None`` leaves a value alone."""
        top = {k: v for k, v in overrides.items() if k in {"seed", "shots"} and v is not None}
        options = dict(self.options)
        options.update(
            {k: v for k, v in overrides.items() if k not in {"seed", "shots"} and v is not None}
        )
        return replace(self, options=options, **top)

    def option(self, name: str, default: Any = None) -> Any:
        return self.options.get(name, default)

    def validate(self) -> None:
        """Check every field; the first problem raises ``ConfigError`` naming it."""
        if self.task not in TASKS:
            raise ConfigError(f"Unknown task '{self.task}'; expected one of {list(TASKS)}", field="task")
        if not isinstance(self.dim, int) or isinstance(self.dim, bool) or self.dim < 2:
            raise ConfigError(f"dim must be an integer >= 2, got {self.dim!r}", field="dim")
        for name in ("shots", "seed"):
            value = getattr(self, name)
            if value is not None and (not isinstance(value, int) or isinstance(value, bool)):
                raise ConfigError(f"{name} must be an integer, got {value!r}", field=name)
        if self.shots is not None and self.shots < 1:
            raise ConfigError(f"shots must be >= 1, got {self.shots}", field="shots")
        if not isinstance(self.options, dict):
            raise ConfigError("options must be an object", field="options")
        for key in self.options:
            if key not in OPTION_KEYS:
                raise ConfigError(f"Unknown option '{key}'", field=f"options.{key}")
        self._validate_options()
        # building the objects checks dimensions against each other
        if self.state is not None:
            self.state_matrix()
        if self.povm is not None:
            self.povm_element()
        if self.task not in ("nogo", "figures"):
            self.ancilla_set()
        if self.statistics is not None:
            statistics = self.observed_statistics()
            if self.task not in ("nogo", "figures"):
                self._require_labels(statistics)

    def _validate_options(self) -> None:
        options = self.options
        for key in ("restarts", "oracle_resolution", "oracle_samples"):
            if key in options and not (_is_integer(options[key]) and options[key] >= 1):
                raise ConfigError(f"{key} must be a positive integer", field=f"options.{key}")
        for key in ("tolerance", "slack"):
            if key in options and not (_is_number(options[key]) and options[key] > 0):
                raise ConfigError(f"{key} must be a positive number", field=f"options.{key}")
        for key in ("with_oracle", "partial"):
            if key in options and not isinstance(options[key], bool):
                raise ConfigError(f"{key} must be true or false", field=f"options.{key}")
        if "method" in options and not isinstance(options["method"], str):
            raise ConfigError("method must be a string", field="options.method")
        if "measure" in options:
            _wrap("options.measure", lambda: CoherenceMeasure.parse(options["measure"]))
        if "resolution" in options:
            parse_resolution(options["resolution"])
        if "lambda_range" in options:
            bounds = options["lambda_range"]
            if not (
                isinstance(bounds, list)
                and len(bounds) == 2
                and all(_is_number(v) for v in bounds)
                and bounds[0] < bounds[1]
            ):
                raise ConfigError("lambda_range must be [lo, hi] with lo < hi",
                                  field="options.lambda_range")
        if "figures" in options:
            ids = options["figures"]
            if not (isinstance(ids, list) and all(_is_integer(v) for v in ids)):
                raise ConfigError("figures must be a list of figure ids", field="options.figures")

    def _require_labels(self, statistics: MeasurementStatistics) -> None:
        """Direct statistics must cover every outcome the tomography step reads."""
        if self.option("partial", False):
            required = ["0", "1"]
        else:
            required = self.ancilla_set().labels
        missing = [label for label in required if label not in statistics.n]
        if missing:
            raise ConfigError(
                f"statistics.n lacks outcomes for {missing}", field="statistics.n"
            )

    def state_matrix(self) -> DensityMatrix:
        return _wrap("state", lambda: _density(self.state, self.dim, "state"))

    def povm_element(self) -> PovmElement:
        spec = self.povm
        if not isinstance(spec, dict):
            raise ConfigError("povm must be an object with 'a' and 'nu' or 'matrix'", field="povm")

        def build():
            if "matrix" in spec:
                element = PovmElement.from_matrix(complex_matrix(spec["matrix"], "povm.matrix"))
            elif "a" in spec and "nu" in spec:
                element = PovmElement(dim=self.dim, scale=spec["a"], direction=spec["nu"])
            else:
                raise ConfigError("povm needs 'a' and 'nu', or 'matrix'", field="povm")
            if element.dim != self.dim:
                raise ConfigError(f"povm has dimension {element.dim}, expected {self.dim}",
                                  field="povm")
            return element

        return _wrap("povm", build)

    def ancilla_set(self) -> AncillaSet:
        """Ancillas from a preset name or an explicit list of labelled states."""
        spec = self.ancillas
        if spec == "qubit-default":
            if self.dim != 2:
                raise ConfigError("'qubit-default' ancillas need dim = 2", field="ancillas")
            return qubit_default_ancillas()
        if spec == "z-basis":
            return z_basis_ancillas(self.dim)
        if not isinstance(spec, list):
            raise ConfigError(
                f"ancillas must be one of {list(ANCILLA_PRESETS)} or a list", field="ancillas"
            )
        states = []
        for index, item in enumerate(spec):
            path = f"ancillas[{index}]"
            if not isinstance(item, dict) or "label" not in item:
                raise ConfigError("Each ancilla needs a 'label'", field=path)
            states.append((item["label"], _wrap(path, lambda item=item, path=path: _density(item, self.dim, path))))
        return _wrap("ancillas", lambda: AncillaSet(dim=self.dim, states=tuple(states)))

    def observed_statistics(self) -> MeasurementStatistics:
        """Statistics given directly in the config rather than simulated."""
        spec = self.statistics
        if not isinstance(spec, dict) or "m" not in spec:
            raise ConfigError("statistics must be an object with 'm' and 'n'", field="statistics")
        return _wrap(
            "statistics",
            lambda: MeasurementStatistics(
                m=spec["m"], n=dict(spec.get("n", {})), shots=spec.get("shots")
            ),
        )

    def lambda_range(self) -> Sequence[float]:
        return tuple(self.option("lambda_range", (-100.0, 100.0)))

    def resolution(self, default=(64, 128)):
        value = self.option("resolution")
        return parse_resolution(value) if value is not None else default

    def figure_ids(self) -> List[int]:
        return [int(v) for v in self.option("figures", [4, 5, 6, 7])]


def _wrap(path: str, build):
    try:
        return build()
    except ConfigError:
        raise
    except (CohcertError, ValueError, TypeError, KeyError) as e:
        raise ConfigError(f"Invalid '{path}': {e}", field=path) from None


def _density(spec: Any, dim: int, path: str) -> DensityMatrix:
    if not isinstance(spec, dict):
        raise ConfigError("Expected an object with 'bloch', 'ket' or 'matrix'", field=path)
    if "bloch" in spec:
        state = DensityMatrix.from_bloch(dim, np.asarray(spec["bloch"], dtype=float))
    elif "ket" in spec:
        state = DensityMatrix.from_ket(complex_matrix([spec["ket"]], f"{path}.ket")[0])
    elif "matrix" in spec:
        state = DensityMatrix(complex_matrix(spec["matrix"], f"{path}.matrix"))
    else:
        raise ConfigError("Expected 'bloch', 'ket' or 'matrix'", field=path)
    if state.dim != dim:
        raise ConfigError(f"State has dimension {state.dim}, expected {dim}", field=path)
    return state


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_integer(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)
