"""
Run configuration
=================

Tolerances, grid hints and command parameters, read from YAML files of the
form::

    potential:
      kind: square_well
      q0: 4.0
      a: 2.0
    dimension: 3
    grid:
      per_decade: 24
    tolerances:
      ode_rtol: 1.0e-10
    parameters:
      l_range: [0, 12]

Unknown keys are rejected with their dotted location so that a typo never
silently falls back to a default.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

import yaml

from utils.errors import ConfigError

PARAMETER_KEYS = frozenset({
    "l_range", "region", "theta", "nu", "radius", "suites", "p_range",
    "function", "values", "theta_angles", "l_max", "max_depth", "predict",
})


@dataclass(frozen=True)
class ToleranceConfig:
    series_tol: float = 1e-15
    ode_rtol: float = 1e-10
    ode_atol: float = 1e-13
    seed_tol: float = 1e-10
    tail_tol: float = 1e-10
    quad_epsrel: float = 1e-10
    r_independence_tol: float = 1e-6
    newton_tol: float = 1e-8
    near_pole: float = 1e-10
    small_phase_switch: float = 1e-8
    contour_margin: float = 1e-6


@dataclass(frozen=True)
class GridConfig:
    per_decade: int = 24
    uniform_step: float = 0.05
    r_min_floor: float = 1e-8
    r_max_cap: float = 200.0
    r_match: Optional[float] = None
    r_max: Optional[float] = None
    chunk_nodes: int = 12


def _build(cls, mapping: Optional[Mapping], location: str):
    """Dataclass instance from a mapping, rejecting unknown keys."""
    if mapping is None:
        return cls()
    if not isinstance(mapping, Mapping):
        raise ConfigError(f"'{location}' must be a mapping, got {type(mapping).__name__}")
    known = {f.name: f for f in fields(cls)}
    values = {}
    for key, raw in mapping.items():
        if key not in known:
            raise ConfigError(f"unknown key '{location}.{key}'")
        default = getattr(cls(), key)
        if raw is None:
            values[key] = None
            continue
        try:
            if isinstance(default, bool):
                values[key] = bool(raw)
            elif isinstance(default, int):
                values[key] = int(raw)
            else:
                values[key] = float(raw)
        except (TypeError, ValueError):
            raise ConfigError(f"'{location}.{key}' must be numeric, got {raw!r}")
    return cls(**values)


@dataclass(frozen=True)
class RunConfig:
    potential: Dict[str, Any] = field(default_factory=lambda: {"kind": "zero"})
    compare_potential: Optional[Dict[str, Any]] = None
    dimension: int = 3
    grid: GridConfig = field(default_factory=GridConfig)
    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)
    parameters: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_mapping(cls, mapping: Mapping) -> "RunConfig":
        """
        Validate and build a RunConfig.

        Args:
            mapping: Parsed YAML document

        Returns:
            RunConfig

        Raises:
            ConfigError: unknown keys, wrong types, or a missing potential
        """
        if not isinstance(mapping, Mapping):
            raise ConfigError("configuration root must be a mapping")
        known = {f.name for f in fields(cls)}
        for key in mapping:
            if key not in known:
                raise ConfigError(f"unknown key '{key}'")
        if "potential" not in mapping or not isinstance(mapping["potential"], Mapping):
            raise ConfigError("'potential' mapping is required")
        compare = mapping.get("compare_potential")
        if compare is not None and not isinstance(compare, Mapping):
            raise ConfigError("'compare_potential' must be a mapping")
        parameters = mapping.get("parameters") or {}
        if not isinstance(parameters, Mapping):
            raise ConfigError("'parameters' must be a mapping")
        for key in parameters:
            if key not in PARAMETER_KEYS:
                raise ConfigError(f"unknown key 'parameters.{key}'")
        try:
            dimension = int(mapping.get("dimension", 3))
        except (TypeError, ValueError):
            raise ConfigError(f"'dimension' must be an integer, got {mapping.get('dimension')!r}")
        if dimension < 2:
            raise ConfigError(f"'dimension' must be at least 2, got {dimension}")
        return cls(
            potential=dict(mapping["potential"]),
            compare_potential=dict(compare) if compare is not None else None,
            dimension=dimension,
            grid=_build(GridConfig, mapping.get("grid"), "grid"),
            tolerances=_build(ToleranceConfig, mapping.get("tolerances"), "tolerances"),
            parameters=dict(parameters),
        )

    @classmethod
    def load(cls, path) -> "RunConfig":
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        try:
            with open(path, "r", encoding="utf-8") as handle:
                document = yaml.safe_load(handle)
        except yaml.YAMLError as e:
            raise ConfigError(f"invalid YAML in {path}: {e}")
        return cls.from_mapping(document or {})

    def to_mapping(self) -> Dict[str, Any]:
        mapping = {
            "potential": self.potential,
            "dimension": self.dimension,
            "grid": asdict(self.grid),
            "tolerances": asdict(self.tolerances),
            "parameters": self.parameters,
        }
        if self.compare_potential is not None:
            mapping["compare_potential"] = self.compare_potential
        return mapping

    def dump(self, path=None) -> str:
        """YAML text of this config; written to ``path`` when given."""
        text = yaml.safe_dump(self.to_mapping(), sort_keys=True, default_flow_style=False)
        if path is not None:
            Path(path).write_text(text, encoding="utf-8")
        return text

    def digest(self) -> str:
        canonical = json.dumps(self.to_mapping(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def with_tolerance(self, **overrides) -> "RunConfig":
        return replace(self, tolerances=replace(self.tolerances, **overrides))


def as_complex(raw) -> complex:
    """A number or an [re, im] pair."""
    if isinstance(raw, (list, tuple)):
        if len(raw) != 2:
            raise ConfigError(f"complex values are written as [re, im], got {raw!r}")
        return complex(float(raw[0]), float(raw[1]))
    try:
        return complex(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"expected a number or [re, im], got {raw!r}")


def complex_entries(raw) -> List[complex]:
    """A single value, or a list whose entries are numbers or [re, im] pairs."""
    if isinstance(raw, list):
        return [as_complex(entry) for entry in raw]
    return [as_complex(raw)]


def parameter_range(raw, location: str) -> range:
    """Inclusive integer range from [lo, hi]."""
    if not (isinstance(raw, (list, tuple)) and len(raw) == 2):
        raise ConfigError(f"'{location}' must be [lo, hi], got {raw!r}")
    try:
        lo, hi = int(raw[0]), int(raw[1])
    except (TypeError, ValueError):
        raise ConfigError(f"'{location}' must hold integers, got {raw!r}")
    if hi < lo:
        raise ConfigError(f"'{location}' is empty: {raw!r}")
    return range(lo, hi + 1)
