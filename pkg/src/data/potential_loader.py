from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import pandas as pd

from potentials.models import (
    AnalyticDecay,
    Potential,
    ScaledPotential,
    SmoothCompact,
    SquareWell,
    SumPotential,
    TabulatedPotential,
    ZeroPotential,
    scale,
)
from utils.errors import ConfigError, DomainError
from utils.logging_config import get_logger

logger = get_logger(__name__)

_FIELDS = {
    "zero": (set(), set()),
    "square_well": ({"q0", "a"}, set()),
    "smooth_compact": ({"coefficients", "a"}, {"edge"}),
    "analytic_decay": (set(), {"amplitude", "c", "p"}),
    "sum": ({"terms"}, set()),
    "tabulated": (set(), {"r", "q", "file"}),
    "scaled": ({"base", "theta"}, set()),
}


class PotentialLoader:
    def __init__(self, base_dir: Optional[Path] = None):
        """
        Build potentials from config mappings.

        Args:
            base_dir: Directory that relative ``file`` entries of tabulated
                potentials are resolved against (the config file's directory)
        """
        self.project_root = Path(__file__).parent.parent.parent
        self.base_dir = Path(base_dir) if base_dir is not None else self.project_root

    def load(self, entry: Mapping[str, Any], location: str = "potential") -> Potential:
        """
        Potential described by ``entry``.

        Raises:
            ConfigError: unknown kind, missing or unknown keys, or values the
                potential rejects; the message names the dotted location
        """
        if not isinstance(entry, Mapping):
            raise ConfigError(f"{location} must be a mapping, got {type(entry).__name__}")
        kind = entry.get("kind")
        if kind not in _FIELDS:
            raise ConfigError(f"{location}.kind must be one of {sorted(_FIELDS)}, got {kind!r}")
        required, optional = _FIELDS[kind]
        keys = set(entry) - {"kind"}
        for key in sorted(keys - required - optional):
            raise ConfigError(f"unknown key '{location}.{key}'")
        for key in sorted(required - keys):
            raise ConfigError(f"missing key '{location}.{key}'")
        try:
            return getattr(self, f"_load_{kind}")(entry, location)
        except DomainError as exc:
            raise ConfigError(f"{location}: {exc}") from exc
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{location}: malformed {kind} potential ({exc})") from exc

    def _load_zero(self, entry: Mapping, location: str) -> Potential:
        return ZeroPotential()

    def _load_square_well(self, entry: Mapping, location: str) -> Potential:
        return SquareWell(float(entry["q0"]), float(entry["a"]))

    def _load_smooth_compact(self, entry: Mapping, location: str) -> Potential:
        return SmoothCompact(tuple(float(c) for c in entry["coefficients"]), float(entry["a"]),
                             float(entry.get("edge", 0.0)))

    def _load_analytic_decay(self, entry: Mapping, location: str) -> Potential:
        defaults = AnalyticDecay()
        return AnalyticDecay(float(entry.get("amplitude", defaults.amplitude)),
                             float(entry.get("c", defaults.c)), float(entry.get("p", defaults.p)))

    def _load_sum(self, entry: Mapping, location: str) -> Potential:
        terms = entry["terms"]
        if not isinstance(terms, list):
            raise ConfigError(f"{location}.terms must be a list")
        return SumPotential(tuple(self.load(term, f"{location}.terms[{i}]") for i, term in enumerate(terms)))

    def _load_tabulated(self, entry: Mapping, location: str) -> Potential:
        if "file" in entry:
            if "r" in entry or "q" in entry:
                raise ConfigError(f"{location}: give either 'file' or inline 'r'/'q', not both")
            return self.load_table(entry["file"], location)
        if "r" not in entry or "q" not in entry:
            raise ConfigError(f"{location}: tabulated potential needs 'r' and 'q' (or 'file')")
        return TabulatedPotential(tuple(entry["r"]), tuple(entry["q"]))

    def _load_scaled(self, entry: Mapping, location: str) -> ScaledPotential:
        theta = entry["theta"]
        if isinstance(theta, (list, tuple)):
            if len(theta) != 2:
                raise ConfigError(f"{location}.theta must be a number or [re, im]")
            theta = complex(float(theta[0]), float(theta[1]))
        return scale(self.load(entry["base"], f"{location}.base"), theta)

    def load_table(self, path, location: str = "potential") -> TabulatedPotential:
        """Tabulated potential from a CSV file with columns r and q."""
        path = Path(path)
        if not path.is_absolute():
            path = self.base_dir / path
        if not path.exists():
            raise ConfigError(f"{location}.file: potential table not found at {path}")
        frame = pd.read_csv(path)
        missing = {"r", "q"} - set(frame.columns)
        if missing:
            raise ConfigError(f"{location}.file: {path.name} lacks columns {sorted(missing)}")
        frame = frame.sort_values("r")
        logger.debug("loaded %d potential samples from %s", len(frame), path)
        return TabulatedPotential(tuple(frame["r"].astype(float)), tuple(frame["q"].astype(float)))


def describe(potential: Potential) -> Dict[str, Any]:
    """Mapping form plus derived attributes, for result provenance."""
    summary = dict(potential.to_mapping())
    summary["support_radius"] = potential.support_radius
    summary["analytic"] = potential.analytic
    return summary
