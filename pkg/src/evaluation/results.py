"""
Result tables with provenance, emitted as CSV or JSON.

JSON numbers use Python's shortest round-trip float repr, so finite values
survive emit-then-parse bit for bit. Non-finite floats are written as the
strings "nan", "inf" and "-inf".
"""

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from config.settings import RunConfig
from data.potential_loader import describe
from potentials.models import Potential
from utils.errors import ConfigError
from utils.logging_config import get_logger

logger = get_logger(__name__)

LIBRARY_VERSION = "0.1.0"
FORMATS = ("csv", "json")

_NON_FINITE = {"nan": math.nan, "inf": math.inf, "-inf": -math.inf}


@dataclass(frozen=True)
class Provenance:
    command: str
    config_digest: str
    tolerances: Dict[str, float]
    potential: Optional[Dict[str, Any]] = None
    version: str = LIBRARY_VERSION

    @classmethod
    def from_config(cls, command: str, config: RunConfig,
                    potential: Optional[Potential] = None) -> "Provenance":
        return cls(command, config.digest(), asdict(config.tolerances),
                   describe(potential) if potential is not None else None)


def _encode(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    return value


def _decode(value: Any) -> Any:
    if isinstance(value, str) and value in _NON_FINITE:
        return _NON_FINITE[value]
    return value


@dataclass
class ResultTable:
    """
    Typed rows under a fixed column schema.

    Rows that failed carry their message in the ``error`` column, which is
    always present; every other cell of such a row may be None.
    """
    columns: Sequence[str]
    provenance: Provenance
    rows: List[Dict[str, Any]] = field(default_factory=list)

    def __post_init__(self):
        self.columns = tuple(self.columns)
        if "error" not in self.columns:
            self.columns = self.columns + ("error",)

    def add_row(self, **values) -> None:
        unknown = set(values) - set(self.columns)
        if unknown:
            raise KeyError(f"columns {sorted(unknown)} are not part of the table schema")
        self.rows.append({column: values.get(column) for column in self.columns})

    def add_error(self, message: str, **values) -> None:
        self.add_row(error=message, **values)

    @property
    def errors(self) -> List[str]:
        return [row["error"] for row in self.rows if row["error"]]

    def column(self, name: str) -> List[Any]:
        return [row[name] for row in self.rows]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=list(self.columns))

    def to_csv(self) -> str:
        buffer = io.StringIO()
        self.to_frame().to_csv(buffer, index=False, quoting=csv.QUOTE_MINIMAL,
                               lineterminator="\r\n", float_format=lambda x: repr(float(x)))
        return buffer.getvalue()

    def to_json(self) -> str:
        document = {
            "columns": list(self.columns),
            "rows": [[_encode(row[c]) for c in self.columns] for row in self.rows],
            "provenance": asdict(self.provenance),
        }
        return json.dumps(document, indent=2, sort_keys=True, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ResultTable":
        document = json.loads(text)
        table = cls(document["columns"], Provenance(**document["provenance"]))
        for raw in document["rows"]:
            table.rows.append({c: _decode(v) for c, v in zip(table.columns, raw)})
        return table

    def render(self, fmt: str) -> str:
        if fmt not in FORMATS:
            raise ConfigError(f"output format must be one of {FORMATS}, got {fmt!r}")
        return self.to_csv() if fmt == "csv" else self.to_json()

    def write(self, path: Path, fmt: str) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(fmt), encoding="utf-8", newline="")
        logger.info("wrote %d rows to %s", len(self.rows), path)
        return path


def default_output_path(command: str, fmt: str, output_dir: Optional[Path] = None) -> Path:
    """results/<command>_<timestamp>.<fmt> under the repository root."""
    output_dir = output_dir or Path(__file__).parent.parent.parent / "results"
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    return Path(output_dir) / f"{command.replace('-', '_')}_{timestamp}.{fmt}"
