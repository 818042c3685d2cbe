"""
Input parsing and output emission for the command-line tools
Sides and points are read from JSON arrays or CSV; records are written
as JSON, CSV (17 significant digits) or plain text
"""
import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

from cyclogon.models import OutputFormat, Point

logger = logging.getLogger(__name__)


def format_number(value: Any) -> str:
    """17 significant digits, enough to round-trip a double."""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return f"{value:.17g}"


def _finite(values: Sequence[float], what: str) -> List[float]:
    out = [float(v) for v in values]
    for v in out:
        if not math.isfinite(v):
            raise ValueError(f"{what} must be finite, got {v}")
    return out


def parse_sides(text: str) -> List[float]:
    """
    Side lengths from a JSON array or a CSV line ``a0,a1,a2,a3,a4``

    Raises:
        ValueError: on malformed or non-finite input
    """
    text = text.strip()
    if not text:
        raise ValueError("No side lengths given")
    if text.startswith("["):
        values = json.loads(text)
    else:
        values = [field for row in csv.reader(io.StringIO(text)) for field in row if field.strip()]
    return _finite(values, "Side lengths")


def parse_points(text: str) -> List[Point]:
    """
    Points from JSON (``[[x, y], ...]`` or ``{"points": [...]}``) or CSV rows ``x,y``

    Raises:
        ValueError: on malformed or non-finite input
    """
    text = text.strip()
    if not text:
        raise ValueError("No points given")
    if text[0] in "[{":
        data = json.loads(text)
        if isinstance(data, dict):
            if "points" not in data:
                raise ValueError("JSON object needs a \"points\" key")
            data = data["points"]
        rows = [list(item) for item in data]
    else:
        rows = [row for row in csv.reader(io.StringIO(text)) if row]
    points = []
    for row in rows:
        if len(row) != 2:
            raise ValueError(f"Each point needs two coordinates, got {row}")
        x, y = _finite(row, "Coordinates")
        points.append(Point(x, y))
    return points


def read_points(path: Union[str, Path]) -> List[Point]:
    return parse_points(Path(path).read_text())


def _flatten(record: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    flat: Dict[str, Any] = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        elif isinstance(value, (list, tuple)):
            for i, item in enumerate(value):
                if isinstance(item, dict):
                    flat.update(_flatten(item, f"{name}.{i}."))
                else:
                    flat[f"{name}.{i}"] = item
        else:
            flat[name] = value
    return flat


def emit(record: Dict[str, Any], output: OutputFormat = OutputFormat.JSON) -> str:
    """Render one record; JSON keys are sorted so equal records give equal bytes."""
    if output is OutputFormat.JSON:
        return json.dumps(record, sort_keys=True, default=str)
    flat = _flatten(record)
    if output is OutputFormat.CSV:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(list(flat))
        writer.writerow([format_number(v) for v in flat.values()])
        return buffer.getvalue().rstrip("\n")
    return "\n".join(f"{key}: {format_number(value)}" for key, value in flat.items())
