"""JSON/CSV serialization for reports, sweeps and compute records.

JSON has no non-finite numbers, so ``inf``/``-inf``/``nan`` are written as
the strings ``"inf"``, ``"-inf"``, ``"nan"``. Floats use ``repr`` so the
output is byte-stable for a fixed input.
"""

from __future__ import annotations

import csv
import io
import json
import math
from importlib import resources

import numpy as np

SCHEMA_VERSION = 1

__all__ = ["SCHEMA_VERSION", "jsonable", "dumps", "write_csv", "csv_text", "load_schema",
           "fmt_num"]


def jsonable(obj):
    """Recursively convert to JSON-safe builtins."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if obj is None or isinstance(obj, str):
        return obj
    if hasattr(obj, "to_dict"):
        return jsonable(obj.to_dict())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, allow_nan=False) + "\n"


def fmt_num(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return str(v)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_num(v) for v in row])
    return buf.getvalue()


def write_csv(path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text(header, rows))


def load_schema(name: str) -> dict:
    """Load one of the shipped JSON schemas (``report``, ``compute``, ``sweep``, ``scan``, ``ingest``)."""
    text = resources.files("iwcelab.schemas").joinpath(f"{name}.schema.json").read_text(
        encoding="utf-8")
    return json.loads(text)
