"""Check reports and their deterministic JSON/CSV serialization."""
from __future__ import annotations

import csv
import io
import json
import math
import numbers
from dataclasses import dataclass
from typing import Any

import numpy as np


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    inputs: dict[str, Any]
    residual: float
    tolerance: float
    passed: bool
    notes: str = ""

    def __post_init__(self):
        # pass flag must agree with residual <= tolerance
        expected = bool(self.residual <= self.tolerance)
        if self.passed != expected:
            raise ValueError(
                f"{self.check_id}: passed={self.passed} but residual {self.residual!r} "
                f"vs tolerance {self.tolerance!r}"
            )

    @classmethod
    def of(cls, check_id, residual, tolerance, inputs=None, notes=""):
        residual = float(residual)
        tolerance = float(tolerance)
        return cls(check_id, dict(inputs or {}), residual, tolerance,
                   bool(residual <= tolerance), notes)

    def as_dict(self) -> dict[str, Any]:
        return {
            "check_id": self.check_id,
            "inputs": self.inputs,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "notes": self.notes,
        }


def separation_report(check_id, distance, threshold, inputs=None, notes=""):
    """Report for a "these sets stay apart" claim: residual is the shortfall below threshold."""
    inputs = dict(inputs or {})
    inputs["min_distance"] = float(distance)
    return CheckReport.of(check_id, max(0.0, threshold - distance), 0.0, inputs, notes)


def _fmt_number(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if not math.isfinite(x):
        return "null"
    text = format(x, ".17g")
    return text if ("e" in text or "." in text) else text + ".0"


def to_json(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON with floats written to 17 significant digits and sorted object keys."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if isinstance(obj, np.bool_):
        obj = bool(obj)
    if isinstance(obj, numbers.Complex) and not isinstance(obj, numbers.Real):
        return to_json([obj.real, obj.imag], indent, _level)
    if isinstance(obj, numbers.Integral):
        return _fmt_number(obj if isinstance(obj, bool) else int(obj))
    if isinstance(obj, numbers.Real):
        return _fmt_number(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {to_json(v, indent, _level + 1)}"
                 for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + to_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "tolist"):
        return to_json(obj.tolist(), indent, _level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def reports_to_json(reports) -> str:
    ordered = sorted(reports, key=lambda r: r.check_id)
    return to_json([r.as_dict() for r in ordered]) + "\n"


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check_id", "residual", "tolerance", "pass", "notes", "inputs"])
    for r in sorted(reports, key=lambda r: r.check_id):
        w.writerow([r.check_id, _fmt_number(r.residual), _fmt_number(r.tolerance),
                    "true" if r.passed else "false", r.notes,
                    to_json(r.inputs, indent=0).replace("\n", "")])
    return buf.getvalue()


def rows_to_json(rows: list[dict]) -> str:
    return to_json(rows) + "\n"


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    header = list(rows[0].keys())
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else _fmt_number(v) for v in (row[h] for h in header)])
    return buf.getvalue()
