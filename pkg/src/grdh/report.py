"""Machine-readable reports shared by every CLI command.

Probabilities are written as ``{"num": "...", "den": "..."}`` with decimal
strings so they survive JSON round trips exactly.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field, fields, is_dataclass
from fractions import Fraction
from typing import Any


def encode_fraction(q: Fraction, approx: bool = False) -> dict:
    out = {"num": str(q.numerator), "den": str(q.denominator)}
    if approx:
        out["approx"] = float(q)
    return out


def decode_fraction(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def to_jsonable(value: Any, approx: bool = False) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return encode_fraction(value, approx)
    if isinstance(value, enum.Enum):
        return value.value
    if is_dataclass(value):
        return {f.name: to_jsonable(getattr(value, f.name), approx) for f in fields(value)}
    if hasattr(value, "_asdict"):
        return {k: to_jsonable(v, approx) for k, v in value._asdict().items()}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v, approx) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v, approx) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


@dataclass
class Report:
    command: str
    params: dict
    results: list = field(default_factory=list)
    oracle_checked: bool = False

    def to_dict(self, approx: bool = False) -> dict:
        return {
            "command": self.command,
            "params": to_jsonable(self.params),
            "results": to_jsonable(self.results, approx),
            "oracle_checked": self.oracle_checked,
        }

    def to_json(self, approx: bool = False) -> str:
        return json.dumps(self.to_dict(approx), indent=2)

    def to_csv(self) -> str:
        rows = [_flatten(r) for r in to_jsonable(self.results)]
        cols: list[str] = []
        for r in rows:
            cols.extend(c for c in r if c not in cols)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()


def _flatten(rec: dict) -> dict:
    out = {}
    for k, v in rec.items():
        if isinstance(v, dict) and set(v) >= {"num", "den"}:
            out[k] = f"{v['num']}/{v['den']}"
        elif isinstance(v, list):
            out[k] = " ".join(str(x) for x in v)
        else:
            out[k] = v
    return out
