"""Deterministic JSON/CSV output and verification reports."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


def _normalize(obj):
    if isinstance(obj, dict):
        return {str(k): _normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_normalize(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _Float(float(obj))
    return obj


class _Float(float):
    def __repr__(self):
        if not math.isfinite(self):
            return "null"
        return format(float(self), ".17g")


class _Encoder(json.JSONEncoder):
    def iterencode(self, o, _one_shot=False):
        # the C encoder bypasses float.__repr__, use the pure-Python path
        return json.encoder._make_iterencode(
            {}, self.default, json.encoder.py_encode_basestring, self.indent, repr,
            self.key_separator, self.item_separator, self.sort_keys, self.skipkeys, _one_shot,
        )(o, 0)


def dumps(obj, indent: int | None = 2) -> str:
    """JSON with sorted keys and floats printed with 17 significant digits."""
    return json.dumps(_normalize(obj), cls=_Encoder, sort_keys=True, indent=indent, allow_nan=True) + "\n"


def write_csv(path, header, rows) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([format(x, ".17g") if isinstance(x, (float, np.floating)) else x for x in row])


@dataclass
class Check:
    name: str
    passed: bool
    residual: object = None
    details: dict = field(default_factory=dict)
    group: str = "symbolic"

    def to_json(self) -> dict:
        residual = self.residual
        if residual is not None and not isinstance(residual, (int, float, str, np.floating)):
            residual = str(residual)
        return {"status": "pass" if self.passed else "fail", "residual": residual, "details": self.details}


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> None:
        self.checks.append(check)

    def to_json(self) -> dict:
        return {
            "status": "pass" if self.passed else "fail",
            "checks": {c.name: c.to_json() for c in sorted(self.checks, key=lambda c: c.name)},
        }

    def table(self) -> str:
        width = max((len(c.name) for c in self.checks), default=10)
        lines = []
        for c in sorted(self.checks, key=lambda c: c.name):
            res = c.residual
            res = format(res, ".3e") if isinstance(res, float) else ("" if res is None else str(res))
            lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<{width}}  {res}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"
