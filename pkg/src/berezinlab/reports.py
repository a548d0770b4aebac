"""Verification reports and their JSON/CSV serialization."""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import time
from dataclasses import asdict, dataclass, field, is_dataclass
from typing import Any, Iterable

import numpy as np

SCHEMA_VERSION = "1"

# Wall-clock time breaks byte-identical reruns, so it is recorded only on request.
RECORD_TIMING = False


def _jsonable(x: Any):
    if isinstance(x, (np.floating, float)):
        v = float(x)
        return v if math.isfinite(v) else repr(v)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": _jsonable(complex(x).real), "im": _jsonable(complex(x).imag)}
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if is_dataclass(x):
        return _jsonable(asdict(x))
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


def spec_hash(spec: Any = None, extra: dict | None = None) -> str:
    payload = {"spec": _jsonable(spec.key() if hasattr(spec, "key") else spec), "extra": _jsonable(extra or {})}
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


@dataclass
class VerificationReport:
    identity_id: str
    paper_ref: str
    inputs: dict
    residuals: list
    tolerance: float
    passed: bool
    spec_hash: str
    wall_time_ms: float | None = None
    details: dict = field(default_factory=dict)

    @classmethod
    def build(cls, identity_id: str, paper_ref: str, *, labels: dict, params: dict,
              residuals: Iterable[float], tolerance: float, spec: Any = None,
              start: float | None = None, passed: bool | None = None,
              details: dict | None = None) -> "VerificationReport":
        res = [float(r) for r in residuals]
        ok = all(math.isfinite(r) and r <= tolerance for r in res) if passed is None else bool(passed)
        wall = None
        if RECORD_TIMING and start is not None:
            wall = round(1000.0 * (time.perf_counter() - start), 3)
        return cls(identity_id, paper_ref, {"labels": labels, "params": params}, res, float(tolerance),
                   ok, spec_hash(spec, params), wall, details or {})

    @property
    def max_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0

    def to_dict(self) -> dict:
        return {
            "identity_id": self.identity_id,
            "paper_ref": self.paper_ref,
            "inputs": _jsonable(self.inputs),
            "residuals": _jsonable(self.residuals),
            "tolerance": self.tolerance,
            "pass": self.passed,
            "spec_hash": self.spec_hash,
            "wall_time_ms": self.wall_time_ms,
            "details": _jsonable(self.details),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.identity_id}: max residual {self.max_residual:.3e} (tol {self.tolerance:.1e})"


def write_csv(rows: Iterable[Iterable[Any]], header: Iterable[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    w.writerow(list(header))
    for r in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in r])
    return buf.getvalue()
