"""Net documents (JSON), OBJ export and verification reports.

A net document stores one value per lattice cell in lexicographic order with
the first direction varying fastest; ``null`` marks an absent cell.  Floats
are written with ``repr``, the shortest decimal string that reads back to the
same double, so save/load round trips are bit-exact.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .elements import Plane, Point, Sphere, UNIT_TOL
from .exceptions import SchemaError
from .grid import Grid
from .pseudo_euclid import ProjectiveLine, euclidean_space

SCHEMA_VERSION = 1
ARITY = {"points": 3, "planes": 4, "spheres": 4, "contact_elements": 7, "lines": 12}
INCIDENCE_TOL = 1e-9


@dataclass
class NetDocument:
    kind: str
    extents: tuple[int, ...]
    entries: list
    metadata: dict[str, Any] = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        self.extents = tuple(self.extents)
        validate(self)

    @property
    def dims(self) -> int:
        return len(self.extents)

    def to_json(self) -> str:
        head = {
            "schema_version": self.schema_version,
            "kind": self.kind,
            "dims": self.dims,
            "extents": list(self.extents),
            "metadata": self.metadata,
        }
        lines = ["{"]
        for k, v in head.items():
            lines.append(f"  {json.dumps(k)}: {json.dumps(v, sort_keys=True)},")
        rows = [json.dumps(None if e is None else [float(t) for t in e]) for e in self.entries]
        lines.append('  "entries": [')
        lines.append(",\n".join("    " + r for r in rows))
        lines.append("  ]")
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "NetDocument":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        if not isinstance(raw, dict):
            raise SchemaError("document must be a JSON object")
        for key in ("schema_version", "kind", "extents", "entries"):
            if key not in raw:
                raise SchemaError(f"missing field '{key}'")
        if raw["schema_version"] != SCHEMA_VERSION:
            raise SchemaError(f"field 'schema_version': unsupported version {raw['schema_version']!r}")
        if "dims" in raw and raw["dims"] != len(raw["extents"]):
            raise SchemaError("field 'dims' does not match the length of 'extents'")
        metadata = raw.get("metadata", {})
        if not isinstance(metadata, dict):
            raise SchemaError("field 'metadata' must be an object")
        return cls(raw["kind"], tuple(raw["extents"]) if isinstance(raw["extents"], list) else raw["extents"],
                   raw["entries"], metadata, raw["schema_version"])


def _cell_name(extents, k: int) -> str:
    u = []
    for n in extents:
        u.append(k % n)
        k //= n
    return str(tuple(u))


def validate(doc: NetDocument) -> None:
    if doc.kind not in ARITY:
        raise SchemaError(f"field 'kind': unknown kind {doc.kind!r}, expected one of {sorted(ARITY)}")
    if not isinstance(doc.extents, tuple) or not doc.extents or not all(
        isinstance(n, int) and not isinstance(n, bool) and n > 0 for n in doc.extents
    ):
        raise SchemaError(f"field 'extents': expected a list of positive integers, got {doc.extents!r}")
    if not isinstance(doc.entries, list):
        raise SchemaError("field 'entries' must be a list")
    count = math.prod(doc.extents)
    if len(doc.entries) != count:
        raise SchemaError(f"field 'entries': {len(doc.entries)} entries but extents {list(doc.extents)} need {count}")
    arity = ARITY[doc.kind]
    for k, e in enumerate(doc.entries):
        if e is None:
            continue
        cell = _cell_name(doc.extents, k)
        if not isinstance(e, (list, tuple)) or len(e) != arity:
            raise SchemaError(f"entries[{k}] (cell {cell}): expected {arity} numbers for kind '{doc.kind}'")
        if not all(isinstance(t, (int, float)) and not isinstance(t, bool) and math.isfinite(t) for t in e):
            raise SchemaError(f"entries[{k}] (cell {cell}): entries must be finite numbers")
        if doc.kind in ("planes", "contact_elements"):
            v = np.array(e[:3] if doc.kind == "planes" else e[3:6], dtype=float)
            if abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
                raise SchemaError(f"entries[{k}] (cell {cell}): plane normal has length {np.linalg.norm(v)!r}, expected 1")
        if doc.kind == "contact_elements":
            x, v, d = np.array(e[:3], float), np.array(e[3:6], float), float(e[6])
            gap = abs(float(v @ x) - d)
            if gap > INCIDENCE_TOL * max(1.0, float(np.linalg.norm(x))):
                raise SchemaError(f"entries[{k}] (cell {cell}): point is not on its plane (distance {gap:.3g})")


def load_net(path) -> NetDocument:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from exc
    return NetDocument.from_json(text)


def save_net(doc: NetDocument, path) -> None:
    Path(path).write_text(doc.to_json())


# ---------------------------------------------------------------------------
# conversion between documents and grids of geometric values

def _entry_value(kind: str, e):
    if e is None:
        return None
    if kind == "points":
        return np.array(e, dtype=float)
    if kind == "planes":
        return Plane(e[:3], e[3])
    if kind == "spheres":
        return Sphere(e[:3], e[3])
    if kind == "contact_elements":
        return (np.array(e[:3], dtype=float), Plane(e[3:6], e[6]))
    return ProjectiveLine.span([e[:6], e[6:]], euclidean_space(6))


def _value_entry(kind: str, val) -> list | None:
    if val is None:
        return None
    if kind == "points":
        return [float(t) for t in (val.x if isinstance(val, Point) else np.asarray(val).reshape(3))]
    if kind == "planes":
        return [*val.v, val.d]
    if kind == "spheres":
        if isinstance(val, Point):
            return [*val.x, 0.0]
        return [*val.c, val.r]
    if kind == "contact_elements":
        x, P = val
        x = x.x if isinstance(x, Point) else np.asarray(x, dtype=float)
        return [*(float(t) for t in x), *P.v, P.d]
    return [float(t) for t in np.asarray(val.basis).reshape(12)]


def doc_to_grid(doc: NetDocument) -> Grid:
    return Grid.from_flat(doc.extents, [_entry_value(doc.kind, e) for e in doc.entries])


def grid_to_doc(grid: Grid, kind: str, metadata: dict | None = None) -> NetDocument:
    if kind not in ARITY:
        raise SchemaError(f"unknown kind {kind!r}")
    return NetDocument(kind, grid.extents, [_value_entry(kind, v) for v in grid.values()], dict(metadata or {}))


# ---------------------------------------------------------------------------
# OBJ export

def obj_text(doc: NetDocument) -> str:
    if doc.kind != "points":
        raise SchemaError("OBJ export needs a points document")
    if doc.dims != 2:
        raise SchemaError(f"OBJ export needs a two-dimensional net, got dims = {doc.dims}")
    if any(e is None for e in doc.entries):
        raise SchemaError("OBJ export needs a complete net")
    n0, n1 = doc.extents
    out = [f"v {float(e[0])!r} {float(e[1])!r} {float(e[2])!r}" for e in doc.entries]

    def idx(a, b):
        return 1 + a + n0 * b

    for b in range(n1 - 1):
        for a in range(n0 - 1):
            out.append(f"f {idx(a, b)} {idx(a + 1, b)} {idx(a + 1, b + 1)} {idx(a, b + 1)}")
    return "\n".join(out) + "\n"


def export_obj(doc: NetDocument, path) -> None:
    Path(path).write_text(obj_text(doc))


# ---------------------------------------------------------------------------
# verification reports

@dataclass
class VerificationReport:
    """Residuals of one check; passes when the largest residual is within ``threshold``."""

    check: str
    residuals: dict
    threshold: float
    profile: str = "default"
    notes: list = field(default_factory=list)

    @property
    def max(self) -> float:
        return max(self.residuals.values(), default=0.0)

    @property
    def mean(self) -> float:
        return float(np.mean(list(self.residuals.values()))) if self.residuals else 0.0

    @property
    def passed(self) -> bool:
        return self.max <= self.threshold

    def worst(self):
        return max(self.residuals, key=self.residuals.get) if self.residuals else None

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "passed": self.passed,
            "threshold": self.threshold,
            "profile": self.profile,
            "count": len(self.residuals),
            "max": self.max,
            "mean": self.mean,
            "worst": str(self.worst()),
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [
            f"{self.check}: {status}",
            f"  cells: {len(self.residuals)}",
            f"  max residual: {self.max:.3e} (threshold {self.threshold:.1e}, profile {self.profile})",
            f"  mean residual: {self.mean:.3e}",
        ]
        if not self.passed:
            lines.append(f"  worst cell: {self.worst()}")
        lines.extend(f"  {n}" for n in self.notes)
        return "\n".join(lines)
