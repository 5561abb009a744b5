"""Canonical JSON documents for states, POVMs, SICs, probabilities and reports.

Layout::

    {"schema_version": "1", "kind": <kind>, "payload": {...}}

Complex numbers are ``[re, im]`` pairs and matrices are row-major lists of
rows. Emission is canonical: keys are written in a fixed order and floats use
Python's shortest round-trip repr, so equal values give byte-identical files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .errors import QBError
from .linalg import DEFAULT_TOL, validate_density
from .measurement import as_probability_vector

SCHEMA_VERSION = "1"
KINDS = ("state", "povm", "sic", "probabilities", "report")


class DocumentError(QBError, ValueError):
    """Malformed or invalid document; ``location`` points at the first problem."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.message = message


@dataclass
class Document:
    kind: str
    payload: dict

    def to_json(self) -> str:
        return dumps(self)


# -- encoding ---------------------------------------------------------------


def _real(x) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("non-finite number cannot be serialized")
    return x


def encode_complex(z) -> list:
    z = complex(z)
    return [_real(z.real), _real(z.imag)]


def encode_vector(v) -> list:
    return [encode_complex(z) for z in np.asarray(v).ravel()]


def encode_matrix(m) -> list:
    return [encode_vector(row) for row in np.asarray(m)]


def _encode_payload(kind: str, payload: dict) -> dict:
    if kind == "state":
        return {"dim": int(payload["dim"]), "matrix": encode_matrix(payload["matrix"])}
    if kind == "povm":
        return {
            "dim": int(payload["dim"]),
            "effects": [encode_matrix(e) for e in payload["effects"]],
        }
    if kind == "sic":
        fid = payload.get("fiducial")
        out = {
            "dim": int(payload["dim"]),
            "fiducial": None if fid is None else encode_vector(fid),
            "vectors": [encode_vector(v) for v in payload["vectors"]],
        }
        if payload.get("search") is not None:
            out["search"] = to_plain(payload["search"])
        return out
    if kind == "probabilities":
        return {"values": [_real(x) for x in payload["values"]]}
    if kind == "report":
        return to_plain(payload)
    raise ValueError(f"unknown document kind {kind!r}")


def to_plain(obj):
    """Convert numpy scalars/arrays inside a report body to JSON-native values."""
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _real(obj)
    if isinstance(obj, complex):
        return encode_complex(obj)
    return obj


def dumps(doc: Document) -> str:
    body = {
        "schema_version": SCHEMA_VERSION,
        "kind": doc.kind,
        "payload": _encode_payload(doc.kind, doc.payload),
    }
    return _format(body, 0) + "\n"


def _scalar(x) -> str:
    return json.dumps(x, ensure_ascii=False, allow_nan=False)


def _format(obj, level: int) -> str:
    """Indented JSON with lists of scalars kept on one line."""
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{_scalar(str(k))}: {_format(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(_scalar(v) for v in obj) + "]"
        items = [inner + _format(v, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return _scalar(obj)


def write_document(doc: Document, path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def state_document(rho) -> Document:
    rho = np.asarray(rho, dtype=np.complex128)
    return Document("state", {"dim": rho.shape[0], "matrix": rho})


def povm_document(effects) -> Document:
    effects = np.asarray(effects, dtype=np.complex128)
    return Document("povm", {"dim": effects.shape[1], "effects": effects})


def sic_document(vectors, fiducial=None, search=None) -> Document:
    vectors = np.asarray(vectors, dtype=np.complex128)
    return Document(
        "sic",
        {"dim": vectors.shape[1], "fiducial": fiducial, "vectors": vectors, "search": search},
    )


def probabilities_document(values) -> Document:
    return Document("probabilities", {"values": np.asarray(values, dtype=float)})


def report_document(body: dict) -> Document:
    return Document("report", dict(body))


# -- decoding ---------------------------------------------------------------


def _expect(cond: bool, location: str, message: str) -> None:
    if not cond:
        raise DocumentError(location, message)


def _decode_number(x, loc: str) -> float:
    _expect(
        isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x),
        loc,
        "expected a finite number",
    )
    return float(x)


def _decode_complex(x, loc: str) -> complex:
    _expect(isinstance(x, list) and len(x) == 2, loc, "expected a [re, im] pair")
    return complex(_decode_number(x[0], loc + "[0]"), _decode_number(x[1], loc + "[1]"))


def _decode_vector(x, loc: str, length: int | None = None) -> np.ndarray:
    _expect(isinstance(x, list) and len(x) > 0, loc, "expected a nonempty list")
    if length is not None:
        _expect(len(x) == length, loc, f"expected {length} entries, got {len(x)}")
    return np.array([_decode_complex(z, f"{loc}[{i}]") for i, z in enumerate(x)])


def _decode_matrix(x, loc: str, d: int) -> np.ndarray:
    _expect(isinstance(x, list) and len(x) == d, loc, f"expected {d} rows")
    return np.stack([_decode_vector(row, f"{loc}[{i}]", d) for i, row in enumerate(x)])


def _decode_dim(payload: dict, minimum: int = 1) -> int:
    d = payload.get("dim")
    _expect(
        isinstance(d, int) and not isinstance(d, bool) and d >= minimum,
        "payload.dim",
        f"expected an integer >= {minimum}",
    )
    return d


def _decode_payload(kind: str, payload: dict) -> dict:
    tol = DEFAULT_TOL
    if kind == "state":
        d = _decode_dim(payload)
        rho = _decode_matrix(payload.get("matrix"), "payload.matrix", d)
        report = validate_density(rho, tol)
        _expect(report.passed, "payload.matrix", f"not a density operator ({report.summary()})")
        return {"dim": d, "matrix": rho}
    if kind == "povm":
        d = _decode_dim(payload)
        effects = payload.get("effects")
        _expect(isinstance(effects, list) and effects, "payload.effects", "expected a nonempty list")
        mats = np.stack(
            [_decode_matrix(e, f"payload.effects[{i}]", d) for i, e in enumerate(effects)]
        )
        return {"dim": d, "effects": mats}
    if kind == "sic":
        d = _decode_dim(payload, minimum=2)
        vectors = payload.get("vectors")
        _expect(isinstance(vectors, list), "payload.vectors", "expected a list")
        _expect(len(vectors) == d * d, "payload.vectors", f"expected {d * d} vectors")
        vecs = np.stack(
            [_decode_vector(v, f"payload.vectors[{i}]", d) for i, v in enumerate(vectors)]
        )
        norms = np.abs(np.sum(np.abs(vecs) ** 2, axis=1) - 1.0)
        bad = np.flatnonzero(norms > tol.tol_norm)
        _expect(bad.size == 0, f"payload.vectors[{bad[0] if bad.size else 0}]", "not unit-normalized")
        fid = payload.get("fiducial")
        fiducial = None if fid is None else _decode_vector(fid, "payload.fiducial", d)
        out = {"dim": d, "fiducial": fiducial, "vectors": vecs, "search": None}
        if "search" in payload:
            _expect(isinstance(payload["search"], dict), "payload.search", "expected an object")
            out["search"] = payload["search"]
        return out
    if kind == "probabilities":
        values = payload.get("values")
        _expect(isinstance(values, list) and values, "payload.values", "expected a nonempty list")
        vals = np.array([_decode_number(v, f"payload.values[{i}]") for i, v in enumerate(values)])
        try:
            as_probability_vector(vals, tol.tol_verify, clamp=False)
        except ValueError as exc:
            raise DocumentError("payload.values", str(exc)) from None
        return {"values": vals}
    return payload


def loads(text: str, kinds: tuple[str, ...] | None = None) -> Document:
    """Parse and validate a document, optionally restricting the allowed kinds."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    _expect(isinstance(raw, dict), "$", "expected a JSON object")
    _expect(
        raw.get("schema_version") == SCHEMA_VERSION,
        "schema_version",
        f"expected {SCHEMA_VERSION!r}, got {raw.get('schema_version')!r}",
    )
    kind = raw.get("kind")
    _expect(kind in KINDS, "kind", f"unknown kind {kind!r}")
    if kinds is not None:
        _expect(kind in kinds, "kind", f"expected one of {list(kinds)}, got {kind!r}")
    payload = raw.get("payload")
    _expect(isinstance(payload, dict), "payload", "expected an object")
    return Document(kind, _decode_payload(kind, payload))


def read_document(path, kinds: tuple[str, ...] | None = None) -> Document:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DocumentError(str(path), f"cannot read file: {exc}") from None
    return loads(text, kinds)


def payload_equal(a: Document, b: Document) -> bool:
    """Value equality of two documents (exact, entrywise)."""
    if a.kind != b.kind:
        return False
    return _equal(_encode_payload(a.kind, a.payload), _encode_payload(b.kind, b.payload))


def _equal(x: Any, y: Any) -> bool:
    return json.dumps(x, sort_keys=True) == json.dumps(y, sort_keys=True)
