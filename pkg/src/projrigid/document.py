"""JSON input documents: schema, loading, round-trip serialization.

An input document looks like::

    {
      "field": {"d": 3},
      "generators": ["x", "y"],
      "relators": ["x*y^-1*x^-1*y*x*y^-1*x*y*x^-1*y^-1"],
      "representation": {
        "form": "sl2c",
        "matrices": {"x": [["1", "1"], ["0", "1"]], "y": [...]}
      },
      "cusps": [{"meridian": "x", "longitude": "y*x^-1*..."}],
      "aspherical": true
    }

Matrix entries use the field-element grammar with ``r`` for sqrt(d).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import jsonschema

from .field import ParseError, parse_element, render
from .lie import Representation
from .linalg import Matrix
from .presentations import Presentation, Word, parse_presentation, parse_word

__all__ = [
    "BUNDLED",
    "Document",
    "InputError",
    "INPUT_SCHEMA",
    "bundled_path",
    "dump_json",
    "load_document",
    "matrix_from_strings",
    "matrix_to_strings",
    "parse_document",
]

BUNDLED = ("figure8", "whitehead", "torus")


class InputError(ValueError):
    """Malformed or unparseable input."""


_MATRIX = {
    "type": "array",
    "items": {"type": "array", "items": {"type": "string"}},
}

INPUT_SCHEMA: dict = {
    "type": "object",
    "required": ["field", "generators", "relators", "representation"],
    "properties": {
        "name": {"type": "string"},
        "field": {
            "type": "object",
            "required": ["d"],
            "properties": {"d": {"type": "integer", "minimum": 1}},
            "additionalProperties": False,
        },
        "generators": {
            "type": "array",
            "items": {"type": "string", "pattern": "^[A-Za-z_][A-Za-z0-9_]*$"},
            "minItems": 1,
        },
        "relators": {"type": "array", "items": {"type": "string"}},
        "representation": {
            "type": "object",
            "required": ["form", "matrices"],
            "properties": {
                "form": {"enum": ["sl2c", "so31"]},
                "matrices": {"type": "object", "additionalProperties": _MATRIX},
            },
            "additionalProperties": False,
        },
        "cusps": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["meridian", "longitude"],
                "properties": {
                    "meridian": {"type": "string"},
                    "longitude": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
        "aspherical": {"type": "boolean"},
    },
    "additionalProperties": False,
}


def matrix_from_strings(rows: Any, d: int, shape: tuple[int, int] | None = None) -> Matrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError("a matrix must be a non-empty list of rows")
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise InputError("ragged matrix rows")
    if shape is not None and (len(rows), ncols) != shape:
        raise InputError(f"expected a {shape[0]}x{shape[1]} matrix")
    try:
        data = [[parse_element(str(s), d) for s in r] for r in rows]
    except ParseError as exc:
        raise InputError(f"bad matrix entry: {exc}") from exc
    return Matrix(data, d)


def matrix_to_strings(m: Matrix) -> list[list[str]]:
    return [[render(x) for x in row] for row in m.tolist()]


@dataclass
class Document:
    raw: dict
    sha256: str
    d: int
    presentation: Presentation
    representation: Representation
    aspherical: bool

    def word(self, text: str) -> Word:
        try:
            return parse_word(text, self.presentation.generators)
        except ValueError as exc:
            raise InputError(str(exc)) from exc

    def to_dict(self) -> dict:
        """Canonical serialization; parsing it again yields an equal document."""
        pres = self.presentation
        rep = self.representation
        out = {
            "field": {"d": self.d},
            "generators": list(pres.generators),
            "relators": [pres.render(r) for r in pres.relators],
            "representation": {
                "form": rep.form,
                "matrices": {g: matrix_to_strings(rep.source[g]) for g in pres.generators},
            },
            "cusps": [{"meridian": pres.render(c.meridian),
                       "longitude": pres.render(c.longitude)} for c in pres.cusps],
            "aspherical": self.aspherical,
        }
        if "name" in self.raw:
            out["name"] = self.raw["name"]
        return out

    def __eq__(self, other):
        if not isinstance(other, Document):
            return NotImplemented
        return self.to_dict() == other.to_dict()


def parse_document(raw: Mapping, sha256: str | None = None) -> Document:
    """Validate and parse a decoded JSON document.

    Representation checks (SO(3,1) membership, det 1) raise their own
    errors; relators are only checked when cohomology is requested.
    """
    try:
        jsonschema.validate(raw, INPUT_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"schema violation at {where}: {exc.message}") from exc
    raw = dict(raw)
    d = raw["field"]["d"]
    from .field import is_squarefree

    if not is_squarefree(d):
        raise InputError(f"field.d = {d} is not square-free")
    try:
        pres = parse_presentation({
            "generators": raw["generators"],
            "relators": raw["relators"],
            "cusps": raw.get("cusps", []),
        })
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    rsec = raw["representation"]
    form = rsec["form"]
    size = 2 if form == "sl2c" else 4
    mats = {}
    for g in pres.generators:
        if g not in rsec["matrices"]:
            raise InputError(f"no matrix for generator {g!r}")
        mats[g] = matrix_from_strings(rsec["matrices"][g], d, (size, size))
    extra = set(rsec["matrices"]) - set(pres.generators)
    if extra:
        raise InputError(f"matrices for undeclared generators {sorted(extra)}")
    if form == "sl2c":
        rep = Representation.from_sl2c(pres.generators, mats, d)
    else:
        rep = Representation.from_so31(pres.generators, mats, d)
    if sha256 is None:
        sha256 = hashlib.sha256(dump_json(raw).encode()).hexdigest()
    return Document(raw, sha256, d, pres, rep, bool(raw.get("aspherical", False)))


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("projrigid") / "data" / f"{name}.json"))


def load_document(path: str | Path) -> Document:
    """Load a document from a file path, or a bundled dataset by name."""
    p = Path(path)
    if not p.exists() and str(path) in BUNDLED:
        p = bundled_path(str(path))
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        raw = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: not valid UTF-8 JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise InputError(f"{path}: top level must be an object")
    return parse_document(raw, hashlib.sha256(data).hexdigest())


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
