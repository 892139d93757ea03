"""JSON exchange formats for objects, matrices and (co)monoid presentations.

Matrix files look like ``{"rows": r, "cols": c, "data": [[re, im], ...]}``
with row-major data.  Optional ``"dom"`` / ``"cod"`` keys carry the typed
objects; without them the matrix is read as ``C^cols -> C^rows`` (a 1 in
either position becomes the unit ``I``, so vectors load as states).
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .algebraic import ComonoidPresentation, MonoidPresentation
from .errors import InvariantViolation, ParseError
from .tensorlinalg import (
    UNIT,
    Morphism,
    SpaceObject,
    base,
    biproduct_obj,
    dual_obj,
    fock_obj,
    sym_obj,
    tensor_obj,
)


def object_to_json(A: SpaceObject) -> dict:
    if A.kind == "unit":
        structure = "unit"
    elif A.kind == "base":
        structure = "base"
    elif A.kind == "tensor":
        structure = {"tensor": [object_to_json(p) for p in A.parts]}
    elif A.kind == "biproduct":
        structure = {"biproduct": [object_to_json(p) for p in A.parts]}
    elif A.kind == "fock":
        structure = {"fock": {"base": object_to_json(A.base), "cutoff": A.cutoff}}
    else:
        structure = {"sym": {"base": object_to_json(A.base), "degree": A.degree}}
    out = {"dim": A.dim, "structure": structure}
    if A.dual:
        out["dual"] = True
    return out


def object_from_json(obj) -> SpaceObject:
    if not isinstance(obj, dict) or "structure" not in obj or "dim" not in obj:
        raise ParseError(f"object must have 'dim' and 'structure' keys: {obj!r}")
    s, dim = obj["structure"], obj["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise ParseError(f"bad dimension {dim!r}")
    if s == "unit":
        A = UNIT
    elif s == "base":
        A = base(dim)
    elif isinstance(s, dict) and len(s) == 1:
        (tag, body), = s.items()
        if tag == "tensor":
            A = tensor_obj(*(object_from_json(p) for p in _as_list(body, tag)))
        elif tag == "biproduct":
            A = biproduct_obj(*(object_from_json(p) for p in _as_list(body, tag)))
        elif tag == "fock":
            A = fock_obj(object_from_json(_field(body, "base")), _nonneg(_field(body, "cutoff")))
        elif tag == "sym":
            A = sym_obj(object_from_json(_field(body, "base")), _nonneg(_field(body, "degree")))
        else:
            raise ParseError(f"unknown structure tag {tag!r}")
    else:
        raise ParseError(f"unknown structure {s!r}")
    if obj.get("dual", False):
        A = dual_obj(A)
    if A.dim != dim:
        raise ParseError(f"declared dim {dim} does not match structure dim {A.dim}")
    return A


def _as_list(body, tag):
    if not isinstance(body, list):
        raise ParseError(f"'{tag}' needs a list of objects")
    return body


def _field(body, key):
    if not isinstance(body, dict) or key not in body:
        raise ParseError(f"missing field {key!r}")
    return body[key]


def _nonneg(v):
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise ParseError(f"expected a non-negative integer, got {v!r}")
    return v


def _default_object(n: int) -> SpaceObject:
    return UNIT if n == 1 else base(n)


def matrix_to_json(f: Morphism, typed: bool = True) -> dict:
    rows, cols = f.shape
    data = [[float(z.real), float(z.imag)] for z in f.entries.ravel()]
    out = {"rows": rows, "cols": cols, "data": data}
    if typed:
        out["dom"] = object_to_json(f.dom)
        out["cod"] = object_to_json(f.cod)
    return out


def matrix_from_json(obj) -> Morphism:
    if not isinstance(obj, dict):
        raise ParseError("matrix must be a JSON object")
    for key in ("rows", "cols", "data"):
        if key not in obj:
            raise ParseError(f"matrix is missing {key!r}")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    rows, cols = _nonneg(rows), _nonneg(cols)
    if not isinstance(data, list) or len(data) != rows * cols:
        got = len(data) if isinstance(data, list) else type(data).__name__
        raise ParseError(f"data must hold rows*cols = {rows * cols} entries, got {got}")
    values = np.empty(rows * cols, dtype=np.complex128)
    for i, pair in enumerate(data):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ParseError(f"entry {i} must be a [re, im] pair")
        re, im = pair
        for part in (re, im):
            if isinstance(part, bool) or not isinstance(part, (int, float)):
                raise ParseError(f"entry {i} has a non-numeric component {part!r}")
        if not (math.isfinite(re) and math.isfinite(im)):
            raise InvariantViolation(f"entry {i} is not finite")
        values[i] = complex(re, im)
    dom = object_from_json(obj["dom"]) if "dom" in obj else _default_object(cols)
    cod = object_from_json(obj["cod"]) if "cod" in obj else _default_object(rows)
    if dom.dim != cols or cod.dim != rows:
        raise ParseError(f"dom/cod dims {dom.dim}/{cod.dim} disagree with shape {rows}x{cols}")
    return Morphism(dom, cod, values.reshape(rows, cols))


def _read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        # NaN/Infinity literals parse here so they can be reported as invariant violations
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc


def load_matrix(path) -> Morphism:
    return matrix_from_json(_read_json(path))


def dump_matrix(f: Morphism, path=None, typed: bool = True) -> str:
    text = json.dumps(matrix_to_json(f, typed), indent=None)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def presentation_to_json(p) -> dict:
    out = {"carrier": object_to_json(p.carrier)}
    if isinstance(p, MonoidPresentation):
        out["mult"] = matrix_to_json(p.mult)
        out["unit"] = matrix_to_json(p.unit)
        out["commutative"] = p.commutative
    else:
        out["comult"] = matrix_to_json(p.comult)
        out["counit"] = matrix_to_json(p.counit)
    return out


def presentation_from_json(obj):
    """Monoid if the triple has ``mult``/``unit``, comonoid if ``comult``/``counit``.

    Untyped matrices are re-tagged from the carrier, so a file only has to
    spell out the carrier once.
    """
    if not isinstance(obj, dict) or "carrier" not in obj:
        raise ParseError("presentation needs a 'carrier'")
    A = object_from_json(obj["carrier"])
    AA = tensor_obj(A, A)
    if "mult" in obj and "unit" in obj:
        mult = _retag(matrix_from_json(obj["mult"]), obj["mult"], AA, A)
        unit = _retag(matrix_from_json(obj["unit"]), obj["unit"], UNIT, A)
        return MonoidPresentation(A, mult, unit, commutative=bool(obj.get("commutative", True)))
    if "comult" in obj and "counit" in obj:
        comult = _retag(matrix_from_json(obj["comult"]), obj["comult"], A, AA)
        counit = _retag(matrix_from_json(obj["counit"]), obj["counit"], A, UNIT)
        return ComonoidPresentation(A, comult, counit)
    raise ParseError("presentation needs mult+unit or comult+counit")


def _retag(f: Morphism, raw: dict, dom: SpaceObject, cod: SpaceObject) -> Morphism:
    if "dom" in raw or "cod" in raw:
        return f
    if f.shape != (cod.dim, dom.dim):
        raise ParseError(f"matrix shape {f.shape} does not fit {dom} -> {cod}")
    return Morphism(dom, cod, f.entries)


def load_presentation(path):
    return presentation_from_json(_read_json(path))
