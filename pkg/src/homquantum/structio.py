"""JSON structure files.

Schema::

    {"ring": {...}, "dim": d, "mu": d x d x d, "delta": d x d x d,
     "alpha": d x d, "c": length d (optional), "R": d x d (optional)}

``dumps`` is canonical (sorted keys, fixed layout, ``-0.0`` folded into
``0.0``), so emitting a parsed file reproduces it byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .homstruct import HomBialgebra, StructureError
from .quasitri import QTHomBialgebra
from .scalars import ScalarRing, array_from_json, array_to_json, ring_from_json, ring_to_json
from .tensor import LinearOperator, operator_from_json, operator_to_json


class StructureFileError(ValueError):
    """A structure or operator file could not be parsed; the message names the field."""


def _field(obj: dict, name: str, shape: tuple[int, ...], ring: ScalarRing) -> np.ndarray:
    if name not in obj:
        raise StructureFileError(f"missing field {name!r}")
    try:
        return array_from_json(obj[name], shape, ring, name)
    except ValueError as exc:
        raise StructureFileError(str(exc)) from None


def _load_json(text: str, source: str) -> object:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructureFileError(f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _ring(obj: dict, order: int | None, tolerance: float | None) -> ScalarRing:
    try:
        ring = ring_from_json(obj.get("ring"))
    except (TypeError, ValueError) as exc:
        raise StructureFileError(f"ring: {exc}") from None
    if tolerance is not None:
        ring = ScalarRing(ring.kind, tolerance, ring.order)
    if order is not None and ring.is_series:
        ring = ScalarRing(ring.kind, ring.tolerance, order)
    return ring


def _resize(obj, ring: ScalarRing, file_ring: ScalarRing):
    """Truncate or zero-pad series scalars when ``--order`` differs from the file."""
    if not ring.is_series or ring.ncoef == file_ring.ncoef:
        return obj
    if isinstance(obj, list) and obj and isinstance(obj[0], list) and obj[0] and not isinstance(obj[0][0], list):
        # a series scalar: list of [re, im] pairs
        pairs = obj[: ring.ncoef]
        return pairs + [[0.0, 0.0]] * (ring.ncoef - len(pairs))
    if isinstance(obj, list):
        return [_resize(sub, ring, file_ring) for sub in obj]
    return obj


def structure_from_dict(
    obj: object, *, order: int | None = None, tolerance: float | None = None
) -> HomBialgebra | QTHomBialgebra:
    if not isinstance(obj, dict):
        raise StructureFileError("top level must be a JSON object")
    ring = _ring(obj, order, tolerance)
    file_ring = _ring(obj, None, None)
    dim = obj.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise StructureFileError("dim: expected an integer")
    if dim < 1:
        raise StructureFileError("dim: must be >= 1 (empty structures are rejected)")
    fix = dict(obj)
    if ring.ncoef != file_ring.ncoef:
        fix = {k: (_resize(v, ring, file_ring) if k in ("mu", "delta", "alpha", "c", "R") else v) for k, v in obj.items()}
    mu = _field(fix, "mu", (dim, dim, dim), ring)
    delta = _field(fix, "delta", (dim, dim, dim), ring)
    alpha = _field(fix, "alpha", (dim, dim), ring)
    c = _field(fix, "c", (dim,), ring) if "c" in fix else None
    try:
        base = HomBialgebra(ring, mu, delta, alpha, c)
    except StructureError as exc:
        raise StructureFileError(str(exc)) from None
    if "R" in fix:
        return QTHomBialgebra(base, _field(fix, "R", (dim, dim), ring))
    return base


def structure_to_dict(s: HomBialgebra | QTHomBialgebra) -> dict:
    base = s.base if isinstance(s, QTHomBialgebra) else s
    ring = base.ring
    data = {
        "ring": ring_to_json(ring),
        "dim": base.dim,
        "mu": array_to_json(base.mu, ring),
        "delta": array_to_json(base.delta, ring),
        "alpha": array_to_json(base.alpha, ring),
    }
    if base.weak_unit is not None:
        data["c"] = array_to_json(base.weak_unit, ring)
    if isinstance(s, QTHomBialgebra):
        data["R"] = array_to_json(s.R, ring)
    return data


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def loads_structure(text: str, source: str = "<string>", **kwargs) -> HomBialgebra | QTHomBialgebra:
    return structure_from_dict(_load_json(text, source), **kwargs)


def read_structure(path: str | Path, **kwargs) -> HomBialgebra | QTHomBialgebra:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise StructureFileError(f"{path}: {exc.strerror}") from None
    try:
        return loads_structure(text, str(path), **kwargs)
    except StructureFileError as exc:
        msg = str(exc)
        raise StructureFileError(msg if msg.startswith(str(path)) else f"{path}: {msg}") from None


def dump_structure(s: HomBialgebra | QTHomBialgebra) -> str:
    return dumps(structure_to_dict(s))


def read_operator(path: str | Path) -> LinearOperator:
    path = Path(path)
    try:
        obj = _load_json(path.read_text(), str(path))
    except OSError as exc:
        raise StructureFileError(f"{path}: {exc.strerror}") from None
    if not isinstance(obj, dict):
        raise StructureFileError(f"{path}: top level must be a JSON object")
    try:
        return operator_from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureFileError(f"{path}: {exc}") from None


def dump_operator(op: LinearOperator, **extra) -> str:
    data = operator_to_json(op)
    data.update(extra)
    return dumps(data)


def read_matrix(path: str | Path, ring: ScalarRing, dim: int, name: str = "alpha") -> np.ndarray:
    """A ``dim x dim`` matrix from ``{"alpha": [...]}``, an operator file, or a bare nested list."""
    path = Path(path)
    try:
        obj = _load_json(path.read_text(), str(path))
    except OSError as exc:
        raise StructureFileError(f"{path}: {exc.strerror}") from None
    if isinstance(obj, dict):
        if name in obj:
            obj = obj[name]
        elif "matrix" in obj:
            obj = obj["matrix"]
        else:
            raise StructureFileError(f"{path}: expected a {name!r} or 'matrix' field")
    try:
        return array_from_json(obj, (dim, dim), ring, name)
    except ValueError as exc:
        raise StructureFileError(f"{path}: {exc}") from None


def read_table(path: str | Path, ring: ScalarRing, size: int) -> np.ndarray:
    """A ``size x size`` table of complex scalars (``[re, im]`` pairs or plain numbers)."""
    table = read_matrix(path, ScalarRing.complex(ring.tolerance), size, "R")
    return table[..., 0]


def same_structure(a, b) -> bool:
    return dump_structure(a) == dump_structure(b)

