"""Canonical on-disk format for measurement instances.

A single structured-text (JSON) schema with top-level keys:

  dim        system dimension (int)
  g_max      validated coupling range (0, g_max]
  outcomes   list (one entry per outcome) of coefficient records
             {"order": k, "matrix": rows of [re, im] pairs, row-major};
             all-zero coefficients may be omitted
  fmatrix    coefficient records of a raw (not necessarily complete) family,
             for instances that are a bare matrix family rather than a POVM
  observable Hermitian matrix, same [re, im] encoding          (optional)
  psi_i      preparation state, list of [re, im] pairs         (optional)
  psi_f      postselection state                               (optional)
  notes      free text                                         (optional)

Serialization is canonical: keys sorted, floats rendered with 17 significant
digits, one top-level key per line.  save -> load -> save is byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ParseError, ValidationError
from .povm import (
    COMPLETENESS_TOL,
    HERMITIAN_TOL,
    PSD_GRID_TOL,
    ParamPovm,
    PolyMatrix,
    validate,
)

_KNOWN_KEYS = {"dim", "g_max", "outcomes", "fmatrix", "observable", "psi_i", "psi_f", "notes"}


@dataclass
class InstanceSpec:
    """A named measurement instance: either a POVM or a raw matrix family."""

    name: str
    povm: ParamPovm | None = None
    fmatrix: PolyMatrix | None = None
    observable: np.ndarray | None = None
    psi_i: np.ndarray | None = None
    psi_f: np.ndarray | None = None
    notes: str = ""
    fmatrix_g_max: float = field(default=0.5, repr=False)

    def __post_init__(self):
        if self.povm is None and self.fmatrix is None:
            raise ValidationError("Schema", "instance needs outcomes or fmatrix")

    @property
    def dim(self) -> int:
        return self.povm.dim if self.povm is not None else self.fmatrix.shape[0]

    @property
    def g_max(self) -> float:
        if self.povm is not None:
            return self.povm.g_max
        return self.fmatrix_g_max


# ---------------------------------------------------------------- encoding


def _encode_matrix(M: np.ndarray) -> list:
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def _encode_vector(v: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex)]


def _encode_coefficients(poly: PolyMatrix) -> list:
    out = []
    for k, c in enumerate(poly.coefficients):
        if np.abs(c).max() == 0.0 and poly.max_degree > 0:
            continue  # zero coefficients are implicit in the sparse encoding
        out.append({"order": k, "matrix": _encode_matrix(c)})
    return out


def instance_to_dict(spec: InstanceSpec) -> dict:
    d: dict = {"dim": spec.dim, "g_max": float(spec.g_max)}
    if spec.povm is not None:
        d["outcomes"] = [_encode_coefficients(e) for e in spec.povm.elements]
    if spec.fmatrix is not None:
        d["fmatrix"] = _encode_coefficients(spec.fmatrix)
    if spec.observable is not None:
        d["observable"] = _encode_matrix(spec.observable)
    if spec.psi_i is not None:
        d["psi_i"] = _encode_vector(spec.psi_i)
    if spec.psi_f is not None:
        d["psi_f"] = _encode_vector(spec.psi_f)
    if spec.notes:
        d["notes"] = spec.notes
    return d


def _render(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        # v + 0.0 squashes -0.0, which would not survive a decode cycle
        return f"{v + 0.0:.17g}"
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, dict):
        inner = ", ".join(f"{json.dumps(k)}: {_render(v[k])}" for k in sorted(v))
        return "{" + inner + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_render(x) for x in v) + "]"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def canonical_json(d: dict) -> str:
    """Deterministic rendering: sorted keys, one top-level key per line."""
    lines = [f"  {json.dumps(k)}: {_render(d[k])}" for k in sorted(d)]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def save_instance(spec: InstanceSpec, path) -> None:
    Path(path).write_text(canonical_json(instance_to_dict(spec)))


# ---------------------------------------------------------------- decoding


def _require(cond: bool, code: str, message: str, context: str | None = None):
    if not cond:
        raise ValidationError(code, message, context)


def _decode_complex_pair(entry, context: str) -> complex:
    _require(
        isinstance(entry, (list, tuple)) and len(entry) == 2
        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry),
        "Schema",
        "expected a [re, im] number pair",
        context,
    )
    return complex(float(entry[0]), float(entry[1]))


def _decode_matrix(data, rows: int, cols: int, context: str) -> np.ndarray:
    _require(isinstance(data, list) and len(data) == rows, "BadShape",
             f"expected {rows} rows", context)
    M = np.empty((rows, cols), dtype=complex)
    for i, row in enumerate(data):
        _require(isinstance(row, list) and len(row) == cols, "BadShape",
                 f"expected {cols} entries in row {i}", context)
        for j, entry in enumerate(row):
            M[i, j] = _decode_complex_pair(entry, f"{context}[{i}][{j}]")
    _require(bool(np.all(np.isfinite(M))), "BadValue", "non-finite entry", context)
    return M


def _decode_coefficients(data, rows: int, cols: int, context: str) -> PolyMatrix:
    _require(isinstance(data, list) and len(data) >= 1, "Schema",
             "expected a nonempty list of coefficient records", context)
    seen: dict[int, np.ndarray] = {}
    for idx, rec in enumerate(data):
        ctx = f"{context}[{idx}]"
        _require(isinstance(rec, dict) and set(rec) == {"order", "matrix"}, "Schema",
                 'expected {"order", "matrix"}', ctx)
        k = rec["order"]
        _require(isinstance(k, int) and not isinstance(k, bool) and k >= 0,
                 "Schema", "order must be a nonnegative integer", ctx)
        _require(k not in seen, "Schema", f"duplicate order {k}", ctx)
        seen[k] = _decode_matrix(rec["matrix"], rows, cols, f"{ctx}.matrix")
    degree = max(seen)
    coeffs = [seen.get(k, np.zeros((rows, cols), dtype=complex)) for k in range(degree + 1)]
    return PolyMatrix(coeffs)


def _decode_state(data, dim: int, context: str) -> np.ndarray:
    _require(isinstance(data, list) and len(data) == dim, "BadShape",
             f"expected {dim} entries", context)
    v = np.array([_decode_complex_pair(e, f"{context}[{i}]") for i, e in enumerate(data)])
    n = float(np.linalg.norm(v))
    _require(abs(n - 1.0) <= 1e-10, "BadState", f"state norm {n!r} is not 1", context)
    return v


def dict_to_instance(d: dict, name: str) -> InstanceSpec:
    _require(isinstance(d, dict), "Schema", "top level must be an object", "$")
    unknown = set(d) - _KNOWN_KEYS
    _require(not unknown, "Schema", f"unknown keys {sorted(unknown)}", "$")
    _require("dim" in d and "g_max" in d, "Schema", "dim and g_max are required", "$")
    dim = d["dim"]
    _require(isinstance(dim, int) and not isinstance(dim, bool) and dim >= 1,
             "Schema", "dim must be a positive integer", "dim")
    g_max = d["g_max"]
    _require(isinstance(g_max, (int, float)) and not isinstance(g_max, bool)
             and float(g_max) > 0, "Schema", "g_max must be positive", "g_max")
    g_max = float(g_max)
    _require("outcomes" in d or "fmatrix" in d, "Schema",
             "need outcomes or fmatrix", "$")

    povm = None
    if "outcomes" in d:
        data = d["outcomes"]
        _require(isinstance(data, list) and len(data) >= 1, "Schema",
                 "outcomes must be a nonempty list", "outcomes")
        elements = tuple(
            _decode_coefficients(entry, dim, dim, f"outcomes[{j}]")
            for j, entry in enumerate(data)
        )
        povm = ParamPovm(elements=elements, g_max=g_max)
        report = validate(povm)
        if report.hermiticity_residual > HERMITIAN_TOL:
            raise ValidationError(
                "NotHermitian",
                f"coefficient Hermiticity residual {report.hermiticity_residual:.3e}",
                "outcomes",
            )
        comp = float(report.completeness_residuals.max())
        if comp > COMPLETENESS_TOL:
            raise ValidationError(
                "Completeness",
                f"coefficient-wise completeness residual {comp:.3e}",
                "outcomes",
            )
        worst = float(report.min_eigenvalues.min())
        if worst < PSD_GRID_TOL:
            raise ValidationError(
                "NotPositive",
                f"minimum eigenvalue {worst:.3e} on the validation grid",
                "outcomes",
            )

    fmatrix = None
    if "fmatrix" in d:
        # raw family: row count = dim, column count read from the data
        data = d["fmatrix"]
        _require(isinstance(data, list) and data, "Schema",
                 "fmatrix must be a nonempty list", "fmatrix")
        first = data[0]
        _require(isinstance(first, dict) and "matrix" in first
                 and isinstance(first["matrix"], list) and first["matrix"]
                 and isinstance(first["matrix"][0], list),
                 "Schema", "malformed coefficient record", "fmatrix[0]")
        cols = len(first["matrix"][0])
        fmatrix = _decode_coefficients(data, dim, cols, "fmatrix")

    observable = None
    if "observable" in d:
        observable = _decode_matrix(d["observable"], dim, dim, "observable")
        res = float(np.abs(observable - observable.conj().T).max())
        _require(res <= HERMITIAN_TOL, "NotHermitian",
                 f"observable Hermiticity residual {res:.3e}", "observable")

    psi_i = _decode_state(d["psi_i"], dim, "psi_i") if "psi_i" in d else None
    psi_f = _decode_state(d["psi_f"], dim, "psi_f") if "psi_f" in d else None
    notes = d.get("notes", "")
    _require(isinstance(notes, str), "Schema", "notes must be a string", "notes")

    return InstanceSpec(
        name=name,
        povm=povm,
        fmatrix=fmatrix,
        observable=observable,
        psi_i=psi_i,
        psi_f=psi_f,
        notes=notes,
        fmatrix_g_max=g_max,
    )


def load_instance(path) -> InstanceSpec:
    """Parse and semantically validate an instance file.

    Syntax errors raise ParseError with file, line and column; semantic
    violations raise ValidationError with a reason code and the JSON path of
    the offending entry.
    """
    path = Path(path)
    try:
        raw = path.read_text()
    except OSError as e:
        raise ParseError(f"{path}: {e}") from e
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
    return dict_to_instance(data, name=path.stem)
