"""Scheme descriptors and the JSON form of built schemes.

A descriptor names the field, thresholds and either evaluation points
(``"construction": "grs"``) or explicit generator matrices
(``"construction": "explicit"``)::

    {"q": 5, "t": 2, "d": 3, "z": 1, "construction": "grs"}

Matrices are objects ``{"rows": r, "cols": c, "data": [[...], ...]}`` keyed by
``b0, b1, b2, a1, a2, e``.
"""

from __future__ import annotations

import hashlib
import json
from collections.abc import Mapping

import numpy as np

from .codes import LinearCode
from .errors import ConditionError, DomainError
from .gf import FieldSpec
from .linalg import FqMatrix
from .scheme import CODE_NAMES, CeQssScheme, bounds_report, build, grs_codes

KINDS = ("grs", "explicit")


def dumps(obj) -> str:
    """Deterministic UTF-8-safe JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def descriptor_hash(desc: Mapping) -> str:
    canon = json.dumps(desc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def matrix_to_dict(M: FqMatrix) -> dict:
    return {"rows": M.rows, "cols": M.cols, "data": M.tolist()}


def matrix_from_dict(obj: Mapping, field: FieldSpec) -> FqMatrix:
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError):
        raise DomainError("matrix objects need integer 'rows', 'cols' and a 'data' array") from None
    arr = np.array(data, dtype=np.int64) if rows else np.zeros((0, cols), dtype=np.int64)
    if arr.shape != (rows, cols):
        raise DomainError(f"matrix data has shape {arr.shape}, declared ({rows}, {cols})")
    return FqMatrix(arr, field, cols=cols)


def _int(desc: Mapping, key: str) -> int:
    v = desc.get(key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise DomainError(f"descriptor field {key!r} must be an integer")
    return v


def _field(q: int) -> FieldSpec:
    try:
        return FieldSpec(q)
    except DomainError as exc:
        raise ConditionError("field", str(exc)) from None


def _lower_keys(mats: Mapping) -> dict:
    if not isinstance(mats, Mapping):
        raise DomainError("'matrices' must be an object")
    return {str(k).lower(): v for k, v in mats.items()}


def validate_descriptor(desc) -> dict:
    """Check shape and types; returns a normalized copy."""
    if not isinstance(desc, Mapping):
        raise DomainError("descriptor must be a JSON object")
    out = dict(desc)
    kind = out.setdefault("construction", "grs")
    if kind not in KINDS:
        raise DomainError(f"construction must be one of {KINDS}")
    for key in ("q", "t", "d", "z"):
        _int(out, key)
    if "n" in out:
        _int(out, "n")
    if kind == "grs":
        if out.get("matrices"):
            raise DomainError("a grs descriptor takes points, not matrices")
        pts = out.get("points")
        if pts is not None and (not isinstance(pts, list) or not all(isinstance(x, int) for x in pts)):
            raise DomainError("'points' must be a list of integers")
    else:
        if out.get("points"):
            raise DomainError("an explicit descriptor takes matrices, not points")
        mats = _lower_keys(out.get("matrices") or {})
        missing = [c.lower() for c in CODE_NAMES if c.lower() not in mats]
        if missing:
            raise DomainError(f"explicit descriptor is missing matrices {missing}")
        out["matrices"] = mats
    return out


def codes_from_descriptor(desc: Mapping) -> tuple[FieldSpec, dict[str, LinearCode]]:
    d = validate_descriptor(desc)
    q, t, dd, z = d["q"], d["t"], d["d"], d["z"]
    if d["construction"] == "grs":
        return grs_codes(q, t, dd, z, d.get("n"), d.get("points"))
    field = _field(q)
    codes = {}
    for name in CODE_NAMES:
        M = matrix_from_dict(d["matrices"][name.lower()], field)
        codes[name] = LinearCode(M)
    n = codes["B0"].n
    if "n" in d and d["n"] != n:
        raise DomainError(f"descriptor n={d['n']} does not match matrix width {n}")
    return field, codes


def thresholds(desc: Mapping) -> tuple[int, int, int]:
    return desc["t"], desc["d"], desc["z"]


def scheme_from_descriptor(desc: Mapping, method: str = "auto") -> CeQssScheme:
    field, codes = codes_from_descriptor(desc)
    t, d, z = thresholds(desc)
    return build(field, codes, t, d, z, method)


def scheme_to_dict(scheme: CeQssScheme, source_hash: str | None = None) -> dict:
    dm = scheme.dims
    out = {
        "q": scheme.field.q,
        "n": scheme.n,
        "t": scheme.t,
        "d": scheme.d,
        "z": scheme.z,
        "dims": {k: getattr(dm, k) for k in ("b0", "b1", "b2", "a1", "a2", "e")},
        "v1": scheme.v1,
        "v2": scheme.v2,
        "costs": {
            "m": scheme.m,
            "w": scheme.w,
            "storage": scheme.storage,
            "cc_t": scheme.cc_t,
            "cc_d": scheme.cc_d,
        },
        "weights": dict(scheme.weights),
        "bounds": bounds_report(scheme).to_dict(),
        "matrices": {name.lower(): matrix_to_dict(scheme.codes[name].gen) for name in CODE_NAMES},
        "generator_stack": matrix_to_dict(scheme.gen_stack),
        "layout": scheme.layout.to_dict(),
    }
    if source_hash is not None:
        out["descriptor_sha256"] = source_hash
    return out


def scheme_from_dict(obj: Mapping, method: str = "auto") -> CeQssScheme:
    """Rebuild a scheme from :func:`scheme_to_dict` output and check the stored stack."""
    desc = {
        "q": obj["q"],
        "t": obj["t"],
        "d": obj["d"],
        "z": obj["z"],
        "construction": "explicit",
        "matrices": obj["matrices"],
    }
    scheme = scheme_from_descriptor(desc, method)
    stored = matrix_from_dict(obj["generator_stack"], scheme.field)
    if stored != scheme.gen_stack:
        raise DomainError("stored generator stack does not match the codes")
    return scheme
