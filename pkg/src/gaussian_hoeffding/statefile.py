"""JSON state files.

Two layouts are accepted::

    {"class": "thermal", "nu": 3}
    {"class": "coherent", "re": 0.5, "im": -1}
    {"class": "epr", "mu": 2}
    {"class": "st", "mu": 3, "c": 2}
    {"mean": [0, 0], "cov": [[1, 0], [0, 1]]}

Covariances use the vacuum-is-identity convention and a coherent amplitude
``alpha`` has quadrature mean ``(2 Re alpha, 2 Im alpha)``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .catalog import EPR, Coherent, Raw, SqueezedThermal, StateSpec, Thermal
from .errors import InvalidSpec


class StateFileError(InvalidSpec):
    """Malformed state file; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


# class name -> (spec type, required params, optional params with defaults)
_FAMILIES = {
    "thermal": (Thermal, ("nu",), {}),
    "coherent": (Coherent, (), {"re": 0.0, "im": 0.0}),
    "epr": (EPR, ("mu",), {}),
    "st": (SqueezedThermal, ("mu", "c"), {}),
}


def _reject_constant(name: str):
    raise StateFileError("<json>", f"{name} is not allowed (numbers must be finite)")


def _real(field: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise StateFileError(field, f"expected a number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        raise StateFileError(field, "must be finite")
    return x


def spec_from_dict(doc: Any) -> StateSpec:
    """Turn a decoded JSON document into a :data:`StateSpec`."""
    if not isinstance(doc, dict):
        raise StateFileError("<root>", "expected a JSON object")
    if "class" in doc:
        name = doc["class"]
        if name not in _FAMILIES:
            raise StateFileError("class", f"unknown state class {name!r} (expected one of {sorted(_FAMILIES)})")
        kind, required, optional = _FAMILIES[name]
        allowed = {"class", *required, *optional}
        for key in doc:
            if key not in allowed:
                raise StateFileError(key, f"unexpected field for class {name!r}")
        params = {}
        for key in required:
            if key not in doc:
                raise StateFileError(key, f"missing for class {name!r}")
            params[key] = _real(key, doc[key])
        for key, default in optional.items():
            params[key] = _real(key, doc.get(key, default))
        return kind(**params)

    for key in ("mean", "cov"):
        if key not in doc:
            raise StateFileError(key, "missing (give either 'class' or both 'mean' and 'cov')")
    for key in doc:
        if key not in ("mean", "cov"):
            raise StateFileError(key, "unexpected field")
    mean, cov = doc["mean"], doc["cov"]
    if not isinstance(mean, list) or not mean:
        raise StateFileError("mean", "expected a non-empty list of numbers")
    if not isinstance(cov, list) or not cov or not all(isinstance(row, list) for row in cov):
        raise StateFileError("cov", "expected a list of rows")
    if len({len(row) for row in cov}) != 1:
        raise StateFileError("cov", "rows have different lengths")
    m = np.array([_real(f"mean[{i}]", v) for i, v in enumerate(mean)])
    V = np.array([[_real(f"cov[{i}][{j}]", v) for j, v in enumerate(row)] for i, row in enumerate(cov)])
    if V.shape[0] != V.shape[1] or V.shape[0] % 2:
        raise StateFileError("cov", f"expected a 2n x 2n matrix, got {V.shape[0]} x {V.shape[1]}")
    if m.shape[0] != V.shape[0]:
        raise StateFileError("mean", f"length {m.shape[0]} does not match cov size {V.shape[0]}")
    return Raw(mean=m, cov=V)


def loads(text: str) -> StateSpec:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise StateFileError("<json>", str(exc)) from exc
    return spec_from_dict(doc)


def load(path: str | Path) -> StateSpec:
    return loads(Path(path).read_text(encoding="utf-8"))


def spec_to_dict(spec: StateSpec) -> dict:
    if isinstance(spec, Thermal):
        return {"class": "thermal", "nu": float(spec.nu)}
    if isinstance(spec, Coherent):
        return {"class": "coherent", "re": float(spec.re), "im": float(spec.im)}
    if isinstance(spec, EPR):
        return {"class": "epr", "mu": float(spec.mu)}
    if isinstance(spec, SqueezedThermal):
        return {"class": "st", "mu": float(spec.mu), "c": float(spec.c)}
    if isinstance(spec, Raw):
        return {
            "mean": [float(v) for v in np.asarray(spec.mean).ravel()],
            "cov": [[float(v) for v in row] for row in np.asarray(spec.cov)],
        }
    raise InvalidSpec(f"cannot serialise {spec!r}")


def dumps(spec: StateSpec) -> str:
    # json writes floats with repr, which round-trips bit for bit
    return json.dumps(spec_to_dict(spec), allow_nan=False)


def dump(spec: StateSpec, path: str | Path) -> None:
    Path(path).write_text(dumps(spec) + "\n", encoding="utf-8")
