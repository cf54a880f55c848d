"""Curve description files and builtin addresses.

A curve spec is a JSON document of one of three shapes:

    {"type": "builtin", "name": "clam_shell", "params": {"epsilon": 0.6}}
    {"type": "fourier", "period": 6.2831853, "coeffs": {"x1": {"a0": 0.0,
        "cos": [1.0], "sin": []}, "x2": {...}, "x3": {...}}}
    {"type": "spline", "points": [[t, x1, x2, x3], ...], "period": 6.28}

Builtin curves can also be addressed inline as
``builtin:NAME?key=value,key=value``.
"""
from __future__ import annotations

import json
from pathlib import Path

from .curves import ClosedCurve
from .errors import BadParameter
from .gallery import FAMILIES

_INT_PARAMS = {"k", "index"}
_PARAM_ALIASES = {"i": "index", "I": "index", "r": "radius"}


def _coerce_params(raw: dict) -> dict:
    params = {}
    for key, value in raw.items():
        name = _PARAM_ALIASES.get(key, key)
        if name in _INT_PARAMS:
            try:
                params[name] = int(value)
            except (TypeError, ValueError):
                raise BadParameter(f"parameter {name} must be an integer, got {value!r}")
        else:
            try:
                params[name] = float(value)
            except (TypeError, ValueError):
                raise BadParameter(f"parameter {name} must be a number, got {value!r}")
    return params


def build_family(name: str, params: dict):
    if name not in FAMILIES:
        raise BadParameter(
            f"unknown builtin family {name!r}; available: {sorted(FAMILIES)}")
    try:
        return FAMILIES[name](**_coerce_params(params))
    except TypeError as exc:
        raise BadParameter(f"bad parameters for {name}: {exc}") from exc


def parse_builtin_address(address: str):
    """Parse ``builtin:NAME?k=v,...`` into a curve."""
    body = address.split(":", 1)[1]
    if "?" in body:
        name, query = body.split("?", 1)
    else:
        name, query = body, ""
    raw = {}
    if query:
        for item in query.split(","):
            if "=" not in item:
                raise BadParameter(f"expected key=value, got {item!r}")
            key, value = item.split("=", 1)
            raw[key.strip()] = value.strip()
    return build_family(name.strip(), raw)


def curve_from_spec(spec: dict):
    if not isinstance(spec, dict) or "type" not in spec:
        raise BadParameter("curve spec must be an object with a 'type' field")
    kind = spec["type"]
    if kind == "builtin":
        if "name" not in spec:
            raise BadParameter("builtin spec needs a 'name'")
        return build_family(spec["name"], spec.get("params", {}) or {})
    if kind == "fourier":
        if "period" not in spec or "coeffs" not in spec:
            raise BadParameter("fourier spec needs 'period' and 'coeffs'")
        coeffs = spec["coeffs"]
        if not isinstance(coeffs, dict):
            raise BadParameter("'coeffs' must map coordinates to coefficient lists")
        return ClosedCurve.from_fourier(spec["period"], coeffs, name="fourier")
    if kind == "spline":
        if "points" not in spec:
            raise BadParameter("spline spec needs 'points'")
        return ClosedCurve.from_spline(spec["points"], period=spec.get("period"),
                                       name="spline")
    raise BadParameter(f"unknown curve spec type {kind!r}")


def load_curve(source: str):
    """Load a curve from a builtin address or a JSON spec file path."""
    if source.startswith("builtin:"):
        return parse_builtin_address(source)
    path = Path(source)
    if not path.exists():
        raise BadParameter(f"curve spec file not found: {source}")
    try:
        spec = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise BadParameter(f"curve spec is not valid JSON: {exc}") from exc
    return curve_from_spec(spec)
