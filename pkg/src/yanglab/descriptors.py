"""JSON module descriptors.

    {"type": "wm", "m": 2, "a": "3/2"}
    {"type": "dense", "mu": "1", "tau": "9", "b_mu": "0"}
    {"type": "tensor", "left": {...}, "right": {...}}
"""
from __future__ import annotations

import json

from .dense import DenseModule
from .engine import ModuleSpec
from .findim import WmModule
from .scalar_field import parse_scalar, to_rational
from .tensor import TensorModule


class DescriptorError(ValueError):
    pass


def _scalar(obj, name):
    if isinstance(obj, bool) or not isinstance(obj, (str, int)):
        raise DescriptorError(f"{name} must be a scalar string or an integer")
    return parse_scalar(obj) if isinstance(obj, str) else parse_scalar(str(obj))


def _keys(obj: dict, required: set) -> None:
    missing = required - obj.keys()
    extra = obj.keys() - required - {"type"}
    if missing:
        raise DescriptorError(f"missing field(s): {', '.join(sorted(missing))}")
    if extra:
        raise DescriptorError(f"unknown field(s): {', '.join(sorted(extra))}")


def module_from_json(obj) -> ModuleSpec:
    if not isinstance(obj, dict) or "type" not in obj:
        raise DescriptorError("a module descriptor is an object with a 'type' field")
    kind = obj["type"]
    if kind == "wm":
        _keys(obj, {"m", "a"})
        m = obj["m"]
        if isinstance(m, bool) or not isinstance(m, int) or m < 1:
            raise DescriptorError("m must be a positive integer")
        return WmModule(m, _scalar(obj["a"], "a"))
    if kind == "dense":
        _keys(obj, {"mu", "tau", "b_mu"})
        return DenseModule(to_rational(_scalar(obj["mu"], "mu")),
                           to_rational(_scalar(obj["tau"], "tau")),
                           _scalar(obj["b_mu"], "b_mu"))
    if kind == "tensor":
        _keys(obj, {"left", "right"})
        return TensorModule(module_from_json(obj["left"]), module_from_json(obj["right"]))
    raise DescriptorError(f"unknown module type {kind!r}")


def parse_module(text: str) -> ModuleSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"descriptor is not valid JSON: {exc}") from None
    return module_from_json(obj)
