#
#  MIT License
#
#  (C) Copyright 2026 Hewlett Packard Enterprise Development LP
#
#  Permission is hereby granted, free of charge, to any person obtaining a
#  copy of this software and associated documentation files (the "Software"),
#  to deal in the Software without restriction, including without limitation
#  the rights to use, copy, modify, merge, publish, distribute, sublicense,
#  and/or sell copies of the Software, and to permit persons to whom the
#  Software is furnished to do so, subject to the following conditions:
#
#  The above copyright notice and this permission notice shall be included
#  in all copies or substantial portions of the Software.
#
#  THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
#  IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
#  FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL
#  THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR
#  OTHER LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE,
#  ARISING FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR
#  OTHER DEALINGS IN THE SOFTWARE.
#

"""JSON matrix, map and instance files, report writing and digests"""

import enum
import hashlib
import json
import logging
import math
import re

import numpy as np

import lib.errors as errors
import lib.forge as forge
import lib.maps as maps

from lib.forge import SumRelation
from lib.hermitian import HermitianMatrix


def sha224_hexdigest(message: str) -> str:

    """Return a SHA224 as a hexidecimal string"""

    return hashlib.sha224(bytes(message.encode('utf-8'))).hexdigest()


def json_handler(x):

    """json default= hook for numpy values, enums and tuples of them"""

    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, enum.Enum):
        return x.value
    raise TypeError(f"Unknown type: {type(x)}")


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=json_handler)


def digest(obj) -> str:
    return sha224_hexdigest(canonical(obj))


def _real_rows(a: np.ndarray) -> list:
    return [[float(v) for v in row] for row in a]


def _array_to_json(a: np.ndarray) -> dict:
    obj = {"rows": a.shape[0], "cols": a.shape[1], "re": _real_rows(a.real)}
    if np.any(a.imag):
        obj["im"] = _real_rows(a.imag)
    return obj


def _array_from_json(obj, what: str, rows: int = None, cols: int = None) -> np.ndarray:

    if not isinstance(obj, dict) or "re" not in obj:
        raise errors.InstanceFormatError(f"{what}: expected an object with 're'")
    try:
        re = np.array(obj["re"], dtype=float)
        im = np.array(obj["im"], dtype=float) if "im" in obj else np.zeros_like(re)
    except (TypeError, ValueError) as err:
        raise errors.InstanceFormatError(f"{what}: entries must be real numbers ({err})")
    if re.ndim != 2 or re.shape != im.shape:
        raise errors.InstanceFormatError(f"{what}: 're' and 'im' must be matrices of one shape")
    if rows is not None and re.shape[0] != rows or cols is not None and re.shape[1] != cols:
        raise errors.InstanceFormatError(f"{what}: shape {re.shape} does not match ({rows}, {cols})")
    return re + 1j * im


def matrix_to_json(A: HermitianMatrix) -> dict:

    """{"dim": n, "re": rows, "im": rows}; "im" is left out for real matrices"""

    obj = {"dim": A.dim, "re": _real_rows(A.entries.real)}
    if not A.is_real():
        obj["im"] = _real_rows(A.entries.imag)
    return obj


def matrix_from_json(obj, what: str = "matrix") -> HermitianMatrix:
    dim = obj.get("dim") if isinstance(obj, dict) else None
    if not isinstance(dim, int) or dim < 1:
        raise errors.InstanceFormatError(f"{what}: 'dim' must be a positive integer")
    return HermitianMatrix(_array_from_json(obj, what, dim, dim))


def map_to_json(phi) -> dict:

    if isinstance(phi, maps.ScaledMap):
        return {"weight": phi.weight, "map": map_to_json(phi.inner)}
    if isinstance(phi, maps.IdentityMap):
        return {"kind": "identity", "dim": phi.dim}
    if isinstance(phi, maps.PinchingMap):
        return {"kind": "pinching", "blocks": [list(block) for block in phi.blocks]}
    if isinstance(phi, maps.CompressionMap):
        return {"kind": "compression", "V": _array_to_json(phi.V)}
    if isinstance(phi, maps.MixedUnitaryMap):
        return {"kind": "mixed", "weights": list(phi.weights),
                "unitaries": [_array_to_json(u) for u in phi.unitaries]}
    raise errors.UnknownKind(f"cannot serialize {type(phi).__name__}")


def map_from_json(obj, dim: int, seed: int = 0, what: str = "map"):

    """Map object or spec string; spec strings are sampled with seed"""

    if isinstance(obj, str):
        return maps.parse_map(obj, dim, seed)
    if not isinstance(obj, dict):
        raise errors.InstanceFormatError(f"{what}: expected a spec string or an object")

    if "weight" in obj:
        return maps.ScaledMap(float(obj["weight"]), map_from_json(obj.get("map"), dim, seed, what))

    kind = obj.get("kind")
    if kind == "identity":
        return maps.IdentityMap(int(obj.get("dim", dim)))
    if kind == "pinching":
        return maps.PinchingMap(tuple(tuple(int(i) for i in block) for block in obj.get("blocks", ())))
    if kind == "compression":
        return maps.CompressionMap(_array_from_json(obj.get("V"), f"{what}.V", rows=dim))
    if kind == "mixed":
        unitaries = tuple(_array_from_json(u, f"{what}.unitaries", dim, dim) for u in obj.get("unitaries", ()))
        weights = tuple(float(w) for w in obj.get("weights", ()))
        if not unitaries or len(weights) != len(unitaries):
            raise errors.InstanceFormatError(f"{what}: mixed map needs matching weights and unitaries")
        return maps.MixedUnitaryMap(weights, unitaries)
    raise errors.InstanceFormatError(f"{what}: unknown map kind {kind!r}")


def family_to_json(family: maps.MapFamily) -> list:
    return [map_to_json(phi) if isinstance(phi, maps.ScaledMap) else {"weight": 1.0, "map": map_to_json(phi)}
            for phi in family.maps]


def family_from_json(obj, dim: int, seed: int = 0) -> maps.MapFamily:

    if isinstance(obj, str):
        family = maps.parse_map(obj, dim, seed)
        if not isinstance(family, maps.MapFamily):
            raise errors.InstanceFormatError(f"'family' must be a family:n=<int> spec, got {obj!r}")
        return family
    if not isinstance(obj, list) or not obj:
        raise errors.InstanceFormatError("'family' must be a non-empty list or a family spec")
    members = []
    for i, item in enumerate(obj):
        if not isinstance(item, dict) or "weight" not in item or "map" not in item:
            raise errors.InstanceFormatError(f"family[{i}] needs 'weight' and 'map'")
        members.append(map_from_json(item, dim, seed + i, f"family[{i}]"))
    return maps.MapFamily(tuple(members))


def _quadruple_to_json(q: forge.QuadrupleInstance) -> dict:
    obj = {name: matrix_to_json(getattr(q, name)) for name in ("A", "B", "C", "D")}
    obj["relation"] = q.relation.value
    if q.require_nonnegative_A:
        obj["require_nonnegative_A"] = True
    return obj


def instance_to_json(inst) -> dict:

    if isinstance(inst, forge.QuadrupleInstance):
        obj = _quadruple_to_json(inst)
        obj["kind"] = "quadruple"
    elif isinstance(inst, forge.MidpointInstance):
        obj = {"kind": "midpoint", "A": matrix_to_json(inst.A), "D": matrix_to_json(inst.D)}
    elif isinstance(inst, forge.MercerInstance):
        obj = {"kind": "mercer", "B_list": [matrix_to_json(B) for B in inst.B_list],
               "family": family_to_json(inst.family)}
    elif isinstance(inst, forge.MultiQuadrupleInstance):
        obj = {"kind": "multi", "quadruples": [_quadruple_to_json(q) for q in inst.quadruples],
               "family": family_to_json(inst.family)}
    else:
        raise errors.InstanceFormatError(f"not an instance: {type(inst).__name__}")
    obj["m"], obj["M"] = inst.m, inst.M
    return obj


def _real(obj: dict, key: str) -> float:
    value = obj.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise errors.InstanceFormatError(f"'{key}' must be a finite real")
    return float(value)


def _quadruple_from_json(obj: dict, m: float, M: float, what: str) -> forge.QuadrupleInstance:
    matrices = []
    for name in ("A", "B", "C", "D"):
        if name not in obj:
            raise errors.InstanceFormatError(f"{what}: missing '{name}'")
        matrices.append(matrix_from_json(obj[name], f"{what}.{name}"))
    try:
        relation = SumRelation(obj.get("relation", "EqualSum"))
    except ValueError:
        raise errors.InstanceFormatError(f"{what}: unknown relation {obj.get('relation')!r}")
    return forge.QuadrupleInstance(*matrices, m, M, relation, bool(obj.get("require_nonnegative_A", False)))


def _infer_kind(obj: dict) -> str:
    if "kind" in obj:
        return obj["kind"]
    if "quadruples" in obj:
        return "multi"
    if "B_list" in obj:
        return "mercer"
    if "B" in obj:
        return "quadruple"
    return "midpoint"


def instance_from_json(obj):

    """Parse an instance object; "kind" is inferred from the keys when absent"""

    if not isinstance(obj, dict):
        raise errors.InstanceFormatError("instance must be a JSON object")
    m, M = _real(obj, "m"), _real(obj, "M")
    seed = int(obj.get("seed", 0))
    kind = _infer_kind(obj)

    if kind == "quadruple":
        return _quadruple_from_json(obj, m, M, "instance")
    if kind == "midpoint":
        if "A" not in obj or "D" not in obj:
            raise errors.InstanceFormatError("midpoint instance needs 'A' and 'D'")
        return forge.MidpointInstance(matrix_from_json(obj["A"], "A"), matrix_from_json(obj["D"], "D"), m, M)
    if kind == "mercer":
        B_list = obj.get("B_list")
        if not isinstance(B_list, list) or not B_list:
            raise errors.InstanceFormatError("'B_list' must be a non-empty list")
        B_list = tuple(matrix_from_json(B, f"B_list[{i}]") for i, B in enumerate(B_list))
        return forge.MercerInstance(B_list, m, M, family_from_json(obj.get("family"), B_list[0].dim, seed))
    if kind == "multi":
        items = obj.get("quadruples")
        if not isinstance(items, list) or not items:
            raise errors.InstanceFormatError("'quadruples' must be a non-empty list")
        quadruples = tuple(_quadruple_from_json(q, m, M, f"quadruples[{i}]") for i, q in enumerate(items))
        return forge.MultiQuadrupleInstance(quadruples, family_from_json(obj.get("family"), quadruples[0].dim, seed))

    raise errors.InstanceFormatError(f"unknown instance kind {kind!r}")


def instance_digest(inst) -> str:
    return digest(instance_to_json(inst))


def read_json(path: str):
    with open(path, 'r') as f:
        return json.load(f)


def read_instance(path: str) -> tuple:

    """(instance, map or None) from an instance file; "map" is optional"""

    try:
        obj = read_json(path)
    except json.JSONDecodeError as err:
        raise errors.InstanceFormatError(f"{path} is not valid JSON ({err})")
    instance = instance_from_json(obj)
    phi = None
    if "map" in obj:
        phi = map_from_json(obj["map"], instance.dim, int(obj.get("seed", 0)))
    return instance, phi


def write_instance(path: str, inst, phi=None):
    obj = instance_to_json(inst)
    if phi is not None:
        obj["map"] = map_to_json(phi)
    write_json(path, obj)


_FLOAT_MARK = "__float17__:"


def _pin_floats(x):

    """Replace finite floats with marked 17-significant-digit text"""

    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return x
        text = f"{x:.17g}"
        if not any(c in text for c in ".e"):
            text += ".0"
        return _FLOAT_MARK + text
    if isinstance(x, dict):
        return {k: _pin_floats(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_pin_floats(v) for v in x]
    if isinstance(x, np.ndarray):
        return _pin_floats(x.tolist())
    return x


def dumps(obj) -> str:

    """Stable text: sorted keys, floats with 17 significant digits"""

    text = json.dumps(_pin_floats(obj), sort_keys=True, indent=2, default=json_handler)
    return re.sub(f'"{_FLOAT_MARK}([^"]+)"', r"\1", text) + "\n"


def write_json(path: str, obj):
    text = dumps(obj)
    with open(path, 'w') as f:
        f.write(text)
    logging.debug(f"wrote {len(text)} bytes to {path}")
