"""JSON and JSON-lines encodings for parameters, reports and decompositions.

Floats are written with 17 significant digits so every value round-trips
exactly.

Parameter schema (3x3)::

    {"lambda": [l0, l1, l2], "X": [[re, im] x3], "Xp": [...], "Xpp": [...]}

General odd ``d``::

    {"d": d, "lambda": [d reals], "amps": [d lists of d [re, im] pairs]}

Corpus files are JSON-lines whose first line is a header object carrying
``seed``, ``mode`` and ``version``.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .states import GeneralShiftParams, InvalidParamsError, ShiftStateParams

__all__ = [
    "FORMAT_VERSION",
    "ParamsFormatError",
    "dumps",
    "format_float",
    "params_to_dict",
    "params_from_dict",
    "parse_instances",
    "corpus_lines",
]

FORMAT_VERSION = 1
TRIPLE_KEYS = ("X", "Xp", "Xpp")


class ParamsFormatError(ValueError):
    """Malformed parameter input; ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def format_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps(obj: Any) -> str:
    """Compact JSON with 17-significant-digit floats."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _pairs(values) -> list[list[float]]:
    return [[float(complex(z).real), float(complex(z).imag)] for z in values]


def params_to_dict(params: ShiftStateParams | GeneralShiftParams) -> dict:
    if isinstance(params, GeneralShiftParams):
        return {
            "d": params.d,
            "lambda": list(params.lambdas),
            "amps": [_pairs(a) for a in params.amps],
        }
    out: dict[str, Any] = {"lambda": list(params.lambdas)}
    for key, t in zip(TRIPLE_KEYS, (params.t0, params.t1, params.t2)):
        out[key] = _pairs(t)
    return out


def _reals(value, field: str, length: int) -> list[float]:
    if not isinstance(value, list) or len(value) != length:
        raise ParamsFormatError(field, f"expected a list of {length} numbers")
    out = []
    for i, x in enumerate(value):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise ParamsFormatError(f"{field}[{i}]", "expected a number")
        out.append(float(x))
    return out


def _complexes(value, field: str, length: int) -> list[complex]:
    if not isinstance(value, list) or len(value) != length:
        raise ParamsFormatError(field, f"expected a list of {length} [re, im] pairs")
    out = []
    for i, pair in enumerate(value):
        re, im = _reals(pair, f"{field}[{i}]", 2)
        out.append(complex(re, im))
    return out


def params_from_dict(obj) -> ShiftStateParams | GeneralShiftParams:
    """Parse either schema; invariant violations surface as ``ParamsFormatError``."""
    if not isinstance(obj, dict):
        raise ParamsFormatError("<root>", "expected a JSON object")
    if "lambda" not in obj:
        raise ParamsFormatError("lambda", "missing")
    try:
        if "d" in obj:
            d = obj["d"]
            if isinstance(d, bool) or not isinstance(d, int) or d < 3 or d % 2 == 0:
                raise ParamsFormatError("d", "expected an odd integer >= 3")
            lam = _reals(obj["lambda"], "lambda", d)
            amps = obj.get("amps")
            if not isinstance(amps, list) or len(amps) != d:
                raise ParamsFormatError("amps", f"expected {d} amplitude lists")
            return GeneralShiftParams(d, tuple(lam), tuple(tuple(_complexes(a, f"amps[{m}]", d)) for m, a in enumerate(amps)))
        lam = _reals(obj["lambda"], "lambda", 3)
        triples = []
        for key in TRIPLE_KEYS:
            if key not in obj:
                raise ParamsFormatError(key, "missing")
            triples.append(tuple(_complexes(obj[key], key, 3)))
        return ShiftStateParams(tuple(lam), *triples)
    except InvalidParamsError as exc:
        raise ParamsFormatError(_field_of(str(exc)), str(exc)) from exc


def _field_of(message: str) -> str:
    head = message.split(" ", 1)[0]
    mapping = {"t0": "X", "t1": "Xp", "t2": "Xpp", "lambdas": "lambda"}
    for k, v in mapping.items():
        if head.startswith(k):
            return v + head[len(k):]
    return head


def parse_instances(text: str) -> list[dict]:
    """Raw JSON objects from a single document or a JSON-lines corpus.

    Corpus header lines (objects without a ``lambda`` key but with ``mode``)
    are dropped.
    """
    text = text.strip()
    if not text:
        raise ParamsFormatError("<root>", "empty input")
    try:
        return [json.loads(text)]
    except json.JSONDecodeError:
        pass
    out = []
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParamsFormatError(f"<line {n}>", f"invalid JSON: {exc.msg}") from exc
        if isinstance(obj, dict) and "lambda" not in obj and "mode" in obj:
            continue
        out.append(obj)
    return out


def corpus_lines(params_list, seed: int, mode: str, **header) -> list[str]:
    head = {"seed": seed, "mode": mode, "version": FORMAT_VERSION, "count": len(params_list), **header}
    return [dumps(head)] + [dumps(params_to_dict(p)) for p in params_list]
