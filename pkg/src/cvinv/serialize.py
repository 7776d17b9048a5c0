"""Reproducible text encodings: 17 significant digits, complex as pairs or strings."""
from __future__ import annotations

import json
import math

import numpy as np


def fmt_real(x) -> str:
    x = float(x)
    if x == 0:
        return "0"
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return f"{x:.17g}"


def fmt_complex(z) -> str:
    """``re+imj`` form used in CSV cells."""
    z = complex(z)
    im = fmt_real(abs(z.imag))
    sign = "-" if z.imag < 0 else "+"
    return f"{fmt_real(z.real)}{sign}{im}j"


def parse_complex(text: str) -> complex:
    return complex(text.replace("Infinity", "inf"))


def complex_pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def dumps(obj) -> str:
    """Compact JSON with every float written by :func:`fmt_real`."""
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist())
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_real(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot encode {type(obj).__name__}")


def matrix_pairs(m) -> list:
    return [[complex_pair(z) for z in row] for row in np.asarray(m)]
