"""Non-negative extended reals, represented as plain floats in [0, inf].

Arithmetic conventions used throughout the toolkit:

* ``1/inf = 0``
* ``0 * inf = 0`` (products inside integrands)
* ``c/0 = inf`` for ``c > 0`` and ``0/0 = 0``
"""

from __future__ import annotations

import math

import numpy as np

INF = math.inf

# A float in [0, inf]; no wrapper class, the invariant is enforced by ``ext``.
ExtReal = float


def ext(x) -> ExtReal:
    """Validate and coerce ``x`` to an extended non-negative real."""
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "infinity", "+inf", "oo"):
            return INF
        x = float(s)
    x = float(x)
    if math.isnan(x) or x < 0:
        raise ValueError(f"not a non-negative extended real: {x!r}")
    return x


def mul(a, b):
    """Product with ``0 * inf = 0``; works elementwise on arrays."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(invalid="ignore", over="ignore"):
        out = a * b
    out = np.where((a == 0) | (b == 0), 0.0, out)
    return out[()] if out.ndim == 0 else out


def div(a, b):
    """Quotient with ``c/0 = inf``, ``0/0 = 0`` and ``c/inf = 0``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        out = a / b
    out = np.where(a == 0, 0.0, out)
    out = np.where((b == 0) & (a > 0), INF, out)
    out = np.where(np.isinf(b) & np.isfinite(a), 0.0, out)
    out = np.where(np.isinf(b) & np.isinf(a), INF, out)
    return out[()] if out.ndim == 0 else out


def power(a, e: float):
    """``a**e`` on [0, inf] with ``0**e = inf`` for ``e < 0`` and ``inf**e = 0``."""
    a = np.asarray(a, dtype=float)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        if e == 0:
            out = np.ones_like(a)
        else:
            out = np.power(a, e)
    return out[()] if out.ndim == 0 else out


def is_inf(x) -> bool:
    return math.isinf(float(x))
