"""Young functions stored through their right-continuous derivative.

``A(t) = int_0^t a(s) ds`` is recovered segment by segment in closed form, the
conjugate is built from the left-continuous inverse of ``a``, and every stock
family carries an asymptotic descriptor ``(rho, alpha)`` meaning
``A(t) ~ t**rho * log(e + t)**alpha`` as ``t -> inf``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .extended import INF
from .monotone import (Const, Exp, MonotoneFn, Power, PowerLogSlope, Segment,
                       invert_nondecreasing)

log = logging.getLogger(__name__)

_WINDOW = np.logspace(2, 12, 41)


@dataclass(frozen=True)
class YoungFn:
    """A Young function ``A`` given by its derivative ``a``.

    ``asymptotic`` is an optional ``(rho, alpha)`` pair; it is checked against
    the actual values of ``A`` on ``[1e2, 1e12]`` at construction and dropped
    (with a warning) if the ratio leaves a bounded window.  ``name`` is a
    human-readable label used in reports.
    """

    derivative: MonotoneFn
    asymptotic: tuple | None = None
    name: str = "young"
    _window: float = field(default=float("nan"), repr=False, compare=False)

    def __post_init__(self):
        a = self.derivative
        if a.direction != 1:
            raise ValueError("the derivative of a Young function is non-decreasing")
        if not a.right_continuous:
            object.__setattr__(self, "derivative", a.with_continuity(True))
        if self.asymptotic is None:
            object.__setattr__(self, "asymptotic", tail_descriptor(self.derivative))
        if not self.is_capped and float(self.derivative.value_at_infinity) <= 0:
            raise ValueError("A(inf) = inf fails: derivative vanishes identically")
        if self.asymptotic is not None and not self.is_capped:
            self._check_window()

    def _check_window(self):
        rho, alpha = self.asymptotic
        t = _WINDOW
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            ratio = np.asarray(self(t)) / (t**rho * np.log(math.e + t) ** alpha)
        ok = np.all(np.isfinite(ratio)) and np.all(ratio > 0)
        c = float(max(ratio.max(), 1.0 / ratio.min())) if ok else INF
        spread = float(ratio.max() / ratio.min()) if ok else INF
        if not ok or spread > 10.0:
            log.warning("asymptotic descriptor %s rejected for %s (spread %.3g)", self.asymptotic,
                        self.name, spread)
            object.__setattr__(self, "asymptotic", None)
        object.__setattr__(self, "_window", c)

    # -- values -------------------------------------------------------

    def __call__(self, t):
        """A(t), vectorized; ``inf`` beyond the jump point."""
        return self.derivative.integral(t)

    def a(self, t):
        return self.derivative(t)

    @property
    def jump_to_infinity_at(self) -> float | None:
        return self.derivative.jump_to_infinity_at

    @property
    def is_capped(self) -> bool:
        return self.jump_to_infinity_at is not None

    @cached_property
    def as_monotone(self) -> MonotoneFn:
        """A itself as a left-continuous :class:`MonotoneFn`."""
        a = self.derivative
        segs = []
        for i, seg in enumerate(a.segments):
            b = a.breaks[i]
            segs.append(seg.integrated(b, float(a.integral(b))))
        return MonotoneFn(a.breaks, tuple(segs), 1, right_continuous=False)

    @cached_property
    def _inverse_fn(self) -> MonotoneFn:
        return invert_nondecreasing(self.as_monotone)

    def inverse(self, y):
        """Left-continuous inverse A^{-1}(y)."""
        return self._inverse_fn(y)

    @cached_property
    def slope_inverse(self) -> MonotoneFn:
        """Left-continuous inverse of the derivative ``a``."""
        return invert_nondecreasing(self.derivative)

    @cached_property
    def near_zero_exponent(self) -> float:
        """``rho0`` with ``A(t) ~ t**rho0`` as ``t -> 0`` (inf when A vanishes near 0)."""
        seg = self.derivative.segments[0]
        a0 = float(self.derivative(0.0))
        if a0 > 0:
            return 1.0
        if isinstance(seg, Const):
            return INF
        if isinstance(seg, Power) and seg.offset == 0 and seg.shift == 0 and seg.sign == 1:
            return seg.expo + 1.0
        if isinstance(seg, PowerLogSlope):
            return seg.rho
        # generic: local log-log slope of A near the origin
        t = np.array([1e-9, 1e-8]) * max(self.derivative.breaks[1] if len(self.derivative.breaks) > 1 else 1.0, 1e-300)
        v = np.asarray(self(t))
        if np.any(v <= 0):
            return INF
        return float(np.log(v[1] / v[0]) / np.log(t[1] / t[0]))

    def conjugate(self) -> "YoungFn":
        """The Young conjugate, with derivative equal to the left-continuous inverse of ``a``."""
        ainv = self.slope_inverse.with_continuity(True)
        return YoungFn(ainv, conjugate_descriptor(self.asymptotic), name=f"conj({self.name})")

    def sandwich(self, t):
        """``(A(t), t a(t), A(2t))`` for the basic derivative estimate."""
        t = np.asarray(t, dtype=float)
        with np.errstate(invalid="ignore"):
            ta = np.where(t == 0, 0.0, t * np.asarray(self.a(t)))
        return np.asarray(self(t)), ta, np.asarray(self(2 * t))


def tail_descriptor(a: MonotoneFn) -> tuple | None:
    """``(rho, alpha)`` read off the last piece of the derivative, when closed form."""
    seg = a.segments[-1]
    if isinstance(seg, Const):
        if math.isinf(seg.value):
            return None
        return (1.0, 0.0) if seg.value > 0 else None
    if isinstance(seg, Power) and seg.sign == 1 and seg.expo > 0 and seg.coef > 0:
        return (seg.expo + 1.0, 0.0)
    if isinstance(seg, Power) and seg.sign == 1 and seg.expo < 0 and seg.offset > 0:
        return (1.0, 0.0)
    if isinstance(seg, PowerLogSlope):
        return (seg.rho, seg.alpha)
    return None


def conjugate_descriptor(desc: tuple | None) -> tuple | None:
    """Asymptotics of the conjugate of ``t**rho log**alpha``, for ``rho > 1``."""
    if desc is None:
        return None
    rho, alpha = desc
    if rho <= 1:
        return None
    rp = rho / (rho - 1.0)
    return (rp, 0.0 - alpha / (rho - 1.0))


# -- stock families ---------------------------------------------------------


def power(r: float, scale: float = 1.0) -> YoungFn:
    """``A(t) = scale * t**r`` for ``r >= 1``."""
    if not r >= 1:
        raise ValueError(f"power family needs r >= 1, got {r}")
    if scale <= 0:
        raise ValueError("scale must be positive")
    if r == 1:
        a = MonotoneFn.constant(scale)
    else:
        a = MonotoneFn((0.0,), (Power(scale * r, r - 1.0),), 1)
    return YoungFn(a, (float(r), 0.0), name=f"pow:r={r:g}")


def power_log(rho: float, alpha: float) -> YoungFn:
    """``A(t) = t**rho * log(e + t)**alpha``."""
    if not rho >= 1:
        raise ValueError(f"power_log needs rho >= 1, got {rho}")
    if rho == 1 and alpha < 0:
        raise ValueError("rho = 1 requires alpha >= 0")
    seg = PowerLogSlope(1.0, float(rho), float(alpha))
    t = np.concatenate([[0.0], np.logspace(-8, 15, 400)])
    vals = np.asarray(seg(t))
    if np.any(vals < 0) or np.any(np.diff(vals) < -1e-12 * np.abs(vals[1:])):
        raise ValueError(f"power_log({rho}, {alpha}) is not convex")
    a = MonotoneFn((0.0,), (seg,), 1)
    return YoungFn(a, (float(rho), float(alpha)), name=f"powlog:rho={rho:g},alpha={alpha:g}")


def exp_minus_one() -> YoungFn:
    """``A(t) = e**t - 1``."""
    return YoungFn(MonotoneFn((0.0,), (Exp(1.0, 1.0),), 1), None, name="exp")


def cap_at(t0: float) -> YoungFn:
    """``A = 0`` on ``[0, t0]`` and ``inf`` beyond (the L^inf case)."""
    if not t0 > 0:
        raise ValueError("cap point must be positive")
    a = MonotoneFn((0.0, float(t0)), (Const(0.0), Const(INF)), 1)
    return YoungFn(a, None, name=f"cap:t0={t0:g}")


def piecewise(knots: Sequence[tuple[float, float]]) -> YoungFn:
    """Derivative interpolated linearly through ``(t, a(t))`` knots.

    The first knot must sit at ``t = 0``; the last slope is continued to
    infinity (constant when only one knot is given).
    """
    knots = [(float(t), float(v)) for t, v in knots]
    if not knots or knots[0][0] != 0.0:
        raise ValueError("piecewise knots must start at t = 0")
    ts = [k[0] for k in knots]
    vs = [k[1] for k in knots]
    if any(t1 <= t0 for t0, t1 in zip(ts, ts[1:])):
        raise ValueError("knot abscissae must increase")
    if any(v < 0 for v in vs) or any(v1 < v0 for v0, v1 in zip(vs, vs[1:])):
        raise ValueError("derivative values must be non-negative and non-decreasing (convexity)")
    segs: list[Segment] = []
    breaks: list[float] = []
    for i in range(len(ts)):
        if i + 1 < len(ts):
            slope = (vs[i + 1] - vs[i]) / (ts[i + 1] - ts[i])
        else:
            slope = (vs[i] - vs[i - 1]) / (ts[i] - ts[i - 1]) if i > 0 else 0.0
        breaks.append(ts[i])
        segs.append(Const(vs[i]) if slope == 0 else Power(slope, 1.0, 1, -ts[i], vs[i]))
    a = MonotoneFn(tuple(breaks), tuple(segs), 1)
    label = ",".join(f"({t:g},{v:g})" for t, v in knots)
    return YoungFn(a, None, name=f"piecewise:[{label}]")


FAMILIES = {
    "power": power,
    "power_log": power_log,
    "exp_minus_one": exp_minus_one,
    "cap_at": cap_at,
    "piecewise": piecewise,
}


def make_family(kind: str, *args, **kwargs) -> YoungFn:
    """Build a stock family by name, e.g. ``make_family("power", 2)``."""
    try:
        return FAMILIES[kind](*args, **kwargs)
    except KeyError:
        raise ValueError(f"unknown Young family {kind!r}") from None


def modify_near_zero(A: YoungFn, p: float, q: float) -> YoungFn:
    """Replace ``A`` on ``[0, 1]`` by the chord ``t * A(1)``.

    The result agrees with ``A`` on ``[1, inf)``, is still convex because
    ``A(1) <= a(1)``, and makes ``int_0^1 (t**p / A(t))**(q/(p-q)) dt/t``
    finite since ``p > 1``.  When ``A`` vanishes on ``[0, 1]`` the pivot moves
    to the first point where ``A`` becomes positive.
    """
    if not 1 <= q < p < INF:
        raise ValueError("need 1 <= q < p < inf")
    pivot = 1.0
    if float(A(pivot)) <= 0:
        # A == 0 on [0, pivot]; move to where A turns positive
        z = float(invert_nondecreasing(A.derivative)(1e-300))
        pivot = 2.0 * max(z, 1.0)
        if A.is_capped and pivot > A.jump_to_infinity_at:
            pivot = A.jump_to_infinity_at
    slope = float(A(pivot)) / pivot
    if math.isinf(slope):
        raise ValueError("A is infinite at the pivot")
    head = MonotoneFn.constant(slope)
    seg0 = A.derivative.segments[0]
    if (isinstance(seg0, Const) and seg0.value == slope
            and (len(A.derivative.breaks) == 1 or A.derivative.breaks[1] >= pivot)):
        return A
    a1 = head.splice(A.derivative, pivot)
    return YoungFn(a1, A.asymptotic, name=f"{A.name}|near0")
