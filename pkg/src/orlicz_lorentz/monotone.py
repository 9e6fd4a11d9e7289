"""Exact piecewise representation of monotone functions [0, inf] -> [0, inf].

A :class:`MonotoneFn` is a list of breakpoints ``0 = b_0 < b_1 < ...`` and one
closed-form :class:`Segment` per interval.  Segments know how to evaluate,
integrate and invert themselves, so left-continuous inverses and
antiderivatives are computed segment by segment instead of on a grid.

All segment methods are vectorized over numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import integrate as _spi

from .extended import INF

E = math.e
_BISECT_ITERS = 200


def _arr(t):
    return np.asarray(t, dtype=float)


def _ret(out):
    return out[()] if np.ndim(out) == 0 else out


class Segment:
    """One closed-form piece.  ``trend`` is +1, -1 or 0 (constant)."""

    trend: int = 0

    def __call__(self, t):
        raise NotImplementedError

    def at_infinity(self) -> float:
        return float(self(1e300)) if self.trend >= 0 else float(self(1e300))

    def integrate(self, u, v):
        """Integral over [u, v]; generic adaptive quadrature fallback."""
        u = np.broadcast_to(_arr(u), np.broadcast(_arr(u), _arr(v)).shape)
        v = np.broadcast_to(_arr(v), u.shape)
        out = np.empty(u.shape)
        for k in np.ndindex(u.shape):
            a, b = float(u[k]), float(v[k])
            if b <= a:
                out[k] = 0.0
                continue
            out[k] = _spi.quad(lambda s: float(self(s)), a, b, epsabs=0, epsrel=1e-13, limit=200)[0]
        return _ret(out)

    def solve(self, y, lo: float, hi: float):
        """Return t in [lo, hi] with self(t) = y (strictly monotone pieces only)."""
        return _bisect_solve(self, _arr(y), lo, hi)

    def inverse(self, lo: float, hi: float) -> "Segment":
        return Inverse(self, lo, hi)

    def integrated(self, t0: float, y0: float) -> "Segment":
        """The segment t -> y0 + integral of self over [t0, t]."""
        return Integral(self, t0, y0)


def _bisect_solve(seg: Segment, y: np.ndarray, lo: float, hi: float):
    """Vectorized bisection (geometric once the bracket is positive)."""
    y = _arr(y)
    inc = seg.trend > 0
    lo_arr = np.full(y.shape, float(lo))
    if math.isinf(hi):
        hi_v = max(2.0 * lo, 1.0)
        hi_arr = np.full(y.shape, hi_v)
        for _ in range(2100):
            vals = seg(hi_arr)
            need = (vals < y) if inc else (vals > y)
            if not np.any(need):
                break
            hi_arr = np.where(need, hi_arr * 2.0, hi_arr)
            if np.all(hi_arr[need] > 1e300):
                break
    else:
        hi_arr = np.full(y.shape, float(hi))
    for _ in range(_BISECT_ITERS):
        positive = lo_arr > 0
        with np.errstate(over="ignore"):
            mid = np.where(positive, np.sqrt(lo_arr) * np.sqrt(hi_arr), 0.5 * (lo_arr + hi_arr))
        mid = np.where(positive | (hi_arr > 1e-300), mid, 0.5 * (lo_arr + hi_arr))
        vals = seg(mid)
        go_right = (vals < y) if inc else (vals > y)
        lo_arr = np.where(go_right, mid, lo_arr)
        hi_arr = np.where(go_right, hi_arr, mid)
        if np.all(hi_arr - lo_arr <= 1e-16 * np.abs(hi_arr)):
            break
    return _ret(hi_arr)


@dataclass(frozen=True)
class Const(Segment):
    value: float

    @property
    def trend(self) -> int:
        return 0

    def __call__(self, t):
        return _ret(np.full(np.shape(t), self.value, dtype=float))

    def at_infinity(self) -> float:
        return self.value

    def integrate(self, u, v):
        u, v = _arr(u), _arr(v)
        width = np.maximum(v - u, 0.0)
        if math.isinf(self.value):
            return _ret(np.where(width > 0, INF, 0.0))
        with np.errstate(invalid="ignore"):
            out = np.where(width > 0, self.value * width, 0.0)
        return _ret(out)

    def integrated(self, t0, y0):
        if math.isinf(self.value):
            return Const(INF)
        if self.value == 0:
            return Const(y0)
        return Power(self.value, 1.0, 1, -t0, y0)


@dataclass(frozen=True)
class Power(Segment):
    """``offset + coef * (sign*t + shift)**expo``."""

    coef: float
    expo: float
    sign: int = 1
    shift: float = 0.0
    offset: float = 0.0

    def __post_init__(self):
        if self.coef == 0 or self.expo == 0:
            raise ValueError("degenerate power segment; use Const")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def trend(self) -> int:
        return int(np.sign(self.coef * self.expo * self.sign))

    def _base(self, t):
        return np.maximum(self.sign * _arr(t) + self.shift, 0.0)

    def __call__(self, t):
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            out = self.offset + self.coef * np.power(self._base(t), self.expo)
        return _ret(out)

    def at_infinity(self) -> float:
        if self.sign < 0:
            return float(self(0.0))
        if self.expo < 0:
            return self.offset
        return INF if self.coef > 0 else -INF

    def integrate(self, u, v):
        u, v = _arr(u), _arr(v)
        e1 = self.expo + 1.0
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            bu, bv = self._base(u), self._base(v)
            if e1 == 0:
                core = self.coef * (np.log(bv) - np.log(bu)) / self.sign
            else:
                core = self.coef * (np.power(bv, e1) - np.power(bu, e1)) / (self.sign * e1)
            lin = np.where(self.offset == 0, 0.0, self.offset * (v - u))
            out = np.where(v > u, core + lin, 0.0)
        return _ret(out)

    def solve(self, y, lo=0.0, hi=INF):
        y = _arr(y)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            ratio = np.maximum((y - self.offset) / self.coef, 0.0)
            t = self.sign * (np.power(ratio, 1.0 / self.expo) - self.shift)
        return _ret(np.clip(t, lo, hi))

    def inverse(self, lo=0.0, hi=INF):
        e = 1.0 / self.expo
        if self.coef > 0:
            return Power(self.sign * self.coef ** (-e), e, 1, -self.offset, -self.sign * self.shift)
        return Power(self.sign * (-self.coef) ** (-e), e, -1, self.offset, -self.sign * self.shift)

    def integrated(self, t0, y0):
        e1 = self.expo + 1.0
        if self.offset != 0 or e1 == 0:
            return Integral(self, t0, y0)
        c = self.coef / (self.sign * e1)
        base0 = max(self.sign * t0 + self.shift, 0.0)
        return Power(c, e1, self.sign, self.shift, y0 - c * base0**e1)


@dataclass(frozen=True)
class Exp(Segment):
    """``offset + coef * exp(rate * t)``."""

    coef: float
    rate: float
    offset: float = 0.0

    @property
    def trend(self) -> int:
        return int(np.sign(self.coef * self.rate))

    def __call__(self, t):
        with np.errstate(over="ignore", invalid="ignore"):
            out = self.offset + self.coef * np.exp(self.rate * _arr(t))
        return _ret(out)

    def at_infinity(self) -> float:
        if self.rate < 0:
            return self.offset
        return INF if self.coef > 0 else -INF

    def integrate(self, u, v):
        u, v = _arr(u), _arr(v)
        with np.errstate(over="ignore", invalid="ignore"):
            core = self.coef * (np.exp(self.rate * v) - np.exp(self.rate * u)) / self.rate
            out = np.where(v > u, core + self.offset * (v - u), 0.0)
        return _ret(out)

    def solve(self, y, lo=0.0, hi=INF):
        y = _arr(y)
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.log(np.maximum((y - self.offset) / self.coef, 0.0)) / self.rate
        return _ret(np.clip(t, lo, hi))

    def integrated(self, t0, y0):
        if self.offset != 0:
            return Integral(self, t0, y0)
        c = self.coef / self.rate
        return Exp(c, self.rate, y0 - c * math.exp(self.rate * t0))


def _log_e(t):
    return np.log(E + _arr(t))


@dataclass(frozen=True)
class PowerLog(Segment):
    """``offset + scale * t**rho * log(e + t)**alpha``."""

    scale: float
    rho: float
    alpha: float
    offset: float = 0.0

    @property
    def trend(self) -> int:
        return 1

    def __call__(self, t):
        t = _arr(t)
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            out = self.offset + self.scale * np.power(t, self.rho) * np.power(_log_e(t), self.alpha)
        out = np.where(np.isinf(t), INF, out)
        return _ret(out)

    def at_infinity(self) -> float:
        return INF


@dataclass(frozen=True)
class PowerLogSlope(Segment):
    """Derivative of ``scale * t**rho * log(e + t)**alpha``."""

    scale: float
    rho: float
    alpha: float

    @property
    def trend(self) -> int:
        return 1

    def __call__(self, t):
        t = _arr(t)
        L = _log_e(t)
        rho, al = self.rho, self.alpha
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            first = rho * np.power(t, rho - 1.0) if rho != 1 else np.ones_like(t)
            out = self.scale * np.power(L, al - 1.0) * (first * L + al * np.power(t, rho) / (E + t))
        out = np.where(np.isinf(t), INF, out)
        return _ret(out)

    def at_infinity(self) -> float:
        return INF

    def _prim(self, t):
        t = _arr(t)
        with np.errstate(over="ignore", invalid="ignore"):
            return self.scale * np.power(t, self.rho) * np.power(_log_e(t), self.alpha)

    def integrate(self, u, v):
        u, v = _arr(u), _arr(v)
        with np.errstate(invalid="ignore"):
            out = np.where(v > u, self._prim(v) - self._prim(u), 0.0)
        return _ret(out)

    def integrated(self, t0, y0):
        return PowerLog(self.scale, self.rho, self.alpha, y0 - float(self._prim(t0)))


@dataclass(frozen=True)
class Inverse(Segment):
    """Inverse of a strictly monotone segment restricted to ``[lo, hi]``."""

    base: Segment
    lo: float
    hi: float

    @property
    def trend(self) -> int:
        return self.base.trend

    def __call__(self, y):
        return self.base.solve(y, self.lo, self.hi)

    def at_infinity(self) -> float:
        return self.hi if self.trend > 0 else self.lo

    def integrate(self, u, v):
        # integration by parts: int x(y) dy = [y x(y)] - int base(t) dt
        u, v = _arr(u), _arr(v)
        xu, xv = _arr(self(u)), _arr(self(v))
        with np.errstate(invalid="ignore", over="ignore"):
            if self.trend > 0:
                core = v * xv - u * xu - _arr(self.base.integrate(xu, xv))
            else:
                core = v * xv - u * xu + _arr(self.base.integrate(xv, xu))
            out = np.where(v > u, core, 0.0)
        return _ret(out)

    def solve(self, t, lo=0.0, hi=INF):
        return _ret(np.clip(_arr(self.base(t)), lo, hi))

    def inverse(self, lo=0.0, hi=INF):
        return self.base


@dataclass(frozen=True)
class Integral(Segment):
    """``y0 + integral of base over [t0, t]`` for a non-negative base."""

    base: Segment
    t0: float
    y0: float

    @property
    def trend(self) -> int:
        return 1 if self.base.trend != 0 or float(self.base(self.t0 + 1.0)) > 0 else 0

    def __call__(self, t):
        t = _arr(t)
        return _ret(self.y0 + _arr(self.base.integrate(np.full(t.shape, self.t0), t)))

    def at_infinity(self) -> float:
        return INF


@dataclass(frozen=True)
class MonotoneFn:
    """Monotone function on [0, inf] built from closed-form segments.

    ``segments[i]`` is used on ``[breaks[i], breaks[i+1])`` when the
    function is right-continuous and on ``(breaks[i], breaks[i+1]]`` when it
    is left-continuous.  ``value_at_zero`` overrides the value at ``t = 0``
    (needed for left-continuous inverses, whose value at 0 is fixed by
    convention rather than by the first piece).
    """

    breaks: tuple
    segments: tuple
    direction: int = 1
    right_continuous: bool = True
    value_at_zero: float | None = None
    value_at_infinity: float | None = None
    _cum: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        breaks = tuple(float(b) for b in self.breaks)
        object.__setattr__(self, "breaks", breaks)
        object.__setattr__(self, "segments", tuple(self.segments))
        if self.direction not in (1, -1):
            raise ValueError("direction must be +1 (non-decreasing) or -1 (non-increasing)")
        if not breaks or breaks[0] != 0.0 or len(breaks) != len(self.segments):
            raise ValueError("breaks must start at 0 and match the segments")
        if any(b1 <= b0 for b0, b1 in zip(breaks, breaks[1:])):
            raise ValueError("breaks must be strictly increasing")
        for seg in self.segments:
            if seg.trend not in (0, self.direction):
                raise ValueError(f"segment {seg!r} is not monotone in the declared direction")
        self._check_joins()
        if self.value_at_infinity is None:
            object.__setattr__(self, "value_at_infinity", float(self.segments[-1].at_infinity()))
        cum = [0.0]
        for i in range(len(breaks) - 1):
            cum.append(cum[-1] + float(self.segments[i].integrate(breaks[i], breaks[i + 1])))
        object.__setattr__(self, "_cum", tuple(cum))

    def _check_joins(self):
        d = self.direction
        for i, seg in enumerate(self.segments):
            start = float(seg(self.breaks[i]))
            if start < -1e-12 * max(1.0, abs(start)):
                raise ValueError(f"negative value {start} at t={self.breaks[i]}")
            if i + 1 < len(self.segments):
                end = float(seg(self.breaks[i + 1]))
                nxt = float(self.segments[i + 1](self.breaks[i + 1]))
                tol = 1e-9 * max(1.0, abs(end), abs(nxt)) if np.isfinite(end) else 0.0
                if np.isfinite(end) and np.isfinite(nxt) and d * (nxt - end) < -tol:
                    raise ValueError(f"monotonicity broken at t={self.breaks[i + 1]}")
                if d > 0 and math.isinf(end) and not math.isinf(nxt):
                    raise ValueError(f"monotonicity broken at t={self.breaks[i + 1]}")

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, c: float, direction: int = 1) -> "MonotoneFn":
        return cls((0.0,), (Const(float(c)),), direction)

    @classmethod
    def power(cls, coef: float, expo: float) -> "MonotoneFn":
        """``coef * t**expo``; non-decreasing for positive exponent."""
        if expo == 0:
            return cls.constant(coef)
        direction = 1 if expo > 0 else -1
        return cls((0.0,), (Power(coef, expo),), direction)

    @classmethod
    def step(cls, breaks: Sequence[float], values: Sequence[float], direction: int,
             right_continuous: bool = True) -> "MonotoneFn":
        return cls(tuple(breaks), tuple(Const(float(v)) for v in values), direction, right_continuous)

    # -- evaluation ---------------------------------------------------

    def _index(self, t: np.ndarray) -> np.ndarray:
        side = "right" if self.right_continuous else "left"
        idx = np.searchsorted(self.breaks, t, side=side) - 1
        return np.clip(idx, 0, len(self.breaks) - 1)

    def __call__(self, t):
        t = _arr(t)
        flat = np.atleast_1d(t).ravel()
        out = np.empty(flat.shape)
        idx = self._index(flat)
        for i in np.unique(idx):
            m = idx == i
            out[m] = self.segments[i](flat[m])
        out[np.isposinf(flat)] = self.value_at_infinity
        if self.value_at_zero is not None:
            out[flat == 0] = self.value_at_zero
        out = np.maximum(out, 0.0)
        return _ret(out.reshape(t.shape))

    def integral(self, t):
        """``int_0^t fn(s) ds`` (vectorized)."""
        t = _arr(t)
        flat = np.atleast_1d(t).ravel()
        out = np.empty(flat.shape)
        idx = np.clip(np.searchsorted(self.breaks, flat, side="right") - 1, 0, len(self.breaks) - 1)
        for i in np.unique(idx):
            m = idx == i
            start = self.breaks[i]
            with np.errstate(invalid="ignore"):
                out[m] = self._cum[i] + _arr(self.segments[i].integrate(np.full(m.sum(), start), flat[m]))
        fin = np.isposinf(flat)
        if fin.any():
            last = self._cum[-1] + float(self.segments[-1].integrate(self.breaks[-1], 1e300))
            tail = self.segments[-1].at_infinity()
            out[fin] = INF if (tail > 0 or math.isinf(last)) else last
        out = np.where(np.isnan(out), INF, out)
        return _ret(out.reshape(t.shape))

    @property
    def jump_to_infinity_at(self) -> float | None:
        """Start of a trailing infinite piece, if the function jumps to inf."""
        last = self.segments[-1]
        if isinstance(last, Const) and math.isinf(last.value) and len(self.segments) > 1:
            return self.breaks[-1]
        if isinstance(last, Const) and math.isinf(last.value):
            return 0.0
        return None

    def with_continuity(self, right_continuous: bool) -> "MonotoneFn":
        return MonotoneFn(self.breaks, self.segments, self.direction, right_continuous,
                          self.value_at_zero, self.value_at_infinity)

    def splice(self, other: "MonotoneFn", at: float) -> "MonotoneFn":
        """Use ``self`` on [0, at) and ``other`` on [at, inf)."""
        br, segs = [], []
        for b, s in zip(self.breaks, self.segments):
            if b < at:
                br.append(b)
                segs.append(s)
        j = int(np.searchsorted(other.breaks, at, side="right") - 1)
        br.append(at)
        segs.append(other.segments[j])
        for b, s in zip(other.breaks[j + 1:], other.segments[j + 1:]):
            br.append(b)
            segs.append(s)
        return MonotoneFn(tuple(br), tuple(segs), self.direction, self.right_continuous,
                          self.value_at_zero)

    def sample_breaks(self) -> np.ndarray:
        return np.asarray(self.breaks)


def _seg_end(fn: MonotoneFn, i: int) -> float:
    """Limit of piece ``i`` at its right end."""
    if i + 1 < len(fn.segments):
        return float(fn.segments[i](fn.breaks[i + 1]))
    return float(fn.segments[i].at_infinity())


def invert_nondecreasing(G: MonotoneFn) -> MonotoneFn:
    """Left-continuous inverse ``G^{-1}(y) = inf{t >= 0 : G(t) >= y}`` (inf of empty set = inf)."""
    if G.direction != 1:
        raise ValueError("invert_nondecreasing needs a non-decreasing function")
    br: list[float] = [0.0]
    segs: list[Segment] = []
    cur = 0.0
    n = len(G.segments)

    def push(start, seg):
        if segs and start <= br[-1]:
            segs[-1] = seg
            return
        if not segs:
            segs.append(seg)
            return
        br.append(start)
        segs.append(seg)

    done = False
    for i, seg in enumerate(G.segments):
        b_i = G.breaks[i]
        b_next = G.breaks[i + 1] if i + 1 < n else INF
        lo = float(seg(b_i))
        hi = _seg_end(G, i)
        if math.isinf(lo):
            push(cur, Const(b_i))
            done = True
            break
        if lo > cur:
            push(cur, Const(b_i))
            cur = lo
        if seg.trend == 0:
            continue
        push(cur, seg.inverse(b_i, b_next))
        cur = hi
        if math.isinf(cur):
            done = True
            break
    if not done:
        push(cur, Const(INF))
    return MonotoneFn(tuple(br), tuple(segs), 1, right_continuous=False, value_at_zero=0.0)


def invert_nonincreasing(F: MonotoneFn) -> MonotoneFn:
    """Left-continuous inverse ``F^{-1}(y) = sup{t >= 0 : F(t) >= y}`` (sup of empty set = 0)."""
    if F.direction != -1:
        raise ValueError("invert_nonincreasing needs a non-increasing function")
    n = len(F.segments)
    br: list[float] = [0.0]
    segs: list[Segment] = []

    def push(start, seg):
        if not segs:
            segs.append(seg)
            return
        if start <= br[-1]:
            segs[-1] = seg
            return
        br.append(start)
        segs.append(seg)

    f_inf = float(F.value_at_infinity)
    cur = 0.0
    if f_inf > 0:
        push(0.0, Const(INF))
        cur = f_inf
    done = False
    for i in range(n - 1, -1, -1):
        seg = F.segments[i]
        b_i = F.breaks[i]
        b_next = F.breaks[i + 1] if i + 1 < n else INF
        lo = _seg_end(F, i)
        hi = float(seg(b_i))
        if math.isinf(lo):
            push(cur, Const(b_next))
            done = True
            break
        if lo > cur:
            push(cur, Const(b_next))
            cur = lo
        if seg.trend == 0:
            continue
        push(cur, seg.inverse(b_i, b_next))
        cur = hi
        if math.isinf(cur):
            done = True
            break
    if not done:
        push(cur, Const(0.0))
    return MonotoneFn(tuple(br), tuple(segs), -1, right_continuous=False, value_at_zero=INF)
