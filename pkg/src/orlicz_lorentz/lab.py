"""Numerical replication of the sufficiency argument for almost-compactness.

Contents: the Young-type inequality (both sides evaluated for a given step
function), the truncated power family ``G_r``, the ``S_r`` / ``B_r`` split with
the auxiliary function ``eta``, and decay profiles of the Lorentz norm over
unit-ball step functions supported on small sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy import optimize

from .criteria import _fit, random_stepfn
from .extended import INF, mul
from .functionals import InconclusiveError, lorentz_norm, luxemburg_norm, orlicz_modular
from .monotone import Const, MonotoneFn, Power, invert_nondecreasing
from .quadrature import adaptive_log_integral
from .rearrangement import StepFn
from .young import YoungFn, cap_at, exp_minus_one, piecewise, power, power_log

Weight = Union[float, MonotoneFn]

T_MIN, T_MAX = 1e-30, 1e30
DEFAULT_LAMBDA = 1e-2 / 2.0


# -- Young-type inequality ------------------------------------------------------


def _weight_fn(v: Weight):
    if isinstance(v, MonotoneFn):
        return v, lambda lo, hi: float(v.integral(hi)) - float(v.integral(lo)), list(v.breaks[1:])
    beta = float(v)

    def vf(t):
        t = np.asarray(t, dtype=float)
        return np.ones_like(t) if beta == 0 else np.power(t, beta)

    def vint(lo, hi):
        return (hi ** (beta + 1) - lo ** (beta + 1)) / (beta + 1)

    return vf, vint, []


@dataclass(frozen=True)
class YoungSides:
    lhs: float
    rhs: float
    integral_part: float
    modular_part: float
    truncated: bool

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs * (1 + 1e-6) + 1e-9


def young_type_sides(G: YoungFn, A: YoungFn, v: Weight, lam: float, f: StepFn) -> YoungSides:
    """Both sides of ``int G^{-1}(f_*) v <= int g^{-1}(v / (lam a)) v + lam rho_A(f)``.

    ``v`` is either an exponent ``beta`` (meaning ``v(t) = t^beta``) or a
    :class:`MonotoneFn`.  The right-hand integral is computed over
    ``[1e-30, 1e30]``; since the integrand is non-negative this is a lower
    bound, and ``truncated`` records whether the neglected tails could matter.
    """
    if not lam > 0:
        raise ValueError("lambda must be positive")
    vf, vint, vbreaks = _weight_fn(v)

    levels, mass = f.plateaus()
    lhs = 0.0
    if levels.size:
        asc = levels[::-1]
        heights = np.cumsum(mass)[::-1]
        lo = np.concatenate([[0.0], asc[:-1]])
        ginv_vals = np.asarray(G.inverse(heights), dtype=float)
        for gv, a_, b_ in zip(ginv_vals, lo, asc):
            piece = vint(a_, b_)
            lhs += float(mul(gv, piece))

    modular = orlicz_modular(A, f)
    ginv = G.slope_inverse

    def integrand(t):
        t = np.asarray(t, dtype=float)
        vv = np.asarray(vf(t), dtype=float)
        aa = np.asarray(A.a(t), dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            arg = np.where(vv == 0, 0.0, vv / (lam * aa))
        arg = np.where(np.isnan(arg), INF, arg)
        return mul(np.asarray(ginv(arg), dtype=float), vv)

    brk = [b for b in list(A.derivative.breaks[1:]) + vbreaks if b > 0]
    res = adaptive_log_integral(integrand, T_MIN, T_MAX, rtol=1e-10, breakpoints=brk)
    edge = np.asarray(integrand(np.array([T_MIN, T_MAX])), dtype=float) * np.array([T_MIN, T_MAX])
    truncated = bool(np.any(edge > 1e-12 * max(res.value, 1e-300)))
    rhs = res.value + (lam * modular if modular > 0 else 0.0)
    return YoungSides(lhs, rhs, res.value, modular, truncated)


def stock_families() -> list[YoungFn]:
    return [power(1), power(1.5), power(2), power(3), power_log(2, 1), power_log(3, -1),
            exp_minus_one(), cap_at(2.0), piecewise([(0, 0), (1, 1), (2, 4)])]


def young_inequality_trials(n: int, seed: int = 0) -> list[dict]:
    """Seeded random trials of :func:`young_type_sides` over the stock families.

    Each record holds the two families, ``beta`` (``v = t^beta``), ``lam`` and
    both sides; ``ratio`` is ``lhs / (rhs (1 + 1e-6) + 1e-9)``.
    """
    rng = np.random.default_rng(seed)
    fams = stock_families()
    out = []
    for i in range(n):
        G = fams[rng.integers(len(fams))]
        A = fams[rng.integers(len(fams))]
        beta = float(rng.uniform(0.0, 3.0))
        lam = float(10.0 ** rng.uniform(-3.0, 3.0))
        f = random_stepfn(rng, 1.0)
        res = young_type_sides(G, A, beta, lam, f)
        ratio = res.lhs / (res.rhs * (1 + 1e-6) + 1e-9)
        out.append({"trial": i, "G": G.name, "A": A.name, "beta": beta, "lam": lam,
                    "lhs": res.lhs, "rhs": res.rhs, "ratio": ratio, "holds": res.holds})
    return out


# -- truncated power family ------------------------------------------------------


@dataclass(frozen=True)
class TruncatedFamily:
    p: float
    q: float
    r: float
    G_r: YoungFn
    G_r_inv: MonotoneFn
    g_r: MonotoneFn
    g_r_inv: MonotoneFn

    @property
    def cut(self) -> float:
        return self.r ** (self.q / self.p)

    @property
    def slope_cut(self) -> float:
        return (self.p / self.q) * self.r ** (1 - self.q / self.p)

    def G_r_closed(self, t):
        t = np.asarray(t, dtype=float)
        return np.where(t <= self.cut, np.power(t, self.p / self.q), INF)

    def G_r_inv_closed(self, tau):
        tau = np.asarray(tau, dtype=float)
        return np.where(tau <= self.r, np.power(tau, self.q / self.p), self.cut)

    def g_r_inv_closed(self, tau):
        tau = np.asarray(tau, dtype=float)
        e = self.q / (self.p - self.q)
        return np.where(tau <= self.slope_cut, np.power((self.q / self.p) * tau, e), self.cut)

    def crosscheck(self, samples=None) -> float:
        """Largest relative gap between the generic inverses and the closed forms."""
        if samples is None:
            samples = np.logspace(-6, 6, 301)
        off = samples[(np.abs(samples - self.r) > 1e-9 * self.r)
                      & (np.abs(samples - self.slope_cut) > 1e-9 * self.slope_cut)]
        gaps = []
        for gen, closed in ((self.G_r_inv, self.G_r_inv_closed), (self.g_r_inv, self.g_r_inv_closed)):
            x = np.asarray(gen(off), dtype=float)
            y = np.asarray(closed(off), dtype=float)
            gaps.append(np.max(np.abs(x - y) / np.maximum(np.abs(y), 1e-300)))
        return float(max(gaps))


def truncated_family(p: float, q: float, r: float) -> TruncatedFamily:
    """``G_r(t) = t^{p/q}`` up to ``r^{q/p}`` and ``inf`` beyond, with its inverses and slope."""
    if not (1 <= q < p < INF):
        raise ValueError("need 1 <= q < p < inf")
    if not r > 0:
        raise ValueError("r must be positive")
    e = p / q
    cut = r ** (q / p)
    g = MonotoneFn((0.0, cut), (Power(e, e - 1.0), Const(INF)), 1)
    G = YoungFn(g, None, name=f"G_r(p={p:g},q={q:g},r={r:g})")
    fam = TruncatedFamily(p, q, r, G, G._inverse_fn, g.with_continuity(False),
                          invert_nondecreasing(g))
    err = fam.crosscheck()
    if err > 1e-9:
        raise ArithmeticError(f"generic inversion disagrees with the closed form ({err:.3g})")
    return fam


# -- S_r / B_r decomposition ------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    r: float
    lam: float
    S_integral: float
    B_integral: float
    inf_S: float
    tau: float
    eta_inv: float
    B_bound: float
    S_intervals: list = field(default_factory=list)

    @property
    def total(self) -> float:
        return self.S_integral + self.B_integral


def _crossings(fn, level, lo=-40.0, hi=40.0, n=8001):
    """Points in ``exp([lo, hi])`` where ``fn`` crosses ``level`` (refined by Brent)."""
    u = np.linspace(lo, hi, n)
    with np.errstate(all="ignore"):
        d = np.asarray(fn(np.exp(u)), dtype=float) - level
    d = np.where(np.isnan(d), np.inf, d)
    sgn = d > 0
    idx = np.nonzero(sgn[1:] != sgn[:-1])[0]
    pts = []
    for i in idx:
        a, b = u[i], u[i + 1]
        fa = float(fn(np.exp(a))) - level
        fb = float(fn(np.exp(b))) - level
        if np.isfinite(fa) and np.isfinite(fb) and fa * fb < 0:
            pts.append(math.exp(optimize.brentq(lambda x: float(fn(math.exp(x))) - level, a, b,
                                                xtol=1e-14, rtol=1e-14)))
        else:
            pts.append(math.exp(0.5 * (a + b)))
    return pts, bool(d[0] <= 0), u


def eta_function(A: YoungFn, q: float, t_grid=None):
    """``eta(t) = sup_{s >= t} s^{q-1}/a(s)`` on a log grid, as (grid, values)."""
    if t_grid is None:
        t_grid = np.logspace(-12, 40, 5201)
    with np.errstate(divide="ignore"):
        h = np.power(t_grid, q - 1.0) / np.asarray(A.a(t_grid), dtype=float)
    eta = np.maximum.accumulate(h[::-1])[::-1]
    return t_grid, eta


def eta_inverse(grid, eta, y: float) -> float:
    """Left-continuous inverse ``sup{t : eta(t) >= y}`` read from the grid."""
    ok = np.nonzero(eta >= y)[0]
    if ok.size == 0:
        return 0.0
    i = ok[-1]
    if i == len(grid) - 1:
        return INF
    return float(grid[i])


def proof_decomposition(A: YoungFn, p: float, q: float, lam: float = DEFAULT_LAMBDA,
                        r: float = 1e-2) -> Decomposition:
    """Integrals of ``g_r^{-1}(t^{q-1}/(lam a(t))) t^{q-1}`` over ``S_r`` and ``B_r``."""
    if A.is_capped:
        raise ValueError("the decomposition assumes a finite-valued Young function")
    if not (1 <= q < p < INF):
        raise ValueError("need 1 <= q < p < inf")
    tau = (p / q) * r ** (1 - q / p)
    kappa = q / (p - q)

    def w(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.power(t, q - 1.0) / (lam * np.asarray(A.a(t), dtype=float))

    pts, starts_in_S, _ = _crossings(w, tau)
    edges = [0.0] + pts + [INF]
    in_S = starts_in_S
    S_int, B_int = 0.0, 0.0
    S_iv = []
    for a_, b_ in zip(edges[:-1], edges[1:]):
        if in_S:
            S_iv.append((a_, b_))
            lo = max(a_, T_MIN)
            hi = min(b_, 1e40)
            val = adaptive_log_integral(
                lambda t: np.power((q / p) * w(t), kappa) * np.power(t, q - 1.0), lo, hi, rtol=1e-11).value
            S_int += val
        else:
            B_int += INF if math.isinf(b_) else r ** (q / p) * (b_**q - a_**q) / q
        in_S = not in_S
    inf_S = S_iv[0][0] if S_iv else INF
    grid, eta = eta_function(A, q)
    ei = eta_inverse(grid, eta, lam * tau)
    bound = r ** (q / p) * ei**q / q
    return Decomposition(r, lam, S_int, B_int, inf_S, tau, ei, bound, S_iv)


def chain_sides(A: YoungFn, p: float, q: float, lam: float, r: float, f: StepFn) -> dict:
    """Both readings of the chain bound for ``f`` in the unit ball supported on measure ``<= r``.

    ``norm_q`` is ``||f||_{p,q}^q``; ``rhs_q`` is ``q (S_r + B_r) + lam q rho_A(f)``
    and ``rhs_p`` the same with the leading ``q`` replaced by ``p``, which is
    what the Young-type inequality actually delivers for the Lorentz norm.
    """
    dec = proof_decomposition(A, p, q, lam, r)
    rho = orlicz_modular(A, f)
    norm_q = lorentz_norm(p, q, f) ** q
    return {"norm_q": norm_q, "rhs_q": q * dec.total + lam * q * rho,
            "rhs_p": p * dec.total + lam * p * rho, "modular": rho, "S": dec.S_integral,
            "B": dec.B_integral}


# -- almost-compactness profile --------------------------------------------------


@dataclass(frozen=True)
class Profile:
    r_grid: list
    phi: list
    best: list

    @property
    def non_increasing(self) -> bool:
        x = np.asarray(self.phi)
        return bool(np.all(np.diff(x) <= 1e-12 * np.maximum(x[:-1], 1e-300)))


def layered_profiles(A: YoungFn, p: float, r: float, layers: int = 8, total_measure: float = 1.0):
    """Unit-ball step functions supported on a set of measure ``r``.

    Yields ``(label, f)`` for the characteristic extremal and for ``k``-layer
    dyadic profiles (``k = 2..layers``) shaped like ``A^{-1}(2^j / r)`` and
    ``(2^j / r)^{1/p}``; each is rescaled to Luxemburg norm 1.
    """
    out = []
    base = StepFn(((1.0, r),), total_measure)
    out.append(("characteristic", base))
    for k in range(2, layers + 1):
        j = np.arange(k)
        meas = r * 2.0 ** (-j - 1.0)
        meas[-1] = r * 2.0 ** (-(k - 1.0))
        for shape in ("inverse", "power"):
            if shape == "inverse":
                vals = np.asarray(A.inverse(2.0**j / r), dtype=float)
            else:
                vals = (2.0**j / r) ** (1.0 / p)
            if not np.all(np.isfinite(vals)) or np.all(vals == 0):
                continue
            out.append((f"{shape}-{k}", StepFn(tuple(zip(vals.tolist(), meas.tolist())), total_measure)))
    normed = []
    for label, f in out:
        nrm = luxemburg_norm(A, f)
        if 0 < nrm < INF:
            normed.append((label, f.scaled(1.0 / nrm)))
    return normed


def almost_compactness_profile(A: YoungFn, p: float, q: float, r_grid, layers: int = 8) -> Profile:
    """``phi(r)``: the largest ``||f||_{p,q}`` over the structured unit-ball family at each ``r``."""
    r_grid = [float(r) for r in r_grid]
    if any(r <= 0 or r > 1 for r in r_grid):
        raise ValueError("r values must lie in (0, 1] (measure normalized to 1)")
    if any(b >= a for a, b in zip(r_grid, r_grid[1:])):
        raise ValueError("r grid must be strictly decreasing")
    phi, best = [], []
    for r in r_grid:
        vals = [(lorentz_norm(p, q, f), label) for label, f in layered_profiles(A, p, r, layers)]
        v, label = max(vals)
        phi.append(v)
        best.append(label)
    return Profile(r_grid, phi, best)


# -- weak Lorentz limit ----------------------------------------------------------------


def weak_lorentz_limit(A: YoungFn, p: float, mode: str = "auto") -> float:
    """``lim_{t -> 0+} t^{1/p} A^{-1}(1/t)``: 0, a positive number, or inf."""
    if not p < INF:
        raise ValueError("need p < inf")
    if A.is_capped:
        return 0.0
    t = 10.0 ** -np.arange(1, 16, dtype=float)
    vals = t ** (1.0 / p) * np.asarray(A.inverse(1.0 / t), dtype=float)
    if mode != "numeric" and A.asymptotic is not None:
        rho, alpha = A.asymptotic
        if rho > p or (rho == p and alpha > 0):
            return 0.0
        if rho < p or (rho == p and alpha < 0):
            return INF
        return float(vals[-1])
    lv = np.log(vals)
    d = np.diff(lv)
    d = np.where(np.abs(d) < 1e-9, 0.0, d)
    flips = int(np.sum(np.sign(d[1:]) * np.sign(d[:-1]) < 0))
    if flips > 2:
        raise InconclusiveError("t^{1/p} A^{-1}(1/t) oscillates along the probe sequence")
    x = np.log(1.0 / t)
    coef, se, rms = _fit(lv, [np.ones_like(x), x, np.log(x)])
    delta = float(coef[1])
    if delta < -0.01:
        return 0.0
    if delta > 0.01:
        return INF
    coef0, _, _ = _fit(lv, [np.ones_like(x), np.log(x)])
    beta = float(coef0[1])
    if beta < -0.05:
        return 0.0
    if beta > 0.05:
        return INF
    if float(np.ptp(lv[-5:])) < 1e-3:
        return float(vals[-1])
    raise InconclusiveError("t^{1/p} A^{-1}(1/t): no clear trend")


__all__ = [
    "YoungSides", "young_type_sides", "stock_families", "young_inequality_trials", "TruncatedFamily", "truncated_family", "Decomposition",
    "proof_decomposition", "chain_sides", "eta_function", "eta_inverse", "Profile",
    "layered_profiles", "almost_compactness_profile", "weak_lorentz_limit", "DEFAULT_LAMBDA",
]
