"""Decision layer for Orlicz-into-Lorentz and Lorentz-into-Orlicz embeddings.

Every condition is decided in one of two modes:

* ``exact-asymptotic``: read off the ``(rho, alpha)`` descriptor of the Young
  function (and its exponent near zero when the measure is infinite);
* ``numeric``: integrate over 41 dyadic blocks and fit the tail of
  ``log J_k`` against ``-delta * u - beta * log u`` (``u`` the block midpoint
  in ``log t``).  The integral converges iff ``delta > 0`` or ``delta = 0``
  and ``beta > 1``; anything too close to that line is ``Inconclusive``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .extended import INF
from .functionals import InconclusiveError, lorentz_norm, orlicz_modular
from .monotone import Const, invert_nondecreasing
from .quadrature import adaptive_log_integral, dyadic_blocks
from .rearrangement import StepFn
from .young import YoungFn, modify_near_zero

EXACT = "exact-asymptotic"
NUMERIC = "numeric"

FIT_START = 10
DELTA_FLOOR = 0.01
BETA_TOL = 0.01
RESID_TOL = 0.05


class State(str, enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Verdict:
    state: State
    mode: str
    condition_id: str
    evidence: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "state", State(self.state))
        if self.state is State.INCONCLUSIVE and self.mode != NUMERIC:
            raise ValueError("only numeric verdicts may be inconclusive")

    @property
    def holds(self) -> bool:
        return self.state is State.HOLDS

    def to_dict(self) -> dict:
        return {"state": self.state.value, "mode": self.mode, "condition_id": self.condition_id,
                "evidence": _jsonable(self.evidence)}

    @classmethod
    def from_dict(cls, d: dict) -> "Verdict":
        return cls(State(d["state"]), d["mode"], d["condition_id"], d.get("evidence", {}))


@dataclass(frozen=True)
class EmbeddingReport:
    continuous: Verdict
    almost_compact: Verdict
    theorem_path: str
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.almost_compact.holds and not self.continuous.holds:
            raise ValueError("an almost-compact embedding is always continuous")

    def to_dict(self) -> dict:
        return {"continuous": self.continuous.to_dict(),
                "almost_compact": self.almost_compact.to_dict(),
                "theorem_path": self.theorem_path,
                "parameters": _jsonable(self.parameters)}

    @classmethod
    def from_dict(cls, d: dict) -> "EmbeddingReport":
        return cls(Verdict.from_dict(d["continuous"]), Verdict.from_dict(d["almost_compact"]),
                   d["theorem_path"], d.get("parameters", {}))


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, float)):
        x = float(x)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return x
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, enum.Enum):
        return x.value
    return x


# -- numeric tail detector --------------------------------------------------


def _fit(y, cols):
    X = np.column_stack(cols)
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ coef
    dof = max(len(y) - X.shape[1], 1)
    s2 = float(resid @ resid) / dof
    try:
        cov = s2 * np.linalg.inv(X.T @ X)
        se = np.sqrt(np.maximum(np.diag(cov), 0.0))
    except np.linalg.LinAlgError:
        se = np.full(X.shape[1], np.inf)
    return coef, se, float(np.sqrt(s2))


def tail_decision(blocks: np.ndarray, mids: np.ndarray, start: int = FIT_START) -> tuple[State, dict]:
    """Classify ``sum_k J_k`` as convergent or divergent from its dyadic tail."""
    J = np.asarray(blocks[start:], dtype=float)
    u = np.asarray(mids[start:], dtype=float)
    ev = {"blocks": [float(b) for b in blocks], "fit_start": start}
    if np.isinf(J).any() or np.isnan(J).any():
        ev["reason"] = "infinite block"
        return State.FAILS, ev
    if J[-1] == 0.0 or np.all(J == 0):
        ev["reason"] = "integrand vanishes in the tail"
        return State.HOLDS, ev
    pos = J > 0
    if pos.sum() < 6:
        ev["reason"] = "too few positive blocks"
        return State.INCONCLUSIVE, ev
    y, u = np.log(J[pos]), u[pos]
    coef, se, rms = _fit(y, [np.ones_like(u), -u, -np.log(u)])
    delta, beta = float(coef[1]), float(coef[2])
    ev.update(delta=delta, delta_se=float(se[1]), beta=beta, rms=rms)
    thr = max(DELTA_FLOOR, 5.0 * float(se[1]))
    if delta > thr:
        return State.HOLDS, ev
    if delta < -thr:
        return State.FAILS, ev
    coef0, se0, rms0 = _fit(y, [np.ones_like(u), -np.log(u)])
    beta0 = float(coef0[1])
    ev.update(beta_at_zero_delta=beta0, rms_at_zero_delta=rms0)
    if rms0 > RESID_TOL:
        ev["reason"] = "tail is not log-power shaped"
        return State.INCONCLUSIVE, ev
    tol = max(BETA_TOL, 5.0 * float(se0[1]))
    if beta0 > 1 + tol:
        return State.HOLDS, ev
    if beta0 < 1 - tol:
        return State.FAILS, ev
    ev["reason"] = "boundary: log exponent indistinguishable from 1"
    return State.INCONCLUSIVE, ev


def _combine(states):
    if State.FAILS in states:
        return State.FAILS
    if State.INCONCLUSIVE in states:
        return State.INCONCLUSIVE
    return State.HOLDS


def _tail_start(A: YoungFn, mu_R: float) -> float:
    T = max(1.0, 1.0 / mu_R) if mu_R < INF else 1.0
    z = float(A.inverse(1e-300))  # A vanishes on [0, z]
    if z > 0 and math.isfinite(z):
        T = max(T, 2.0 * z)
    return T


def _numeric_integral(log_density: Callable, T: float, near_zero: bool, cid: str, extra: dict) -> Verdict:
    blocks, mids = dyadic_blocks(log_density, T)
    state, ev = tail_decision(blocks, mids)
    ev = {"infinity": ev, "lower_limit": T, **extra}
    states = [state]
    if near_zero:
        zb, zm = dyadic_blocks(log_density, 1.0, toward_zero=True)
        zstate, zev = tail_decision(zb, zm)
        ev["zero"] = zev
        states.append(zstate)
    return Verdict(_combine(states), NUMERIC, cid, ev)


def _check_mu(mu_R):
    mu_R = float(mu_R)
    if not mu_R > 0:
        raise ValueError("measure of the space must be positive")
    return mu_R


def _pick_mode(A: YoungFn, mode: str) -> str:
    if mode not in ("auto", "exact", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "numeric":
        return NUMERIC
    exact_ok = A.asymptotic is not None or A.is_capped
    if mode == "exact" and not exact_ok:
        raise ValueError("exact mode needs an asymptotic descriptor")
    return EXACT if exact_ok else NUMERIC


# -- Orlicz into Lorentz -----------------------------------------------------


def condition_integral_A(A: YoungFn, p: float, q: float, mu_R: float = 1.0, mode: str = "auto") -> Verdict:
    """Convergence of ``int_{1/mu}^inf (t^p / A(t))^{q/(p-q)} dt/t`` for ``1 <= q < p < inf``."""
    if not (1 <= q < p < INF):
        raise ValueError("the integral condition needs 1 <= q < p < inf")
    mu_R = _check_mu(mu_R)
    kappa = q / (p - q)
    infinite = math.isinf(mu_R)
    cid = "orlicz-lorentz-integral"
    m = _pick_mode(A, mode)
    params = {"p": p, "q": q, "exponent": kappa, "measure": mu_R}
    if m == EXACT:
        ev = dict(params)
        if A.is_capped:
            ev["note"] = "A takes the value inf, so L^A = L^inf"
            states = [State.HOLDS]
        else:
            rho, alpha = A.asymptotic
            ev.update(rho=rho, alpha=alpha, tail_exponent=(p - rho) * kappa - 1.0,
                      log_exponent=-alpha * kappa)
            if rho > p or (rho == p and alpha * kappa > 1):
                states = [State.HOLDS]
            else:
                states = [State.FAILS]
        if infinite:
            rho0 = A.near_zero_exponent
            ev["rho0"] = rho0
            states.append(State.HOLDS if rho0 < p else State.FAILS)
        return Verdict(_combine(states), EXACT, cid, ev)

    def log_density(t):
        with np.errstate(divide="ignore"):
            return kappa * (p * np.log(t) - np.log(np.asarray(A(t), dtype=float)))

    T = 1.0 if infinite else _tail_start(A, mu_R)
    return _numeric_integral(log_density, T, infinite, cid, params)


def condition_integral_dual(B: YoungFn, r: float, s: float, mu_R: float = 1.0, mode: str = "auto") -> Verdict:
    """Convergence of ``int_{1/mu}^inf (B(t)/t^r)^{s/(s-r)} dt/t``; the exponent is 1 for ``s = inf``."""
    if not (1 < r < s <= INF):
        raise ValueError("the dual integral condition needs 1 < r < s <= inf")
    mu_R = _check_mu(mu_R)
    sigma = 1.0 if math.isinf(s) else s / (s - r)
    infinite = math.isinf(mu_R)
    cid = "lorentz-orlicz-integral"
    m = _pick_mode(B, mode)
    params = {"r": r, "s": s, "exponent": sigma, "measure": mu_R}
    if m == EXACT:
        ev = dict(params)
        if B.is_capped:
            ev["note"] = "B takes the value inf; the integrand is infinite near infinity"
            states = [State.FAILS]
        else:
            rho, alpha = B.asymptotic
            ev.update(rho=rho, alpha=alpha, tail_exponent=(rho - r) * sigma - 1.0,
                      log_exponent=alpha * sigma)
            if rho < r or (rho == r and alpha * sigma < -1):
                states = [State.HOLDS]
            else:
                states = [State.FAILS]
        if infinite:
            rho0 = B.near_zero_exponent
            ev["rho0"] = rho0
            states.append(State.HOLDS if rho0 > r else State.FAILS)
        return Verdict(_combine(states), EXACT, cid, ev)

    def log_density(t):
        with np.errstate(divide="ignore"):
            return sigma * (np.log(np.asarray(B(t), dtype=float)) - r * np.log(t))

    T = 1.0 if infinite else max(1.0, 1.0 / mu_R)
    return _numeric_integral(log_density, T, infinite, cid, params)


def _growth_numeric(log_ratio: Callable) -> tuple[State, dict]:
    """Decide ``log_ratio(t) -> +inf`` along ``t = 2^k``; False when it settles to a constant."""
    k = np.arange(10, 61, dtype=float)
    t = 2.0**k
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        h = np.asarray(log_ratio(t), dtype=float)
    ev = {"log_ratio": [float(x) for x in h]}
    if np.isposinf(h[-10:]).all():
        return State.HOLDS, ev
    if np.isneginf(h[-10:]).all():
        return State.FAILS, ev
    ok = np.isfinite(h)
    if ok.sum() < 10:
        return State.INCONCLUSIVE, ev
    u = k[ok] * math.log(2.0)
    coef, se, rms = _fit(h[ok], [np.ones_like(u), u, np.log(u)])
    delta, beta = float(coef[1]), float(coef[2])
    ev.update(delta=delta, beta=beta, rms=rms)
    thr = max(DELTA_FLOOR, 5 * float(se[1]))
    if delta > thr:
        return State.HOLDS, ev
    if delta < -thr:
        return State.FAILS, ev
    coef0, se0, rms0 = _fit(h[ok], [np.ones_like(u), np.log(u)])
    beta0 = float(coef0[1])
    ev.update(beta_at_zero_delta=beta0, rms_at_zero_delta=rms0)
    if rms0 > RESID_TOL:
        return State.INCONCLUSIVE, ev
    if beta0 > 0.05:
        return State.HOLDS, ev
    if beta0 < -0.05:
        return State.FAILS, ev
    tail = h[ok][-10:]
    if float(np.ptp(tail)) < 1e-3:
        ev["reason"] = "ratio settles to a finite limit"
        return State.FAILS, ev
    return State.INCONCLUSIVE, ev


def _limit_state(A: YoungFn, p: float, mode: str) -> tuple[State, dict]:
    if not p < INF:
        raise ValueError("the limit condition needs p < inf")
    m = _pick_mode(A, mode)
    if A.is_capped:
        return State.HOLDS, {"note": "A takes the value inf"}
    if m == EXACT:
        rho, alpha = A.asymptotic
        ok = rho > p or (rho == p and alpha > 0)
        return (State.HOLDS if ok else State.FAILS), {"rho": rho, "alpha": alpha}
    return _growth_numeric(lambda t: np.log(np.asarray(A(t), dtype=float)) - p * np.log(t))


def _limit_state_dual(B: YoungFn, r: float, mode: str) -> tuple[State, dict]:
    if not r > 1:
        raise ValueError("the dual limit condition needs r > 1")
    m = _pick_mode(B, mode)
    if B.is_capped:
        return State.FAILS, {"note": "B takes the value inf"}
    if m == EXACT:
        rho, alpha = B.asymptotic
        ok = rho < r or (rho == r and alpha < 0)
        return (State.HOLDS if ok else State.FAILS), {"rho": rho, "alpha": alpha}
    return _growth_numeric(lambda t: r * np.log(t) - np.log(np.asarray(B(t), dtype=float)))


def limit_condition(A: YoungFn, p: float, mode: str = "auto") -> bool:
    """Whether ``A(t)/t^p -> inf``; raises :class:`InconclusiveError` when undecidable."""
    state, ev = _limit_state(A, p, mode)
    if state is State.INCONCLUSIVE:
        raise InconclusiveError(f"growth of A(t)/t^{p} undecided")
    return state is State.HOLDS


def limit_condition_dual(B: YoungFn, r: float, mode: str = "auto") -> bool:
    """Whether ``t^r / B(t) -> inf``."""
    state, ev = _limit_state_dual(B, r, mode)
    if state is State.INCONCLUSIVE:
        raise InconclusiveError(f"growth of t^{r}/B(t) undecided")
    return state is State.HOLDS


def _limit_verdict(fn, young: YoungFn, index: float, cid: str, mode: str) -> Verdict:
    state, ev = fn(young, index, mode)
    return Verdict(state, _pick_mode(young, mode), cid, ev)


def _growth_at_least(A: YoungFn, p: float, mu_R: float, mode: str) -> Verdict:
    """``A(t) >= c t^p`` for large ``t`` (and small ``t`` on infinite measure)."""
    cid = "growth-comparison"
    m = _pick_mode(A, mode)
    ev = {"p": p, "note": "outside the theorems: L^A into L^{p,q} with p <= q iff A dominates t^p"}
    states = []
    if A.is_capped:
        states.append(State.HOLDS)
    elif m == EXACT:
        rho, alpha = A.asymptotic
        ev.update(rho=rho, alpha=alpha)
        states.append(State.HOLDS if (rho > p or (rho == p and alpha >= 0)) else State.FAILS)
    else:
        st, gev = _growth_numeric(lambda t: np.log(np.asarray(A(t), dtype=float)) - p * np.log(t))
        if st is State.FAILS and gev.get("reason") == "ratio settles to a finite limit":
            st = State.HOLDS
        ev["growth"] = gev
        states.append(st)
    if math.isinf(mu_R):
        rho0 = A.near_zero_exponent
        ev["rho0"] = rho0
        states.append(State.HOLDS if rho0 <= p else State.FAILS)
    return Verdict(_combine(states), m, cid, ev)


def _growth_at_most(B: YoungFn, r: float, mu_R: float, mode: str) -> Verdict:
    """``B(t) <= c t^r`` for large ``t`` (and small ``t`` on infinite measure)."""
    cid = "growth-comparison"
    m = _pick_mode(B, mode)
    ev = {"r": r, "note": "outside the theorems: L^{r,s} into L^B with s <= r iff B is dominated by t^r"}
    states = []
    if B.is_capped:
        states.append(State.FAILS)
    elif m == EXACT:
        rho, alpha = B.asymptotic
        ev.update(rho=rho, alpha=alpha)
        states.append(State.HOLDS if (rho < r or (rho == r and alpha <= 0)) else State.FAILS)
    else:
        st, gev = _growth_numeric(lambda t: r * np.log(t) - np.log(np.asarray(B(t), dtype=float)))
        if st is State.FAILS and gev.get("reason") == "ratio settles to a finite limit":
            st = State.HOLDS
        ev["growth"] = gev
        states.append(st)
    if math.isinf(mu_R):
        rho0 = B.near_zero_exponent
        ev["rho0"] = rho0
        states.append(State.HOLDS if rho0 >= r else State.FAILS)
    return Verdict(_combine(states), m, cid, ev)


_HILL = "infinite measure: the almost-compact embedding can never hold (traveling hill)"


def _fails(cid: str, mode: str, note: str, **extra) -> Verdict:
    return Verdict(State.FAILS, mode, cid, {"note": note, **extra})


def _holds(cid: str, mode: str, note: str, **extra) -> Verdict:
    return Verdict(State.HOLDS, mode, cid, {"note": note, **extra})


def _check_index(x, name):
    x = float(x)
    if not (1 <= x <= INF):
        raise ValueError(f"{name} must lie in [1, inf], got {x}")
    return x


def classify_orlicz_into_lorentz(A: YoungFn, p: float, q: float, mu_R: float = 1.0,
                                 mode: str = "auto") -> EmbeddingReport:
    """Continuous and almost-compact embedding of ``L^A`` into ``L^{p,q}``."""
    p, q = _check_index(p, "p"), _check_index(q, "q")
    mu_R = _check_mu(mu_R)
    finite = math.isfinite(mu_R)
    params = {"young": A.name, "p": p, "q": q, "measure": mu_R}
    m = _pick_mode(A, mode)
    if q < p < INF:
        cont = condition_integral_A(A, p, q, mu_R, mode)
        if finite:
            ac = Verdict(cont.state, cont.mode, cont.condition_id, {"same_as": "continuous"})
        else:
            ac = _fails("infinite-measure-remark", cont.mode, _HILL)
        return EmbeddingReport(cont, ac, "orlicz-lorentz/A (q < p)", params)
    if math.isinf(p):
        ac = _fails("no-ace-into-Linf", EXACT, "no Young function gives an almost-compact embedding into L^inf")
        if math.isinf(q) and A.is_capped:
            cont = _holds("Linf-identity", EXACT, "A takes the value inf, so L^A = L^inf")
        elif math.isinf(q):
            cont = _fails("Linf-identity", EXACT, "L^A is contained in L^inf only when A jumps to inf")
        else:
            cont = _fails("trivial-target", EXACT, "L^{inf,q} with q < inf contains only 0")
        return EmbeddingReport(cont, ac, "orlicz-lorentz/p=inf", params)
    # p <= q, p < inf
    cont = _growth_at_least(A, p, mu_R, mode)
    if finite:
        ac = _limit_verdict(_limit_state, A, p, "orlicz-lorentz-limit", mode)
    else:
        ac = _fails("infinite-measure-remark", m, _HILL)
    if ac.holds and not cont.holds:
        cont = _holds("growth-comparison", ac.mode, "implied by the almost-compact verdict")
    return EmbeddingReport(cont, ac, "orlicz-lorentz/B (p <= q)", params)


def classify_lorentz_into_orlicz(B: YoungFn, r: float, s: float, mu_R: float = 1.0,
                                 mode: str = "auto") -> EmbeddingReport:
    """Continuous and almost-compact embedding of ``L^{r,s}`` into ``L^B``."""
    if 0 < float(r) < 1:
        raise ValueError("no Lorentz space L^{r,s} with r in (0,1) embeds into an Orlicz space")
    r, s = _check_index(r, "r"), _check_index(s, "s")
    mu_R = _check_mu(mu_R)
    finite = math.isfinite(mu_R)
    params = {"young": B.name, "r": r, "s": s, "measure": mu_R}
    m = _pick_mode(B, mode)
    if 1 < r < s:
        cont = condition_integral_dual(B, r, s, mu_R, mode)
        if finite:
            ac = Verdict(cont.state, cont.mode, cont.condition_id, {"same_as": "continuous"})
        else:
            ac = _fails("infinite-measure-remark", cont.mode, _HILL)
        return EmbeddingReport(cont, ac, "lorentz-orlicz/A (r < s)", params)
    if r == 1 and s > 1:
        note = "L^{1,s} with s > 1 is not contained in L^1, hence in no Orlicz space"
        return EmbeddingReport(_fails("r-equals-1", EXACT, note), _fails("r-equals-1", EXACT, note),
                               "lorentz-orlicz/r=1", params)
    if math.isinf(r):
        if not math.isinf(s):
            raise ValueError("L^{inf,s} with s < inf is trivial; nothing to classify")
        if finite:
            cont = _holds("Linf-source", EXACT, "L^inf embeds in every Orlicz space on a finite measure space")
            if B.is_capped:
                ac = _fails("Linf-source", EXACT, "L^B = L^inf")
            else:
                ac = _holds("Linf-source", EXACT, "B is finite-valued, so L^B differs from L^inf")
        else:
            vanish = float(B.inverse(1e-300)) > 0
            cont = (_holds if vanish else _fails)("Linf-source", EXACT,
                                                  "needs B to vanish near zero on infinite measure")
            ac = _fails("infinite-measure-remark", EXACT, _HILL)
        return EmbeddingReport(cont, ac, "lorentz-orlicz/r=inf", params)
    # s <= r < inf
    cont = _growth_at_most(B, r, mu_R, mode)
    if not finite:
        ac = _fails("infinite-measure-remark", m, _HILL)
    elif r == 1:
        ac = _fails("lorentz-orlicz-limit", EXACT, "the limit condition requires r > 1")
    else:
        ac = _limit_verdict(_limit_state_dual, B, r, "lorentz-orlicz-limit", mode)
    if ac.holds and not cont.holds:
        cont = _holds("growth-comparison", ac.mode, "implied by the almost-compact verdict")
    return EmbeddingReport(cont, ac, "lorentz-orlicz/B (s <= r)", params)


# -- Sobolev reduction --------------------------------------------------------


def sobolev_exponent(n: int, p: float) -> float:
    """``p* = n p / (n - p)``."""
    if not (1 < p < n):
        raise ValueError("need 1 < p < n (p = 1 and p = n are the excluded limiting cases)")
    return n * p / (n - p)


def sobolev_corollary(young: YoungFn, n: int, p: float, q: float, side: str = "domain",
                      measure: float = 1.0, mode: str = "auto") -> EmbeddingReport:
    """Continuous and compact Sobolev embeddings on a bounded domain of measure ``measure``.

    ``side="domain"``: ``W^1 L^A`` into ``L^{p*,q}`` with ``q < p``, decided by the
    Orlicz-into-Lorentz integral with ``(p, q)``.  ``side="target"``:
    ``W^1 L^{p,q}`` into ``L^B`` with ``q > p*``, decided by the dual integral with
    ``(r, s) = (p*, q)``.  Both embeddings get the same verdict.
    """
    if int(n) != n or n < 2:
        raise ValueError("dimension must be an integer >= 2")
    pstar = sobolev_exponent(n, p)
    params = {"young": young.name, "n": n, "p": p, "q": q, "p_star": pstar, "side": side,
              "measure": measure}
    if side == "domain":
        if not (1 <= q < p):
            raise ValueError("domain side needs q in [1, p)")
        v = condition_integral_A(young, p, q, measure, mode)
    elif side == "target":
        if not (pstar < q <= INF):
            raise ValueError("target side needs q in (p*, inf]")
        v = condition_integral_dual(young, pstar, q, measure, mode)
        if math.isinf(q):
            params["exponent_interpretation"] = "q/(q - p*) read as 1"
    else:
        raise ValueError("side must be 'domain' or 'target'")
    compact = Verdict(v.state, v.mode, v.condition_id,
                      {"note": "compact and continuous Sobolev embeddings coincide here"})
    return EmbeddingReport(v, compact, f"sobolev/{side}", params)


# -- modular inequality ----------------------------------------------------------


@dataclass(frozen=True)
class ProbeResult:
    estimate: float
    maximizer: StepFn
    trials: int
    young_used: str


def random_stepfn(rng: np.random.Generator, total_measure: float = 1.0, max_atoms: int = 50,
                  value_range=(1e-3, 1e3)) -> StepFn:
    """Random step function: 1..max_atoms atoms, log-uniform values and weights."""
    n = int(rng.integers(1, max_atoms + 1))
    lv = rng.uniform(math.log(value_range[0]), math.log(value_range[1]), n)
    w = np.exp(rng.uniform(math.log(1e-3), 0.0, n))
    if math.isfinite(total_measure):
        w = w / w.sum() * total_measure * float(rng.uniform(0.05, 1.0))
    atoms = tuple(zip(np.exp(lv).tolist(), w.tolist()))
    tm = total_measure if math.isfinite(total_measure) else float(w.sum())
    return StepFn(atoms, tm)


def modular_inequality_probe(A: YoungFn, p: float, q: float, trials: int = 1000, seed: int = 0,
                             mu_R: float = 1.0, modify: bool = True) -> ProbeResult:
    """Empirical lower bound for ``C`` in ``||f||_{p,q} <= C rho_A(f)^{1/p}``.

    On a finite measure space the inequality can only hold after ``A`` is
    replaced near zero (small constant functions would break it otherwise),
    so ``modify`` applies :func:`modify_near_zero` first.
    """
    if not (1 <= q < p < INF):
        raise ValueError("the modular inequality is studied for 1 <= q < p < inf")
    A1 = modify_near_zero(A, p, q) if (modify and math.isfinite(mu_R)) else A
    rng = np.random.default_rng(seed)
    best, best_f = 0.0, None
    for _ in range(trials):
        f = random_stepfn(rng, mu_R)
        ratio = probe_ratio(A1, p, q, f)
        if ratio > best:
            best, best_f = ratio, f
    return ProbeResult(best, best_f, trials, A1.name)


def probe_ratio(A: YoungFn, p: float, q: float, f: StepFn) -> float:
    rho = orlicz_modular(A, f)
    num = lorentz_norm(p, q, f)
    if rho == 0:
        return INF if num > 0 else 0.0
    return num / rho ** (1.0 / p)


def divergence_witness(A: YoungFn, p: float, q: float, n: int, substeps: int = 4,
                       mu_R: float = 1.0) -> StepFn:
    """Step function whose ratio ``||f||_{p,q} / rho_A(f)^{1/p}`` grows with ``n``.

    The distribution function follows ``h(v) = (v^{q-1}/a(v))^{p/(p-q)}`` at the
    levels ``v_j = 2^{j/substeps}``, ``0 <= j <= n substeps``; with this choice
    the Lorentz integrand and the modular integrand both equal the integrand of
    the integral condition, so the ratio tracks its partial integral over
    ``[1, 2^n]``.  Weights are rescaled to modular 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    verdict = condition_integral_A(A, p, q, mu_R)
    if verdict.holds:
        raise ValueError("the integral condition holds; no divergence witness exists")
    levels = 2.0 ** (np.arange(n * substeps + 1) / substeps)
    with np.errstate(divide="ignore"):
        h = (levels ** (q - 1) / np.asarray(A.a(levels), dtype=float)) ** (p / (p - q))
    h = np.minimum.accumulate(np.where(np.isfinite(h), h, np.nan_to_num(h, posinf=1e300)))
    weights = -np.diff(np.concatenate([h, [0.0]]))
    keep = weights > 0
    atoms = list(zip(levels[keep].tolist(), weights[keep].tolist()))
    f = StepFn(tuple(atoms), float(weights.sum()))
    rho = orlicz_modular(A, f)
    if not (0 < rho < INF):
        raise ValueError("could not normalize the witness")
    w = weights[keep] / rho
    return StepFn(tuple(zip(levels[keep].tolist(), w.tolist())), float(w.sum()))


# -- dual Fubini chain ---------------------------------------------------------------


@dataclass(frozen=True)
class ChainStats:
    windows: list
    primal: list
    dual: list
    ratios: list
    same_window_ratios: list

    @property
    def spread(self) -> float:
        r = np.asarray(self.ratios)
        return float(r.max() / r.min())

    @property
    def max_step(self) -> float:
        r = np.asarray(self.ratios)
        if r.size < 2:
            return 1.0
        s = r[1:] / r[:-1]
        return float(np.max(np.maximum(s, 1 / s)))


def dual_reduction_check(B: YoungFn, r: float, s: float, windows) -> ChainStats:
    """Compare the two ends of the duality chain over each window ``(T1, T2)``.

    With ``(p, q) = (r', s')`` the first end is
    ``int (t^p / (t b^{-1}(t)))^{q/(p-q)} dt/t`` and the last is
    ``int (B(t)/t^r)^{s/(s-r)} dt/t``.  The chain substitutes ``t = b(tau)``,
    so the first integral is taken over ``[b(T1), b(T2)]`` when the second is
    over ``[T1, T2]``; the literal same-window ratio is reported alongside.
    """
    if not (1 < r < s <= INF):
        raise ValueError("need 1 < r < s <= inf")
    if B.is_capped:
        raise ValueError("B must be finite-valued")
    p = r / (r - 1.0)
    q = 1.0 if math.isinf(s) else s / (s - 1.0)
    kappa = q / (p - q)
    sigma = 1.0 if math.isinf(s) else s / (s - r)
    b = B.derivative
    binv = invert_nondecreasing(b)

    def first(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            return (t ** (p - 1) / np.asarray(binv(t), dtype=float)) ** kappa / t

    def last(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(over="ignore"):
            return (np.asarray(B(t), dtype=float) / t**r) ** sigma / t

    wins, prim, dual, ratios, same = [], [], [], [], []
    for T1, T2 in windows:
        T1, T2 = float(T1), float(T2)
        if not T2 > T1 > 0:
            raise ValueError(f"degenerate window ({T1}, {T2})")
        b1, b2 = float(b(T1)), float(b(T2))
        lo_i = int(np.searchsorted(b.breaks, T1, side="right") - 1)
        hi_i = int(np.searchsorted(b.breaks, T2, side="right") - 1)
        if not b2 > b1 or any(isinstance(b.segments[i], Const) for i in range(lo_i, hi_i + 1)):
            raise ValueError("b is not invertible on the window")
        I_last = adaptive_log_integral(last, T1, T2).value
        I_first = adaptive_log_integral(first, b1, b2).value
        I_first_same = adaptive_log_integral(first, T1, T2).value
        wins.append((T1, T2))
        prim.append(I_first)
        dual.append(I_last)
        ratios.append(I_first / I_last)
        same.append(I_first_same / I_last)
    return ChainStats(wins, prim, dual, ratios, same)


__all__ = [
    "State", "Verdict", "EmbeddingReport", "InconclusiveError", "EXACT", "NUMERIC",
    "tail_decision", "condition_integral_A", "condition_integral_dual", "limit_condition",
    "limit_condition_dual", "classify_orlicz_into_lorentz", "classify_lorentz_into_orlicz",
    "sobolev_exponent", "sobolev_corollary", "modular_inequality_probe", "probe_ratio",
    "random_stepfn", "divergence_witness", "dual_reduction_check", "ProbeResult", "ChainStats",
]
