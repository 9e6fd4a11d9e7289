import json
import math

import numpy as np
import pytest

from orlicz_lorentz.criteria import (EXACT, NUMERIC, EmbeddingReport, State, Verdict, classify_lorentz_into_orlicz,
                                     classify_orlicz_into_lorentz, condition_integral_A, condition_integral_dual,
                                     divergence_witness, dual_reduction_check, limit_condition,
                                     limit_condition_dual, modular_inequality_probe, probe_ratio, sobolev_corollary,
                                     sobolev_exponent, tail_decision)
from orlicz_lorentz.extended import INF
from orlicz_lorentz.functionals import InconclusiveError
from orlicz_lorentz.lab import weak_lorentz_limit
from orlicz_lorentz.rearrangement import StepFn
from orlicz_lorentz.young import cap_at, exp_minus_one, modify_near_zero, piecewise, power, power_log


def agree(exact: Verdict, numeric: Verdict) -> bool:
    return numeric.state is State.INCONCLUSIVE or numeric.state is exact.state


# -- integral conditions --------------------------------------------------------------


@pytest.mark.parametrize("r", [1.5, 2.0, 2.5, 3.0])
def test_condition_A_power(r):
    v = condition_integral_A(power(r), 2.0, 1.0, mode="exact")
    assert v.holds == (r > 2.0) and v.mode == EXACT
    assert agree(v, condition_integral_A(power(r), 2.0, 1.0, mode="numeric"))


@pytest.mark.parametrize("alpha,expect", [(0.5, False), (1.5, True), (3.0, True)])
def test_condition_A_powlog(alpha, expect):
    v = condition_integral_A(power_log(2.0, alpha), 2.0, 1.0, mode="exact")
    assert v.holds == expect
    n = condition_integral_A(power_log(2.0, alpha), 2.0, 1.0, mode="numeric")
    assert n.state is v.state


def test_condition_A_cap_and_errors():
    for p, q in ((2, 1), (5, 3), (1.5, 1)):
        assert condition_integral_A(cap_at(1.0), p, q).holds
    with pytest.raises(ValueError):
        condition_integral_A(power(3), 2.0, 2.0)
    with pytest.raises(ValueError):
        condition_integral_A(power(3), 2.0, 3.0)


def test_condition_A_numeric_only_families():
    assert condition_integral_A(exp_minus_one(), 2.0, 1.0).state is State.HOLDS
    assert condition_integral_A(exp_minus_one(), 2.0, 1.0).mode == NUMERIC
    # derivative grows linearly: A ~ t^2 at infinity, ties p = 2
    assert condition_integral_A(piecewise([(0, 0), (1, 1), (2, 3)]), 2.0, 1.0).state is State.FAILS


def test_numeric_evidence_is_auditable():
    v = condition_integral_A(power(3), 2.0, 1.0, mode="numeric")
    assert len(v.evidence["infinity"]["blocks"]) == 41
    json.dumps(v.to_dict())


def test_condition_dual_examples():
    assert condition_integral_dual(power(1.5), 2.0, 4.0).holds
    assert not condition_integral_dual(power(2.0), 2.0, 4.0).holds
    for alpha, expect in ((-2.0, True), (-0.5, False), (1.0, False)):
        v = condition_integral_dual(power_log(2.0, alpha), 2.0, INF, mode="exact")
        assert v.holds == expect
        assert v.evidence["exponent"] == 1.0
        assert agree(v, condition_integral_dual(power_log(2.0, alpha), 2.0, INF, mode="numeric"))
    with pytest.raises(ValueError):
        condition_integral_dual(power(1.5), 1.0, 4.0)
    with pytest.raises(ValueError):
        condition_integral_dual(power(1.5), 3.0, 2.0)


def test_tail_decision_synthetic():
    k = np.arange(41)
    mids = (k + 0.5) * math.log(2)
    assert tail_decision(0.7**k, mids)[0] is State.HOLDS
    assert tail_decision(np.ones(41), mids)[0] is State.FAILS
    assert tail_decision(1.0 / mids**2, mids)[0] is State.HOLDS
    assert tail_decision(1.0 / mids**0.5, mids)[0] is State.FAILS
    blocks = np.ones(41)
    blocks[20] = INF
    assert tail_decision(blocks, mids)[0] is State.FAILS
    assert tail_decision(1.0 / mids, mids)[0] is State.INCONCLUSIVE


# -- limit conditions ------------------------------------------------------------------


@pytest.mark.parametrize("mode", ["exact", "numeric"])
def test_limit_condition(mode):
    p = 2.0
    assert limit_condition(power(p), p, mode=mode) is False
    assert limit_condition(power_log(p, 1.0), p, mode=mode) is True
    assert limit_condition(power(p + 0.1), p, mode=mode) is True


@pytest.mark.parametrize("mode", ["exact", "numeric"])
def test_limit_condition_dual(mode):
    r = 2.0
    assert limit_condition_dual(power(r), r, mode=mode) is False
    assert limit_condition_dual(power(r - 0.1), r, mode=mode) is True
    assert limit_condition_dual(power_log(r, -1.0), r, mode=mode) is True


def test_limit_numeric_only():
    assert limit_condition(exp_minus_one(), 3.0) is True
    assert limit_condition(cap_at(1.0), 3.0) is True
    with pytest.raises(ValueError):
        limit_condition(power(2), INF)
    with pytest.raises(ValueError):
        limit_condition_dual(power(2), 1.0)


def test_limit_inconclusive_is_an_error():
    # slope alternates between t and 2t at knots 4^k, so A(t)/t^2 oscillates without settling
    knots = [(0.0, 0.0)] + [(4.0**k, (2.0 if k % 2 else 1.0) * 4.0**k) for k in range(0, 40)]
    A = piecewise(knots)
    # the bounded ratio is compatible with the descriptor (2, 0), so exact mode answers False
    assert limit_condition(A, 2.0) is False
    with pytest.raises(InconclusiveError):
        limit_condition(A, 2.0, mode="numeric")
    rep = classify_orlicz_into_lorentz(A, 2.0, 3.0, mode="numeric")
    assert rep.almost_compact.state is State.INCONCLUSIVE
    assert len(rep.almost_compact.evidence["log_ratio"]) == 51


@pytest.mark.parametrize("B", [power(1.5), power(2.0), power(3.0), power_log(2.0, -1.0), power_log(3.0, 2.0)],
                         ids=lambda b: b.name)
@pytest.mark.parametrize("r", [1.5, 2.0, 3.0])
def test_duality_coherence(B, r):
    rp = r / (r - 1)
    assert limit_condition_dual(B, r) == limit_condition(B.conjugate(), rp)


@pytest.mark.parametrize("A", [power(2.0), power(3.0), power_log(2.0, 1.0), power_log(2.0, -1.0), exp_minus_one()],
                         ids=lambda a: a.name)
def test_theorem_b_coherence(A):
    p = 2.0
    lim = limit_condition(A, p)
    w = weak_lorentz_limit(A, p)
    assert (w == 0.0) == lim


# -- classifiers ---------------------------------------------------------------------


def test_classify_examples():
    r = classify_orlicz_into_lorentz(power(3), 2, 1, 1)
    assert r.continuous.holds and r.almost_compact.holds
    r = classify_orlicz_into_lorentz(power(2), 2, 3, 1)
    assert r.almost_compact.state is State.FAILS and r.continuous.holds
    r = classify_orlicz_into_lorentz(cap_at(1.0), 2, 1, 1)
    assert r.continuous.holds and r.almost_compact.holds


def test_classify_infinite_measure():
    # near zero t^3 is too small for L^{2,1}: the lower end of the integral diverges
    r = classify_orlicz_into_lorentz(power(3), 2, 1, INF)
    assert r.almost_compact.state is State.FAILS
    assert "traveling hill" in r.almost_compact.evidence["note"]
    assert r.continuous.state is State.FAILS
    assert r.continuous.evidence["rho0"] == 3.0
    # linear near zero and cubic at infinity: both ends of the integral converge
    A = modify_near_zero(power(3), 2, 1)
    rep = classify_orlicz_into_lorentz(A, 2, 1, INF)
    assert rep.continuous.state is State.HOLDS
    assert rep.almost_compact.state is State.FAILS


def test_classify_p_infinite():
    r = classify_orlicz_into_lorentz(cap_at(1.0), INF, INF)
    assert r.continuous.holds and not r.almost_compact.holds
    r = classify_orlicz_into_lorentz(power(5), INF, INF)
    assert not r.continuous.holds and not r.almost_compact.holds
    with pytest.raises(ValueError):
        classify_orlicz_into_lorentz(power(2), 0.5, 1)


def test_classify_dual_examples():
    r = classify_lorentz_into_orlicz(power(1.5), 2, INF, 1)
    assert r.continuous.holds and r.almost_compact.holds
    r = classify_lorentz_into_orlicz(power(2), 2, 1, 1)
    assert r.almost_compact.state is State.FAILS
    r = classify_lorentz_into_orlicz(power(1.5), 2, 4, 1)
    assert r.continuous.holds and r.almost_compact.holds
    with pytest.raises(ValueError):
        classify_lorentz_into_orlicz(power(1.5), 0.5, 2)
    r = classify_lorentz_into_orlicz(power(1.5), 1, 2)
    assert not r.continuous.holds
    r = classify_lorentz_into_orlicz(power(4), INF, INF)
    assert r.continuous.holds and r.almost_compact.holds
    r = classify_lorentz_into_orlicz(cap_at(1.0), INF, INF)
    assert r.continuous.holds and not r.almost_compact.holds


def test_report_invariants_and_roundtrip():
    h = Verdict(State.HOLDS, EXACT, "x")
    f = Verdict(State.FAILS, EXACT, "x")
    with pytest.raises(ValueError):
        EmbeddingReport(f, h, "path")
    with pytest.raises(ValueError):
        Verdict(State.INCONCLUSIVE, EXACT, "x")
    rep = classify_orlicz_into_lorentz(power(3), 2, 1, 1, mode="numeric")
    d = json.loads(json.dumps(rep.to_dict()))
    back = EmbeddingReport.from_dict(d)
    assert back.to_dict() == rep.to_dict()


# -- Sobolev ----------------------------------------------------------------------------


def test_sobolev():
    assert sobolev_exponent(3, 2) == 6.0
    dom = sobolev_corollary(power(2.5), 3, 2, 1, side="domain")
    assert dom.continuous.state is condition_integral_A(power(2.5), 2, 1).state
    assert dom.continuous.holds
    tgt = sobolev_corollary(power(5), 3, 2, INF, side="target")
    assert tgt.continuous.evidence["exponent"] == 1.0
    assert tgt.continuous.holds
    assert tgt.parameters["p_star"] == 6.0
    for bad in ((3, 3), (3, 1)):
        with pytest.raises(ValueError):
            sobolev_exponent(*bad)


# -- modular inequality ----------------------------------------------------------------


def test_probe_single_atom_closed_form():
    p, q, v, m = 2.0, 1.0, 3.0, 0.25
    A = power(3)
    f = StepFn(((v, m),), 1.0)
    expect = (p / q) ** (1 / q) * m ** (1 / p) * v / (float(A(v)) * m) ** (1 / p)
    assert probe_ratio(A, p, q, f) == pytest.approx(expect, rel=1e-12)


def test_probe_bounded_when_condition_holds():
    a = modular_inequality_probe(power(3), 2.0, 1.0, trials=1000, seed=1)
    b = modular_inequality_probe(power(3), 2.0, 1.0, trials=4000, seed=1)
    assert b.estimate >= a.estimate
    assert b.estimate <= 1.05 * a.estimate
    assert math.isfinite(b.estimate)


def test_witness_grows_when_condition_fails():
    for A in (power(2.0), power_log(2.0, 1.0)):
        ratios = [probe_ratio(A, 2.0, 1.0, divergence_witness(A, 2.0, 1.0, n)) for n in (1, 2, 4, 8, 16)]
        assert all(b > a for a, b in zip(ratios, ratios[1:]))
    with pytest.raises(ValueError):
        divergence_witness(power(3.0), 2.0, 1.0, 5)


def test_witness_normalized():
    f = divergence_witness(power(2.0), 2.0, 1.0, 6)
    from orlicz_lorentz.functionals import orlicz_modular
    assert orlicz_modular(power(2.0), f) == pytest.approx(1.0, rel=1e-12)


# -- Fubini chain ------------------------------------------------------------------------


def test_dual_chain():
    wins = [(10.0**k, 10.0 ** (k + 2)) for k in range(1, 6)]
    st = dual_reduction_check(power(1.5), 2.0, 4.0, wins)
    assert 0.1 <= min(st.ratios) and max(st.ratios) <= 10
    assert st.max_step <= 2
    st = dual_reduction_check(power_log(1.5, 1.0), 2.0, 4.0, wins)
    assert st.spread < 10 and st.max_step <= 2
    with pytest.raises(ValueError):
        dual_reduction_check(power(1.5), 2.0, 4.0, [(10.0, 10.0)])
