"""The twelve acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line; the lines are repeated in the
terminal summary.  Criteria 8 and 10 contain thresholds that are out of
reach for the stated inputs and are left failing (see the project notes).
"""

import math

import numpy as np
import pytest

from orlicz_lorentz.criteria import (State, condition_integral_A, condition_integral_dual, divergence_witness,
                                     dual_reduction_check, probe_ratio, random_stepfn, sobolev_corollary,
                                     sobolev_exponent)
from orlicz_lorentz.extended import INF
from orlicz_lorentz.functionals import lorentz_forms, luxemburg_norm, modular_forms
from orlicz_lorentz.lab import (DEFAULT_LAMBDA, almost_compactness_profile, chain_sides, layered_profiles,
                                proof_decomposition, young_inequality_trials, young_type_sides)
from orlicz_lorentz.monotone import Const, MonotoneFn
from orlicz_lorentz.rearrangement import StepFn
from orlicz_lorentz.young import cap_at, exp_minus_one, piecewise, power, power_log

from conftest import stock_families


def rel(x, y):
    if x == y:
        return 0.0
    return abs(x - y) / max(abs(x), abs(y))


def pq_pairs():
    """q in {1, p/2} with 1 <= q < p; p = 1.5 has p/2 < 1 and keeps only q = 1."""
    for p in (1.5, 2.0, 4.0):
        for q in sorted({1.0, p / 2}):
            if 1 <= q < p:
                yield p, q


def test_criterion_01_power_truth_table(acceptance_log):
    errors, bad_inconclusive, cases = [], [], 0
    for p, q in pq_pairs():
        for r in (p - 0.5, p - 0.1, p, p + 0.1, p + 0.5, p + 2):
            cases += 1
            A = power(r)
            ex = condition_integral_A(A, p, q, mode="exact")
            nu = condition_integral_A(A, p, q, mode="numeric")
            if ex.holds != (r > p):
                errors.append((p, q, r, "exact"))
            if nu.state is State.INCONCLUSIVE:
                if abs(r - p) > 0.05:
                    bad_inconclusive.append((p, q, r))
            elif nu.state is not ex.state:
                errors.append((p, q, r, "numeric"))
    ok = not errors and not bad_inconclusive
    acceptance_log(1, ok, f"{cases} power cases, {len(errors)} errors, "
                          f"{len(bad_inconclusive)} inconclusive outside |r-p|<=0.05")
    assert ok, (errors, bad_inconclusive)


def test_criterion_02_powerlog_boundary(acceptance_log):
    errors, cases = [], 0
    for p, q in pq_pairs():
        edge = (p - q) / q
        for off in (-1.0, -0.5, -0.2, 0.2, 0.5, 1.0):
            alpha = edge + off
            A = power_log(p, alpha)
            cases += 1
            ex = condition_integral_A(A, p, q, mode="exact")
            if ex.holds != (off > 0):
                errors.append((p, q, alpha, "exact"))
            nu = condition_integral_A(A, p, q, mode="numeric")
            if nu.state is not ex.state:  # all offsets lie outside the +-0.05 band
                errors.append((p, q, alpha, "numeric", nu.state.value))
        # exactly on the boundary the integral diverges
        if condition_integral_A(power_log(p, edge), p, q, mode="exact").holds:
            errors.append((p, q, edge, "boundary"))
    acceptance_log(2, not errors, f"{cases} power-log cases around alpha=(p-q)/q, {len(errors)} errors")
    assert not errors, errors


def test_criterion_03_dual_tables(acceptance_log):
    errors, bad_inconclusive, cases = [], [], 0
    for r in (1.5, 2.0, 4.0):
        for s in (2 * r, INF):
            for rho in (r - 0.5, r - 0.1, r, r + 0.1, r + 0.5):
                cases += 1
                B = power(rho)
                ex = condition_integral_dual(B, r, s, mode="exact")
                nu = condition_integral_dual(B, r, s, mode="numeric")
                if ex.holds != (rho < r):
                    errors.append((r, s, rho, "exact"))
                if nu.state is State.INCONCLUSIVE:
                    if abs(rho - r) > 0.05:
                        bad_inconclusive.append((r, s, rho))
                elif nu.state is not ex.state:
                    errors.append((r, s, rho, "numeric"))
            sigma = 1.0 if math.isinf(s) else s / (s - r)
            edge = -1.0 / sigma
            for off in (-0.5, -0.2, 0.2, 0.5):
                try:
                    B = power_log(r, edge + off)
                except ValueError:
                    continue
                cases += 1
                ex = condition_integral_dual(B, r, s, mode="exact")
                if ex.holds != (off < 0):
                    errors.append((r, s, edge + off, "exact-log"))
                nu = condition_integral_dual(B, r, s, mode="numeric")
                if nu.state is not ex.state:
                    errors.append((r, s, edge + off, "numeric-log", nu.state.value))
    ok = not errors and not bad_inconclusive
    acceptance_log(3, ok, f"{cases} dual cases (s = inf read with exponent 1), {len(errors)} errors, "
                          f"{len(bad_inconclusive)} inconclusive outside the band")
    assert ok, (errors, bad_inconclusive)


def test_criterion_04_conjugates(acceptance_log):
    grid = np.logspace(-3, 3, 200)
    worst = 0.0
    for A in stock_families().values():
        back = np.asarray(A.conjugate().conjugate()(grid))
        ref = np.asarray(A(grid))
        assert np.array_equal(np.isinf(back), np.isinf(ref))
        fin = np.isfinite(ref) & (ref > 0)
        worst = max(worst, float(np.max(np.abs(back[fin] - ref[fin]) / ref[fin])))
        worst = max(worst, float(np.max(np.abs(back[ref == 0]))) if np.any(ref == 0) else 0.0)
    rng = np.random.default_rng(2024)
    fams = list(stock_families().values()) + [cap_at(1.0), power(1.0)]
    conj = [A.conjugate() for A in fams]
    violations = 0
    for i in range(10_000):
        k = i % len(fams)
        s, t = np.exp(rng.uniform(-4, 4, 2))
        with np.errstate(over="ignore"):
            gap = float(fams[k](s)) + float(conj[k](t)) - s * t
        violations += gap < -1e-12
    ok = worst <= 1e-6 and violations == 0
    acceptance_log(4, ok, f"involution max rel err {worst:.2e}; Young's inequality violations {violations}/10000")
    assert ok


def test_criterion_05_luxemburg_closed_forms(acceptance_log):
    rng = np.random.default_rng(5)
    fams = list(stock_families().values()) + [cap_at(2.0), power(1.0), power(3.0)]
    worst_char, worst_ft = 0.0, 0.0
    for i in range(100):
        A = fams[i % len(fams)]
        m = float(np.exp(rng.uniform(math.log(1e-6), 0.0)))
        f = StepFn(((1.0, m),), 1.0)
        worst_char = max(worst_char, rel(luxemburg_norm(A, f), 1.0 / float(A.inverse(1.0 / m))))
        ft = StepFn(((float(A.inverse(1.0 / m)), m),), 1.0)
        worst_ft = max(worst_ft, abs(luxemburg_norm(A, ft) - 1.0))
    ok = worst_char <= 1e-8 and worst_ft <= 1e-8
    acceptance_log(5, ok, f"||chi_E|| rel err {worst_char:.1e}; ||f_t|| - 1 max {worst_ft:.1e} (100 cases)")
    assert ok


def test_criterion_06_two_formula_agreement(acceptance_log):
    rng = np.random.default_rng(6)
    fams = list(stock_families().values()) + [cap_at(50.0)]
    worst_mod, worst_lor = 0.0, 0.0
    for i in range(1000):
        f = random_stepfn(rng, float(np.exp(rng.uniform(-3, 3))))
        A = fams[i % len(fams)]
        s, d = modular_forms(A, f)
        worst_mod = max(worst_mod, 0.0 if (math.isinf(s) and math.isinf(d)) else rel(s, d))
        p, q = rng.uniform(1.0, 6.0, 2)
        a, b = lorentz_forms(p, q, f)
        worst_lor = max(worst_lor, rel(a, b))
    ok = worst_mod <= 1e-10 and worst_lor <= 1e-10
    acceptance_log(6, ok, f"modular rel gap {worst_mod:.1e}; Lorentz rel gap {worst_lor:.1e} (1000 step functions)")
    assert ok


def test_criterion_07_young_type_inequality(acceptance_log):
    log = young_inequality_trials(500, seed=7)
    violations = sum(not t["holds"] for t in log)
    v = MonotoneFn((0.0, 1.0), (Const(1.0), Const(0.0)), -1)
    hand = young_type_sides(power(1), power(1), v, 2.0, StepFn(((1.0, 1.0),), 1.0))
    ok = violations == 0 and hand.lhs == 1.0 and hand.rhs == 2.0
    acceptance_log(7, ok, f"{violations}/500 violations, max lhs/rhs {max(t['ratio'] for t in log):.3f}; "
                          f"hand case {hand.lhs:g} <= {hand.rhs:g}")
    assert ok


def test_criterion_08_proof_replication(acceptance_log):
    A, p, q, lam = power(3), 2.0, 1.0, 5e-3
    r_grid = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
    decs = [proof_decomposition(A, p, q, lam, r) for r in r_grid]
    S = [d.S_integral for d in decs]
    B = [d.B_integral for d in decs]
    monotone = all(b < a for a, b in zip(S, S[1:])) and all(b < a for a, b in zip(B, B[1:]))
    small = S[-1] < 1e-3 and B[-1] < 1e-3
    chain_ok, tested = True, 0
    for r in r_grid:
        for _, f in layered_profiles(A, p, r):
            sides = chain_sides(A, p, q, lam, r, f)
            tested += 1
            chain_ok &= sides["norm_q"] <= sides["rhs_q"]
    ok = monotone and small and chain_ok
    acceptance_log(8, ok, f"monotone decay {monotone}; at r=1e-6 S={S[-1]:.3g}, B={B[-1]:.3g} (target < 1e-3); "
                          f"chain holds on {tested} layered extremals: {chain_ok}")
    assert ok


def test_criterion_09_almost_compactness_dichotomy(acceptance_log):
    p = 2.0
    r_grid = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
    dec = almost_compactness_profile(power(2 * p), p, INF, r_grid)
    flat = almost_compactness_profile(power(p), p, INF, r_grid)
    closed = 1e-6 ** (1 / (2 * p))
    ok = dec.phi[-1] <= 0.04 and dec.phi[-1] <= 1.3 * closed and all(abs(v - 1) <= 1e-9 for v in flat.phi)
    acceptance_log(9, ok, f"power(4): phi(1e-6) = {dec.phi[-1]:.4f} (closed form {closed:.4f}); "
                          f"power(2): max |phi-1| = {max(abs(v - 1) for v in flat.phi):.1e}")
    assert ok


def test_criterion_10_divergence_witness(acceptance_log):
    A, p, q = power(2.0), 2.0, 1.0
    ratios = [probe_ratio(A, p, q, divergence_witness(A, p, q, n)) for n in range(1, 21)]
    nondecreasing = all(b >= a for a, b in zip(ratios, ratios[1:]))
    growth = ratios[-1] / ratios[0]
    ok = nondecreasing and growth >= 5
    acceptance_log(10, ok, f"ratio non-decreasing {nondecreasing}; ratio(20)/ratio(1) = {growth:.2f} (target >= 5)")
    assert ok


def test_criterion_11_fubini_chain(acceptance_log):
    wins = [(10.0**k, 10.0 ** (k + 2)) for k in range(1, 6)]
    st = dual_reduction_check(power(1.5), 2.0, 4.0, wins)
    inside = all(0.1 <= x <= 10 for x in st.ratios)
    ok = inside and st.max_step <= 2
    acceptance_log(11, ok, f"ratios {min(st.ratios):.4g}..{max(st.ratios):.4g}, "
                           f"largest window-to-window factor {st.max_step:.4g}")
    assert ok


def test_criterion_12_sobolev(acceptance_log):
    pstar = sobolev_exponent(3, 2)
    dom = sobolev_corollary(power(2.5), 3, 2, 1, side="domain")
    ref = condition_integral_A(power(2.5), 2, 1)
    tgt = sobolev_corollary(power(5.0), 3, 2, INF, side="target")
    ok = (pstar == 6.0 and dom.continuous.state is ref.state and dom.continuous.holds
          and tgt.continuous.evidence["exponent"] == 1.0)
    acceptance_log(12, ok, f"p* = {pstar:g}; domain verdict {dom.continuous.state.value} "
                           f"(integral condition {ref.state.value}); target q=inf exponent "
                           f"{tgt.continuous.evidence['exponent']:g}, verdict {tgt.continuous.state.value}")
    assert ok
