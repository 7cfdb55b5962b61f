import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from linmi import bounds as B
from linmi import codes as C
from linmi.channels import bsc_dmc, erasure_dmc
from linmi.engines import MIResult, bec_mi_exact, bsc_mi_exact, output_entropy_bsc_exact
from linmi.scalar import psi, tstar
from oracles import code_mi_bec_subsets, h2, h2_inv

CODES = [C.repetition(3), C.single_parity_check(5), C.hamming_7_4(), C.reed_muller_1_m(3), C.random_code(10, 4, 0)]


def eta_oracle(t):
    return (1 - 2 * h2_inv(1 - t)) ** 2


# --- linear-code bounds --------------------------------------------------------------


def test_thm1_single_coordinate_is_tight():
    for code in (C.repetition(1), C.puncture(C.hamming_7_4(), [5])):
        for t in (0.1, 0.5, 0.9):
            assert B.thm1_bound(code, t) == pytest.approx(t, abs=1e-12)


@given(st.integers(1, 8), st.floats(0, 1))
def test_thm1_full_space_is_tight(n, t):
    assert B.thm1_bound(C.full_space(n), t) == pytest.approx(n * t, abs=1e-9)


def test_thm1_repetition_three_composed():
    eta = eta_oracle(0.5)
    want = 0.5 / eta * (1 - (1 - eta) ** 3)
    assert B.thm1_bound(C.repetition(3), 0.5) == pytest.approx(want, abs=1e-10)
    assert B.thm1_bound(C.repetition(3), 0.5) == pytest.approx(0.772553, abs=1e-6)
    assert B.thm1_bound(C.repetition(3), 0.0) == 0.0


@pytest.mark.parametrize("code", CODES, ids=repr)
def test_thm1_holds_and_dominates_samorodnitsky(code):
    for t in np.linspace(0.05, 0.95, 19):
        rep = B.check_thm1(code, t)
        assert rep.verdict == B.HOLDS and rep.slack >= -1e-9
        assert B.thm1_bound(code, t) - B.sam_psi_bound(code, t) >= -1e-9


def test_sam_psi_examples():
    for t in (0.2, 0.7):
        eta = eta_oracle(t)
        assert B.sam_psi_bound(C.full_space(6), t, t1=eta) == pytest.approx(6 * t, abs=1e-9)
        assert B.sam_psi_bound(C.zero_code(6), t) == 0.0
    eta = eta_oracle(0.5)
    x = (1 - (1 - eta) ** 3) / (3 * eta)
    assert x == pytest.approx(0.515035, abs=1e-6)
    assert B.sam_psi_bound(C.repetition(3), 0.5) == pytest.approx(3 * psi(0.5, x), abs=1e-10)


def test_sam_psi_rejects_small_t1():
    with pytest.raises(ValueError):
        B.sam_psi_bound(C.repetition(3), 0.5, t1=0.3)


def test_sam_psi_larger_t1_still_valid():
    code = C.hamming_7_4()
    for t1 in (0.7, 0.9, 1.0):
        assert B.check_sam_psi(code, 0.5, t1=t1).verdict == B.HOLDS


def test_sam_mgl_tight_cases():
    for t in (0.3, 0.8):
        p = h2_inv(1 - t)
        assert B.sam_mgl_entropy_bound(C.zero_code(5), t) == pytest.approx(5 * (1 - t), abs=1e-9)
        assert B.sam_mgl_entropy_bound(C.zero_code(5), t) == pytest.approx(5 * h2(p), abs=1e-9)
        assert B.sam_mgl_entropy_bound(C.full_space(5), t) == pytest.approx(5.0, abs=1e-12)


@pytest.mark.parametrize("code", CODES, ids=repr)
def test_sam_mgl_below_exact_entropy(code):
    for t in (0.1, 0.5, 0.9):
        assert B.sam_mgl_entropy_bound(code, t) <= output_entropy_bsc_exact(code, t) + 1e-9


def test_bms_bound_ordering():
    # cor2 <= cor1 <= bec_upper since t <= eta_t
    for code in CODES:
        for t in (0.2, 0.5, 0.8):
            assert B.cor2_lower(code, t) <= B.cor1_lower(code, t) + 1e-12
            assert B.cor1_lower(code, t) <= B.bec_upper(code, t) + 1e-12
            assert B.bec_upper(code, t) == pytest.approx(code_mi_bec_subsets(code, t), abs=1e-10)


# --- information combining ---------------------------------------------------------


def test_combining_single_use_equality():
    I1, H = 0.3, 0.9
    assert B.combining_bound(I1, H, 0.5, 1) == pytest.approx(I1, abs=1e-15)


@given(st.floats(0.0, 0.99), st.integers(1, 200))
def test_combining_erasure_tight(e, n):
    H = 1.0
    assert B.combining_bound((1 - e) * H, H, 1 - e, n) == pytest.approx((1 - e**n) * H, abs=1e-12)


def test_combining_bsc_example():
    p = 0.11
    I1 = 1 - h2(p)
    eta = (1 - 2 * p) ** 2
    want = I1 * (1 - (1 - eta) ** 3) / eta
    assert B.combining_bound(I1, 1.0, eta, 3) == pytest.approx(want, abs=1e-14)
    assert want == pytest.approx(0.772605, abs=1e-6)


def test_combining_rejects_inconsistent_eta():
    with pytest.raises(ValueError):
        B.combining_bound(0.9, 1.0, 0.5, 3)
    with pytest.raises(ValueError):
        B.combining_bound(0.1, 1.0, 0.5, 0)


def test_exp_relaxation_examples():
    assert B.combining_exp_relaxation(0.4, 1.0, 3) == pytest.approx((1 - math.exp(-3)) * 0.4)
    n, eta = 10, 0.001
    assert B.combining_exp_relaxation(0.0005, eta, n) >= 0.995 * n * 0.0005


@given(st.floats(1e-6, 1.0), st.integers(1, 500))
def test_exp_relaxation_below_bound(eta, n):
    I1 = 0.5 * eta
    assert B.combining_exp_relaxation(I1, eta, n) <= B.combining_bound(I1, 1.0, eta, n) * (1 + 1e-12) + 1e-15


def test_combining_upper_bounds():
    assert B.combining_upper_bounds(0.3, 1.0, 1, c_mc=0.4) == (0.3, 1.0, pytest.approx(0.4))
    lin, ent, ers = B.combining_upper_bounds(0.3, 1.0, 100)
    assert ers is None and min(lin, ent) == 1.0


def test_bsc_less_capable_than_bec_upper_bound():
    p = 0.11
    t = 1 - h2(p)
    for n in (1, 3, 10):
        reps = B.check_combining(bsc_dmc(p), n, (1 - 2 * p) ** 2, c_mc=t)
        upper = [r for r in reps if r.bound_name == "combining_upper"][0]
        assert upper.verdict == B.HOLDS
        assert upper.bound_value <= 1 - (1 - t) ** n + 1e-12


# --- rate-R codes over the BEC --------------------------------------------------------


def test_thm3_edges():
    assert B.thm3_bound(7, 4 / 7, 4 / 7, 0.5) == 0.0
    R = 0.5
    ts = float(tstar(R))
    scale = 8 * (1 - 0.05 / R)
    left = B.thm3_bound(8, R, 0.05, ts * (1 - 1e-12))
    right = B.thm3_bound(8, R, 0.05, ts)
    assert left == pytest.approx(scale * ts, abs=1e-9)
    assert right == pytest.approx(scale * ts, abs=1e-9)


@pytest.mark.parametrize("n", [2, 3, 5, 9])
def test_epsilon_repetition_closed_form(n):
    R = 1 / n
    want = R - (1 - (1 - R) ** n) / n
    assert B.estimate_epsilon(C.repetition(n)) == pytest.approx(want, abs=1e-12)


def test_epsilon_hamming():
    ham = C.hamming_7_4()
    R = 4 / 7
    assert B.estimate_epsilon(ham) == pytest.approx(R - code_mi_bec_subsets(ham, R) / 7, abs=1e-12)
    # a grid strictly above R gives a smaller (less conservative) value
    assert B.estimate_epsilon(ham, np.linspace(0.6, 1, 50)) <= B.estimate_epsilon(ham) + 1e-15


def test_epsilon_domain():
    with pytest.raises(ValueError):
        B.estimate_epsilon(C.full_space(4))
    with pytest.raises(ValueError):
        B.estimate_epsilon(C.hamming_7_4(), [0.1, 0.9])


@pytest.mark.parametrize("code", [C.hamming_7_4(), C.reed_muller_1_m(3)], ids=repr)
def test_thm3_holds(code):
    eps = B.estimate_epsilon(code)
    for t in np.linspace(0.05, 0.95, 19):
        assert B.check_thm3(code, t, eps).verdict == B.HOLDS


# --- the i.i.d. counterexample -------------------------------------------------------


def test_iid_input_violates_linear_code_inequality():
    assert B.check_thm1_iid(10, 0.2, 0.5).verdict == B.VIOLATED
    assert B.check_thm1_iid(10, 0.5, 0.5).verdict == B.HOLDS


# --- lemma 1 ---------------------------------------------------------------------------


@pytest.mark.parametrize("code", CODES, ids=repr)
def test_lemma1_monotone(code):
    reps = B.check_lemma1(code, np.linspace(1 / 512, 1, 512))
    assert all(r.verdict == B.HOLDS for r in reps)


# --- verdict logic ---------------------------------------------------------------------


def test_decide_rules():
    assert B.decide(0.0) == B.HOLDS
    assert B.decide(-1e-10) == B.HOLDS
    assert B.decide(-1e-8) == B.VIOLATED
    assert B.decide(-0.03, std_err=0.01) == B.HOLDS
    assert B.decide(-0.05, std_err=0.01) == B.VIOLATED
    assert B.decide(-5e-7, band=1e-6) == B.INCONCLUSIVE
    assert B.decide(-5e-6, band=1e-6) == B.VIOLATED


def test_verify_upper_direction_and_estimated_band():
    code = C.hamming_7_4()
    rep = B.verify("bec_upper", {"code": code, "t": 0.5}, bsc_mi_exact(code, 0.5))
    assert rep.direction == "upper"
    assert rep.slack == pytest.approx(bec_mi_exact(code, 0.5).value - bsc_mi_exact(code, 0.5).value)
    base = B.combining_bound(0.2, 1.0, 0.5, 4)
    params = {"n": 4, "I1": 0.2, "H": 1.0, "eta": 0.5, "eta_source": "estimated"}
    near = B.verify("thm2", params, MIResult(base - 5e-7, "exact"))
    assert near.verdict == B.INCONCLUSIVE
    params["eta_source"] = "closed_form"
    assert B.verify("thm2", params, MIResult(base - 5e-7, "exact")).verdict == B.VIOLATED


def test_verify_unknown_bound():
    with pytest.raises(ValueError):
        B.verify("nope", {}, MIResult(0.0, "exact"))
    with pytest.raises(KeyError):
        B.verify("thm1", {}, MIResult(0.0, "exact"))


def test_erasure_combining_suite_tight():
    dmc = erasure_dmc(0.5, [0.5, 0.5])
    for n in (1, 5, 40):
        thm2 = B.check_combining(dmc, n, 0.5)[0]
        assert abs(thm2.slack) <= 1e-10
