import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from linmi import channels as ch
from oracles import h2, h2_inv, mi_joint, repeated_input_mi

unit = st.floats(0.0, 1.0, allow_nan=False)


def test_bsc_as_mixture():
    assert ch.bms_from_bsc(1.0).states == ((1.0, 0.0),)
    assert ch.bms_from_bsc(0.0).states == ((1.0, 0.5),)
    (w, p), = ch.bms_from_bsc(0.5).states
    assert w == 1.0 and p == pytest.approx(h2_inv(0.5), abs=1e-12)


def test_bec_as_mixture():
    assert ch.bms_from_bec(1.0).states == ((1.0, 0.0),)
    assert ch.bms_from_bec(0.0).states == ((1.0, 0.5),)
    mix = ch.bms_from_bec(0.3)
    assert mix.states == ((0.3, 0.0), (0.7, 0.5))
    assert mix.capacity == pytest.approx(0.3, abs=1e-15)


def test_capacity_examples():
    assert ch.capacity(ch.bms_from_bec(0.4)) == pytest.approx(0.4)
    mix = ch.BmsChannel(((0.5, 0.0), (0.5, 0.11)))
    assert ch.capacity(mix) == pytest.approx(0.5 + 0.5 * (1 - h2(0.11)), abs=1e-14)
    assert ch.capacity(mix) == pytest.approx(0.750042, abs=1e-6)
    assert ch.capacity(ch.bsc_dmc(0.11)) == pytest.approx(1 - h2(0.11), abs=1e-14)


@given(unit)
def test_bsc_mixture_capacity_roundtrip(t):
    assert ch.bms_from_bsc(t).capacity == pytest.approx(t, abs=1e-11)


@given(st.sampled_from([0.25, 0.5, 0.75]), st.floats(0.01, 0.99))
def test_two_state_capacity(w, t):
    mix = ch.two_state_bms(w, t)
    assert len(mix.states) == 2
    assert mix.capacity == pytest.approx(t, abs=1e-10)


def test_states_canonicalized():
    mix = ch.BmsChannel(((0.5, 0.9), (0.5, 0.2)))
    assert np.allclose(mix.crossovers, [0.1, 0.2])


@pytest.mark.parametrize(
    "states",
    [((0.5, 0.1), (0.4, 0.2)), ((1.2, 0.1),), ((1.0, 1.5),), ()],
)
def test_bad_mixtures(states):
    with pytest.raises(ValueError):
        ch.BmsChannel(states)


def test_dmc_validation():
    with pytest.raises(ValueError):
        ch.Dmc(np.array([[0.5, 0.4], [0.5, 0.5]]), np.array([0.5, 0.5]))
    with pytest.raises(ValueError):
        ch.Dmc(np.eye(2), np.array([0.3, 0.3]))
    with pytest.raises(ValueError):
        ch.Dmc(np.eye(3), np.array([0.5, 0.5]))


@given(st.floats(0, 1), st.floats(0, 1))
def test_mutual_information_against_joint(p, q):
    W = np.array([[1 - p, p], [p, 1 - p]])
    P = np.array([1 - q, q])
    assert ch.mutual_information(P, W) == pytest.approx(mi_joint(P[:, None] * W), abs=1e-12)


def test_erasure_matrix():
    W = ch.ErasureChannel(0.2, 3).matrix()
    assert W.shape == (3, 4)
    assert np.allclose(W.sum(1), 1.0)
    assert np.allclose(W[:, -1], 0.2)


def test_erasure_upper_bound_examples():
    P = [0.3, 0.7]
    H = -(0.3 * np.log2(0.3) + 0.7 * np.log2(0.7))
    assert ch.erasure_upper_bound_mi(0.4, P, 1) == pytest.approx(0.6 * H)
    assert ch.erasure_upper_bound_mi(0.0, P, 5) == pytest.approx(H)
    assert ch.erasure_upper_bound_mi(0.5, [0.5, 0.5], 3) == pytest.approx(0.875)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_erasure_closed_form_matches_enumeration(n):
    dmc = ch.erasure_dmc(0.35, [0.2, 0.5, 0.3])
    got = ch.erasure_upper_bound_mi(0.35, dmc.input_dist, n)
    assert got == pytest.approx(repeated_input_mi(dmc.matrix, dmc.input_dist, n), abs=1e-12)


def test_channel_from_config():
    assert ch.channel_from_config({"kind": "bsc"}) is None
    assert ch.channel_from_config({"kind": "bec", "capacity": 0.3}).capacity == pytest.approx(0.3)
    mix = ch.channel_from_config({"kind": "bms", "states": [(0.5, 0.0), (0.5, 0.5)]})
    assert mix.capacity == pytest.approx(0.5)
    dmc = ch.channel_from_config({"kind": "dmc", "matrix": [[1, 0], [0, 1]], "input_dist": [0.5, 0.5]})
    assert ch.capacity(dmc) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        ch.channel_from_config({"kind": "awgn"})
