import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linmi import codes as C
from oracles import codeword_bits, gf2_rank_lists


def bits_list(v, n):
    return [(v >> i) & 1 for i in range(n)]


def word_set(code):
    return {tuple(w) for w in codeword_bits(code)}


@st.composite
def generator_rows(draw, max_n=9, max_rows=6):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_rows))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=m, max_size=m))
    return n, rows


# --- bit conventions ---------------------------------------------------------------


def test_string_roundtrip():
    assert C.bits_from_str("100") == 1
    assert C.bits_to_str(C.bits_from_str("0110101"), 7) == "0110101"


# --- make_code and rank ------------------------------------------------------------


def test_make_code_repetition():
    code = C.make_code(["111"], 3, "000")
    assert code.k == 1 and code == C.repetition(3)


def test_make_code_drops_dependent_row():
    code = C.make_code(["110", "011", "101"], 3)
    assert code.k == 2


def test_make_code_rank_zero():
    code = C.make_code([], 3)
    assert code.k == 0
    assert list(code.codewords()) == [0]


@pytest.mark.parametrize(
    "rows, want",
    [([1 << i for i in range(6)], 6), ([C.bits_from_str(s) for s in ("110", "011", "101")], 2), ([0, 0, 0], 0)],
)
def test_gf2_rank_cases(rows, want):
    assert C.gf2_rank(rows) == want


@settings(max_examples=150)
@given(generator_rows())
def test_rank_matches_list_elimination(nr):
    n, rows = nr
    want = gf2_rank_lists([bits_list(r, n) for r in rows]) if rows else 0
    assert C.gf2_rank(rows) == want
    assert C.make_code(rows, n).k == want


@settings(max_examples=100)
@given(generator_rows(max_n=8), st.integers(0, 255))
def test_codewords_match_span(nr, shift):
    n, rows = nr
    shift &= (1 << n) - 1
    code = C.make_code(rows, n, shift)
    span = set()
    for coeffs in itertools.product((0, 1), repeat=len(rows)):
        v = shift
        for c, r in zip(coeffs, rows):
            if c:
                v ^= r
        span.add(v)
    got = {int(w) ^ code.shift for w in code.codewords()}
    assert got == span
    assert len(code.codewords()) == 1 << code.k


@settings(max_examples=100)
@given(generator_rows(max_n=8))
def test_parity_check_annihilates_code(nr):
    n, rows = nr
    code = C.make_code(rows, n)
    checks = code.parity_check()
    assert len(checks) == n - code.k
    assert C.gf2_rank(checks) == n - code.k
    for w in code.codewords():
        for h in checks:
            assert C.popcount(int(w) & h) % 2 == 0


def test_equal_codes_from_different_generators():
    a = C.make_code(["110", "011"], 3)
    b = C.make_code(["101", "110"], 3)
    assert a == b


def test_shift_reduced_modulo_code():
    code = C.make_code(["111"], 3, "111")
    assert code.shift == 0
    assert C.make_code(["111"], 3, "100") == C.make_code(["111"], 3, "011")


def test_bad_word_rejected():
    with pytest.raises(ValueError):
        C.make_code(["1101"], 3)


# --- puncturing -----------------------------------------------------------------


def test_puncture_repetition():
    assert C.puncture(C.repetition(3), [0, 1]) == C.repetition(2)


def test_puncture_identity():
    ham = C.hamming_7_4()
    assert C.puncture(ham, range(7)) == ham


def test_puncture_spc_to_full_space():
    code = C.puncture(C.single_parity_check(4), [0, 1, 2])
    assert code.k == 3
    assert word_set(code) == set(itertools.product((0, 1), repeat=3))


@settings(max_examples=60)
@given(generator_rows(max_n=8), st.data())
def test_puncture_projects_codewords(nr, data):
    n, rows = nr
    code = C.make_code(rows, n)
    keep = sorted(data.draw(st.sets(st.integers(0, n - 1), min_size=1)))
    proj = {tuple(w[keep]) for w in codeword_bits(code)}
    assert word_set(C.puncture(code, keep)) == proj


def test_puncture_errors():
    with pytest.raises(ValueError):
        C.puncture(C.repetition(3), [3])
    with pytest.raises(ValueError):
        C.puncture(C.repetition(3), [])


# --- coset weight enumerators ---------------------------------------------------------


def test_enumerator_repetition_examples():
    rep = C.repetition(3)
    assert C.coset_weight_enumerator(rep, "000").counts == (1, 0, 0, 1)
    assert C.coset_weight_enumerator(rep, "100").counts == (0, 1, 1, 0)


@settings(max_examples=60)
@given(generator_rows(max_n=7), st.integers(0, 127))
def test_enumerator_partition_and_table(nr, y):
    n, rows = nr
    y &= (1 << n) - 1
    code = C.make_code(rows, n)
    enum = C.coset_weight_enumerator(code, y)
    assert sum(enum.counts) == 1 << code.k
    brute = np.zeros(n + 1, dtype=int)
    for w in codeword_bits(code):
        brute[int(np.sum(w ^ np.array(bits_list(y, n))))] += 1
    assert list(enum.counts) == list(brute)
    table = C.coset_enumerator_table(code)
    assert list(table[C.syndrome_table(code)[y]]) == list(brute)


def test_enumerator_table_totals():
    code = C.hamming_7_4()
    table = C.coset_enumerator_table(code)
    assert table.shape == (8, 8)
    assert np.all(table.sum(1) == 16)
    from math import comb

    assert list(table.sum(0)) == [comb(7, w) for w in range(8)]


# --- constructors ------------------------------------------------------------------


def test_repetition_distance():
    code = C.repetition(5)
    nonzero = [C.popcount(int(w)) for w in code.codewords() if w]
    assert code.k == 1 and min(nonzero) == 5


def test_spc_even_words():
    code = C.single_parity_check(4)
    assert code.k == 3
    assert all(C.popcount(int(w)) % 2 == 0 for w in code.codewords())


def test_hamming_and_rm_parameters():
    ham = C.hamming_7_4()
    assert (ham.n, ham.k) == (7, 4)
    assert min(C.popcount(int(w)) for w in ham.codewords() if w) == 3
    rm = C.reed_muller_1_m(3)
    assert (rm.n, rm.k) == (8, 4)
    assert sorted({C.popcount(int(w)) for w in rm.codewords()}) == [0, 4, 8]


def test_random_code_deterministic():
    a, b = C.random_code(10, 4, seed=7), C.random_code(10, 4, seed=7)
    assert a == b and a.k == 4


def test_random_code_dimensions():
    for k in range(0, 7):
        assert C.random_code(8, k, seed=k).k == k
    with pytest.raises(ValueError):
        C.random_code(4, 5, seed=0)


def test_full_and_zero():
    assert C.full_space(5).k == 5
    assert C.zero_code(5).k == 0


# --- code files -----------------------------------------------------------------------


def test_code_file_roundtrip(tmp_path):
    code = C.make_code(["1011", "0110"], 4, "1000")
    text = C.format_code_text(code)
    path = tmp_path / "c.txt"
    path.write_text(text)
    assert C.read_code_file(path) == code


def test_code_file_errors(tmp_path):
    with pytest.raises(ValueError):
        C.parse_code_text("3 2\n111\n")
    with pytest.raises(ValueError):
        C.parse_code_text("")
    with pytest.raises(OSError):
        C.read_code_file(tmp_path / "missing.txt")
