import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellipk.coeffs import (
    CoefficientTable,
    IntegerPolynomial,
    cached_table,
    differentiate_polynomial,
    eval_polynomial,
    generate_table,
)
from oracles import egf_coefficients, secant_numbers, tangent_numbers

# Frozen output of the naive recurrence in oracles.py (n = 4, 5, 6).
FROZEN = {
    4: ([1, 1228, 5478, 1228, 1], [1, 408, 912, 64], [0, 64, 912, 408, 1]),
    5: ([1, 11069, 165826, 165826, 11069, 1], [1, 3688, 30768, 15808, 256],
        [0, 256, 15808, 30768, 3688, 1]),
    6: ([1, 99642, 4494351, 13180268, 4494351, 99642, 1],
        [1, 33212, 870640, 1538560, 259328, 1024],
        [0, 1024, 259328, 1538560, 870640, 33212, 1]),
}


@pytest.fixture(scope="module")
def table40():
    return cached_table(40)


def test_small_polynomials():
    t = generate_table(3)
    assert [list(p) for p in t.sn] == [[1], [1, 1], [1, 14, 1], [1, 135, 135, 1]]
    assert [list(p) for p in t.cn] == [[1], [1], [1, 4], [1, 44, 16]]
    assert [list(p) for p in t.dn] == [[1], [0, 1], [0, 4, 1], [0, 16, 44, 1]]


def test_zero_index_table():
    t = generate_table(0)
    assert t.max_index == 0
    assert t.sn == t.cn == t.dn == (IntegerPolynomial((1,)),)


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        generate_table(-1)


@pytest.mark.parametrize("n", sorted(FROZEN))
def test_frozen_values(n):
    t = cached_table(6)
    s, c, d = FROZEN[n]
    assert list(t.sn[n]) == s
    assert list(t.cn[n]) == c
    assert list(t.dn[n]) == d


def test_matches_naive_recurrence(table40):
    s, c, d = egf_coefficients(40)
    for n in range(41):
        assert list(table40.sn[n]) == s[n], n
        assert list(table40.cn[n]) == c[n], n
        assert list(table40.dn[n]) == d[n], n


def test_positivity_and_shape(table40):
    for n in range(41):
        assert all(a > 0 for a in table40.sn[n])
        assert all(a > 0 for a in table40.cn[n])
        dn = table40.dn[n].coeffs
        if n == 0:
            assert dn == (1,)
        else:
            assert dn[0] == 0 and all(a > 0 for a in dn[1:])
        assert table40.sn[n].degree == n
        assert table40.cn[n].degree == max(n - 1, 0)
        assert table40.dn[n].degree == n


def test_values_at_one_are_tangent_and_secant_numbers(table40):
    tan = tangent_numbers(41)
    sec = secant_numbers(41)
    for n in range(41):
        assert table40.sn[n].exact_at(1) == tan[n]
        assert table40.cn[n].exact_at(1) == sec[n]
        assert table40.dn[n].exact_at(1) == sec[n]


def test_values_at_zero(table40):
    for n in range(41):
        assert table40.sn[n].exact_at(0) == 1
        assert table40.cn[n].exact_at(0) == 1
        assert table40.dn[n].exact_at(0) == (1 if n == 0 else 0)


def test_symmetries(table40):
    # s_n is palindromic; d_n(m) = m^n c_n(1/m)
    for n in range(41):
        s = table40.sn[n].coeffs
        assert s == s[::-1]
        c = list(table40.cn[n].coeffs) + [0] * (n + 1 - len(table40.cn[n]))
        assert table40.dn[n].coeffs == tuple(c[::-1])


def test_larger_table_extends_smaller():
    small, big = cached_table(40), cached_table(60)
    assert big.sn[:41] == small.sn
    assert big.cn[:41] == small.cn
    assert big.dn[:41] == small.dn


def test_integer_polynomial_trims_and_zero():
    p = IntegerPolynomial((3, 0, 2, 0, 0))
    assert p.coeffs == (3, 0, 2)
    assert p.degree == 2
    z = IntegerPolynomial(())
    assert z.is_zero and len(z) == 0
    with pytest.raises(ValueError):
        _ = z.degree
    assert IntegerPolynomial((0, 0)).is_zero


def test_eval_polynomial_examples():
    t = generate_table(2)
    assert eval_polynomial(t.sn[1], 1) == 2
    assert eval_polynomial(t.sn[2], 1) == 16
    assert eval_polynomial(t.dn[1], 0) == 0
    assert t.sn[2](0.5) == 1 + 7 + 0.25
    assert eval_polynomial(t.sn[2], 1j) == pytest.approx(14j)


def test_differentiate_polynomial():
    t = generate_table(2)
    assert differentiate_polynomial(t.sn[2]).coeffs == (14, 2)
    assert differentiate_polynomial(t.dn[2]).coeffs == (4, 2)
    assert differentiate_polynomial(IntegerPolynomial((1,))).is_zero
    assert differentiate_polynomial(IntegerPolynomial(())).is_zero


def test_json_round_trip_and_determinism():
    t = generate_table(5)
    text = t.dumps()
    assert text == generate_table(5).dumps()
    obj = json.loads(text)
    assert obj["max_index"] == 5
    assert obj["polynomials"][2] == {"kind": "sn", "n": 2, "coeffs": ["1", "14", "1"]}
    assert all(isinstance(a, str) for rec in obj["polynomials"] for a in rec["coeffs"])
    back = CoefficientTable.from_json_obj(obj)
    assert back.sn == t.sn and back.cn == t.cn and back.dn == t.dn


def test_large_coefficients_stay_exact():
    t = cached_table(60)
    assert t.sn[60].exact_at(1) == tangent_numbers(61)[60]
    assert t.sn[60].exact_at(1) > 2 ** 300


def test_majorant_chain_random_m(table40):
    # |p(m)| <= p(|m|) <= p(1) for |m| <= 1, for n <= 20
    rng = np.random.default_rng(2024)
    r = np.sqrt(rng.random(1000))
    m = r * np.exp(2j * np.pi * rng.random(1000))
    for fam in (table40.sn, table40.cn, table40.dn):
        for p in fam[:21]:
            top = eval_polynomial(p, 1.0)
            at_abs = np.array([eval_polynomial(p, a) for a in np.abs(m)])
            at_m = np.abs(np.array([eval_polynomial(p, w) for w in m]))
            assert np.all(at_abs - at_m >= -1e-12 * at_abs)
            assert np.all(top - at_abs >= -1e-12 * top)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 40), st.floats(0, 1), st.floats(0, 2 * np.pi))
def test_majorant_chain_property(n, r, theta):
    t = cached_table(40)
    m = r * complex(np.cos(theta), np.sin(theta))
    for fam in (t.sn, t.cn, t.dn):
        p = fam[n]
        top = eval_polynomial(p, 1.0)
        mid = eval_polynomial(p, abs(m))
        low = abs(eval_polynomial(p, m))
        assert low <= mid * (1 + 1e-12) + 1e-300
        assert mid <= top * (1 + 1e-12)
