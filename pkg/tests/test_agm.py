import math

import numpy as np
import pytest

from ellipk.agm import jacobi_real_agm, jacobi_real_agm_array
from ellipk.errors import DomainError
from ellipk.series import series_many

# sn, cn, dn(0.8, 0.6), computed with mpmath.ellipfun at 30 digits
FROZEN_08_06 = (0.6855897751159168, 0.7279880907381018, 0.8473370027054785)


def test_circular_and_hyperbolic_ends():
    sn, cn, dn = jacobi_real_agm(0.5, 0.0)
    assert (sn, cn, dn) == pytest.approx((math.sin(0.5), math.cos(0.5), 1.0), abs=1e-15)
    sn, cn, dn = jacobi_real_agm(0.5, 1.0)
    sech = 1 / math.cosh(0.5)
    assert (sn, cn, dn) == pytest.approx((math.tanh(0.5), sech, sech), abs=1e-15)


def test_frozen_value():
    assert jacobi_real_agm(0.8, 0.6) == pytest.approx(FROZEN_08_06, abs=2e-15)


def test_identities_and_array_agreement():
    rng = np.random.default_rng(3)
    u = 1.5 * rng.random(500)
    m1 = rng.random(500)
    m1[:5] = [0.0, 1.0, 1.0, 0.0, 1e-300]
    sn, cn, dn = jacobi_real_agm_array(u, m1)
    assert np.max(np.abs(sn ** 2 + cn ** 2 - 1)) <= 1e-12
    assert np.max(np.abs(dn ** 2 + m1 * sn ** 2 - 1)) <= 1e-12
    for i in range(0, 500, 37):
        assert jacobi_real_agm(u[i], m1[i]) == pytest.approx(
            (sn[i], cn[i], dn[i]), abs=1e-15)


def test_agrees_with_series(kernel):
    sn, cn, dn = jacobi_real_agm(0.5, 0.7)
    for name, ref in zip(("sn", "cn", "dn"), (sn, cn, dn)):
        v, _, _ = series_many(name, [0.5], [0.7])
        assert abs(v[0] - ref) <= 1e-12


def test_odd_even_in_u():
    sn, cn, dn = jacobi_real_agm(-0.9, 0.3)
    sp, cp, dp = jacobi_real_agm(0.9, 0.3)
    assert sn == -sp and cn == cp and dn == dp


@pytest.mark.parametrize("m1", [-0.1, 1.1, float("nan")])
def test_parameter_domain(m1):
    with pytest.raises(DomainError):
        jacobi_real_agm(0.5, m1)
    with pytest.raises(DomainError):
        jacobi_real_agm_array([0.5], [m1])
