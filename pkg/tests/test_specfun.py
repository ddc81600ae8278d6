import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.physics.wigner import wigner_3j

from casimir_entropy.errors import DomainError, RangeError
from casimir_entropy.specfun import (PI2_6, ZETA3, bessel_arrays, bessel_bundle, geometry_coeff, polylog,
                                     series_coeffs)


@pytest.mark.parametrize("s", [2, 3])
@pytest.mark.parametrize("x", [-1.0, -0.9, -0.5, -0.1, 0.0, 0.2, 0.5, 0.51, 0.8, 0.99, 0.999999, 1.0])
def test_polylog_matches_mpmath(s, x):
    assert polylog(s, x) == pytest.approx(float(mpmath.polylog(s, x)), rel=1e-14, abs=1e-300)


@settings(max_examples=60, deadline=None)
@given(st.floats(-1.0, 1.0), st.sampled_from([2, 3]))
def test_polylog_property_vs_mpmath(x, s):
    assert polylog(s, x) == pytest.approx(float(mpmath.polylog(s, x)), rel=1e-13, abs=1e-15)


def test_polylog_constants_and_errors():
    assert polylog(3, 1.0) == ZETA3
    assert polylog(2, 1.0) == PI2_6
    with pytest.raises(DomainError):
        polylog(4, 0.5)
    with pytest.raises(DomainError):
        polylog(2, 1.5)


def _mp_i(l, z):
    # (z/2)**(-l-1/2) I_{l+1/2}(z)
    return (z / 2) ** (-l - mpmath.mpf(1) / 2) * mpmath.besseli(l + mpmath.mpf(1) / 2, z)


def _mp_k(l, z):
    return 2 / mpmath.pi * (z / 2) ** (l + mpmath.mpf(1) / 2) * mpmath.besselk(l + mpmath.mpf(1) / 2, z)


@pytest.mark.parametrize("l", [0, 1, 2, 5, 12])
@pytest.mark.parametrize("z", [1e-3, 0.3 + 0.2j, 2.0, 0.5j, 7.0j, 3.0 - 8.0j, 20.0])
def test_bessel_matches_mpmath(l, z):
    mpmath.mp.dps = 30
    zz = mpmath.mpc(z)
    b = bessel_bundle(l, z)
    i_ref, k_ref = complex(_mp_i(l, zz)), complex(_mp_k(l, zz))
    it_ref = complex((l + 1) * _mp_i(l, zz) + zz * mpmath.diff(lambda t: _mp_i(l, t), zz))
    kt_ref = complex(-l * _mp_k(l, zz) + zz * mpmath.diff(lambda t: _mp_k(l, t), zz))
    for got, ref in ((b.i_l, i_ref), (b.k_l, k_ref), (b.i_tilde_l, it_ref), (b.k_tilde_l, kt_ref)):
        assert abs(got - ref) <= 1e-11 * abs(ref)


def test_bessel_wronskian():
    # i_l k~_l - i~_l k_l is z independent: -(2l+1) i_l(0) k_l(0) ... check constancy
    z = np.array([0.1, 1.0 + 1.0j, 4.0j, 9.0])
    for l in (1, 3, 6):
        i, it, k, kt = bessel_arrays(l, z)
        w = i * kt - it * k
        assert np.allclose(w, w[0], rtol=1e-11)


def test_series_coeffs_match_small_z():
    for l in (1, 2, 4):
        c = series_coeffs(l)
        z = 1e-3
        i, it, k, kt = bessel_arrays(l, np.array([z]))
        assert i[0].real == pytest.approx(c.i0 + c.i1 * z * z, rel=1e-12)
        assert it[0].real == pytest.approx(c.it0 + c.it1 * z * z, rel=1e-12)
        assert k[0].real == pytest.approx(c.k0, rel=2e-3)


def test_bessel_domain_errors():
    with pytest.raises(DomainError):
        bessel_arrays(-1, np.array([1.0]))
    with pytest.raises(RangeError):
        bessel_arrays(1, np.array([100.0]))


@pytest.mark.parametrize("l,lp,m", [(1, 1, 0), (1, 1, 1), (2, 3, 0), (2, 3, 2), (4, 4, 3), (5, 2, 1)])
def test_geometry_coeff_matches_sympy_3j(l, lp, m):
    L = l + lp
    ref = (math.sqrt((2 * l + 1) * (2 * lp + 1)) * (2 * L + 1)
           * float(wigner_3j(l, lp, L, 0, 0, 0)) * float(wigner_3j(l, lp, L, m, -m, 0)))
    assert geometry_coeff(l, lp, m).H == pytest.approx(ref, rel=1e-13)


def test_geometry_coeff_errors():
    with pytest.raises(DomainError):
        geometry_coeff(0, 1)
    with pytest.raises(DomainError):
        geometry_coeff(1, 2, 2)
