import math

import numpy as np
import pytest

from casimir_entropy.errors import AccuracyError, ContinuationError
from casimir_entropy.numerics import (boltzmann_integral, disc, integrate_finite, integrate_semi_infinite,
                                      matsubara_frequency, matsubara_sum)


def test_semi_infinite_oracles():
    assert integrate_semi_infinite(lambda x: np.exp(-x)).value == pytest.approx(1.0, rel=1e-12)
    # log singularity at the origin
    r = integrate_semi_infinite(lambda x: np.log(x) * np.exp(-x))
    assert r.value == pytest.approx(-np.euler_gamma, rel=1e-11)
    # Bose integral: int x^3/(e^x - 1) = pi^4/15
    assert integrate_semi_infinite(lambda x: x**3 * np.exp(-x) / -np.expm1(-x)).value == pytest.approx(math.pi**4 / 15, rel=1e-11)


def test_finite_with_endpoint_singularity():
    r = integrate_finite(lambda x: 1 / np.sqrt(x), 0.0, 1.0)
    assert r.value == pytest.approx(2.0, rel=1e-9)  # default tolerance


def test_batched_integrand():
    a = np.array([1.0, 2.0, 3.0])
    r = integrate_semi_infinite(lambda x: np.exp(-a[:, None] * x))
    assert np.allclose(r.value, 1 / a, rtol=1e-12)


def test_reproducible_bitwise():
    f = lambda x: np.sin(x) * np.exp(-x)
    assert integrate_semi_infinite(f).value == integrate_semi_infinite(f).value


def test_accuracy_error_carries_best_estimate():
    with pytest.raises(AccuracyError) as info:
        integrate_finite(lambda x: np.sin(1e4 * x), 0.0, 1.0, tol=1e-14, max_level=2)
    assert info.value.best is not None


def test_boltzmann_integral_t4_law():
    # int_0^inf x^3/(e^{x/T}-1) = pi^4 T^4 / 15
    for T in (1e-3, 0.1, 2.0):
        r = boltzmann_integral(lambda x: x**3, T)
        assert r.value == pytest.approx(math.pi**4 * T**4 / 15, rel=1e-10)


def test_boltzmann_integral_breakpoints():
    T = 0.2
    phi = lambda x: x * np.abs(x - 0.3)
    with np.errstate(over="ignore"):
        ref = _reference(phi, T)
    assert boltzmann_integral(phi, T, breakpoints=(0.3,)).value == pytest.approx(ref, rel=1e-9)


def _reference(phi, T):
    return integrate_finite(lambda z: T * phi(T * z) / np.expm1(z), 0, 0.3 / T, tol=1e-11).value + \
        integrate_semi_infinite(lambda z: T * phi(T * (z + 0.3 / T)) / np.expm1(z + 0.3 / T), tol=1e-11).value


def test_matsubara_sum_zeta4():
    # T (f(0)/2 + sum 1/l^4) with f(0) = 0 -> T pi^4/90
    T = 0.5
    s = matsubara_sum(lambda l: 0.0 if l == 0 else 1.0 / l**4, T, tol=1e-13)
    assert s == pytest.approx(T * math.pi**4 / 90, rel=1e-8)
    assert matsubara_frequency(3, 0.5) == pytest.approx(3 * math.pi)


def test_matsubara_sum_budget():
    with pytest.raises(AccuracyError):
        matsubara_sum(lambda l: 1.0 / (l + 1), 1.0, max_terms=100)


def test_disc_real_analytic_and_cut():
    d = disc(lambda z: np.log(1 + z * z + 0.5 * z), np.array([0.5, 2.0]))
    x = np.array([0.5, 2.0])
    assert np.allclose(d.value, -2 * np.imag(np.log(1 - x * x + 0.5j * x)))
    with pytest.raises(ContinuationError):
        disc(lambda z: np.sqrt(z) if np.all(np.imag(z) > 0) else 1j * np.sqrt(z), np.array([1.0]))
