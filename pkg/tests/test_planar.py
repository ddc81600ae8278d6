import math

import numpy as np
import pytest

from casimir_entropy import planar
from casimir_entropy.errors import ContinuationError, DomainError, UnsupportedModelError
from casimir_entropy.materials import DcDielectric, Drude, PerfectConductor, Plasma
from casimir_entropy.numerics import matsubara_frequency, matsubara_sum
from casimir_entropy.specfun import ZETA3, polylog

G1 = planar.PlanarGeometry(1.0)


def test_perfect_conductor_vacuum_energy():
    for a in (0.5, 1.0, 3.0):
        assert planar.vacuum_energy(PerfectConductor(), planar.PlanarGeometry(a)) == pytest.approx(
            -math.pi**2 / (720 * a**3), rel=1e-14)


def test_vacuum_energy_scaling_drude():
    # E0(omega_p s, a/s) = s^3 E0(omega_p, a)
    e1 = planar.vacuum_energy(Drude(1.0, 0.1), G1)
    e2 = planar.vacuum_energy(Drude(2.0, 0.2), planar.PlanarGeometry(0.5))
    assert e2 == pytest.approx(8 * e1, rel=1e-8)
    # large omega_p a approaches the perfect conductor
    big = planar.vacuum_energy(Drude(1e4), G1)
    assert big == pytest.approx(-math.pi**2 / 720, rel=2e-3)


def test_free_energy_is_matsubara_sum_of_phi():
    m, T = Drude(1.0, 0.1), 0.5
    ref = matsubara_sum(lambda l: planar.phi(m, G1, matsubara_frequency(l, T)) / (2 * math.pi), T, tol=1e-12)
    assert planar.free_energy(m, G1, T) == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize("model", [PerfectConductor(), Drude(1.0, 0.1), DcDielectric(5.0, 0.5)])
@pytest.mark.parametrize("T", [0.05, 0.3])
def test_abel_plana_additivity(model, T):
    f = planar.free_energy(model, G1, T)
    assert planar.vacuum_energy(model, G1) + planar.delta_f(model, G1, T) == pytest.approx(f, rel=1e-7)


def test_perfect_conductor_limits():
    T = 2.0
    assert planar.free_energy(PerfectConductor(), G1, T) == pytest.approx(-ZETA3 * T / (8 * math.pi), rel=1e-8)
    T = 0.01
    low = -ZETA3 * T**3 / (2 * math.pi) + math.pi**2 * T**4 / 45
    assert planar.delta_f(PerfectConductor(), G1, T) == pytest.approx(low, rel=1e-3)


def test_closed_forms_of_linear_terms():
    for e0 in (2.0, 5.0):
        r0 = (e0 - 1) / (e0 + 1)
        assert planar.f_lin_dc(e0) == pytest.approx(ZETA3 - polylog(3, r0 * r0), rel=1e-14)
        assert planar.linear_coeff_dc(0.0, e0) == pytest.approx(planar.f_lin_dc(e0), rel=1e-7)
    assert abs(planar.linear_coeff_drude(0.0, G1, 5.0)) == pytest.approx(abs(planar.f_lin_drude(5.0, G1)), rel=1e-7)


def test_linear_coefficient_signs_and_mu1_dependence():
    fd0 = planar.linear_coeff_drude(0.0, G1, 1.0)
    fd1 = planar.linear_coeff_drude(1.0, G1, 1.0)
    fc0 = planar.linear_coeff_dc(0.0, 5.0)
    fc1 = planar.linear_coeff_dc(1.0, 5.0)
    assert fd0 > 0 and fc0 > 0
    # a finite mu1 damps the Boltzmann weight
    assert abs(fd1) < abs(fd0) and abs(fc1) < abs(fc0)


def test_dc_log_coefficient_numeric_vs_closed():
    for e0 in (1.5, 3.0, 20.0):
        assert planar.dc_log_coefficient_numeric(e0, 1.0) == pytest.approx(planar.dc_log_coefficient(e0, 1.0), rel=1e-8)


def test_vacuum_shift_matches_finite_difference():
    # E0(mu) - E0(0) against the small-parameter expansion
    for model0, make in ((Drude(1.0), lambda mu: Drude(1.0, mu)), (DcDielectric(5.0), lambda mu: DcDielectric(5.0, mu))):
        if isinstance(model0, Drude):
            et, e1 = planar.drude_vacuum_coeffs(1.0, 1.0)
        else:
            et, e1 = planar.dc_vacuum_coeffs(5.0, 1.0)
        mu = 1e-6
        diff = planar.vacuum_energy_difference(make(mu), model0, G1, tol=1e-10)
        assert diff == pytest.approx(planar.vacuum_energy_shift(et, e1, mu, 1.0), rel=1e-3)


def test_fixed_param_t2_formulas():
    te, tm = planar.fixed_param_t2(Drude(2.0, 0.5), planar.PlanarGeometry(0.5))
    assert te == pytest.approx((2 * math.log(2) - 1) / 48 * 4 / 0.5)
    assert tm == pytest.approx(-math.pi**2 / 18 * 0.5 / (1.0 * 4.0))
    # sigma <-> omega_p^2/gamma maps the coefficients exactly
    d = Drude(1.0, 0.1)
    assert planar.fixed_param_t2(DcDielectric(3.0, 10.0), G1) == pytest.approx(planar.fixed_param_t2(d, G1), rel=1e-15)
    with pytest.raises(DomainError):
        planar.fixed_param_t2(Drude(1.0), G1)


@pytest.mark.parametrize("model", [Drude(1.0, 0.1), DcDielectric(2.0, 10.0)])
def test_fixed_param_modes_approach_t2(model):
    # both modes approach their T^2 coefficients (slowly, ~sqrt(T))
    te, tm = planar.fixed_param_t2(model, G1)
    devs = []
    for T in (1e-3, 1e-5):
        devs.append((planar.delta_f(model, G1, T, "TE") / T**2 - te) / te)
        devs.append((planar.delta_f(model, G1, T, "TM") / T**2 - tm) / abs(tm))
    assert abs(devs[2]) < abs(devs[0]) and abs(devs[3]) < abs(devs[1])
    assert abs(devs[2]) < 0.05 and abs(devs[3]) < 0.05


def test_continued_phi_is_real_analytic():
    x = np.array([0.3, 1.7, 4.0])
    m = Drude(1.0, 0.1)
    up = planar.phi_continued(m, G1, 1j * x)
    down = planar.phi_continued(m, G1, -1j * x)
    assert np.allclose(up, np.conj(down), rtol=1e-10)


def test_plasma_model_rejected_on_continuation():
    with pytest.raises(ContinuationError):
        planar.delta_f(Plasma(1.0), G1, 0.1)


def test_input_errors():
    with pytest.raises(DomainError):
        planar.PlanarGeometry(0.0)
    with pytest.raises(DomainError):
        planar.free_energy(Drude(1.0), G1, 0.0)
    with pytest.raises((UnsupportedModelError, DomainError)):
        planar.phi(object(), G1, 0.1)
    with pytest.raises(DomainError):
        planar.phi(Drude(1.0), G1, -1.0)


def test_expansion_bundle():
    e = planar.expansion(Drude(1.0, 0.1), G1)
    assert e.f_linear == pytest.approx(planar.linear_coeff_drude(0.0, G1, 1.0))
    assert e.t2_te > 0 > e.t2_tm
    e0 = planar.expansion(DcDielectric(5.0), G1)
    assert math.isnan(e0.t2_te)
