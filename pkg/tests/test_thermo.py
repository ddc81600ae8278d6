import math

import pytest

from casimir_entropy import planar, sphereplane, thermo
from casimir_entropy.errors import DomainError, MissingCoefficientError, RegimeError, UnsupportedModelError
from casimir_entropy.materials import DcDielectric, Drude, PerfectConductor, TemperatureLaw
from casimir_entropy.thermo import ThermoConfig

G1 = planar.PlanarGeometry(1.0)
BALL = sphereplane.SpherePlaneGeometry.from_eps(0.5)
MODELS = [Drude(1.0), DcDielectric(5.0)]


@pytest.mark.slow
@pytest.mark.parametrize("model", MODELS, ids=["drude", "dc"])
@pytest.mark.parametrize("alpha,rtol", [(2.0, 1e-3), (1.0, 1e-3)])
def test_additivity_numerical_vs_breakdown(model, alpha, rtol):
    """-dF/dT of the full computed free energy equals S0 + S1 (alpha >= 1)."""
    cfg = ThermoConfig(G1, model, TemperatureLaw(1.0, alpha))
    T = 1e-4
    b = thermo.entropy_breakdown(cfg, T)
    assert thermo.numerical_entropy(cfg, T) == pytest.approx(b.total, rel=rtol)
    assert b.total == pytest.approx(b.s0 + b.s1)


@pytest.mark.slow
@pytest.mark.parametrize("model", MODELS, ids=["drude", "dc"])
def test_additivity_alpha_below_one_is_approached(model):
    """For alpha < 1 the breakdown is asymptotic (corrections ~ sqrt(T))."""
    cfg = ThermoConfig(G1, model, TemperatureLaw(1.0, 0.5))
    devs = []
    for T in (1e-3, 1e-5):
        devs.append(abs(thermo.numerical_entropy(cfg, T) / thermo.entropy_breakdown(cfg, T).total - 1))
    assert devs[1] < devs[0] and devs[1] < 0.05


def test_fixed_parameter_entropy_is_linear_in_T():
    cfg = ThermoConfig(G1, Drude(1.0, 0.1))
    te, tm = planar.fixed_param_t2(cfg.model, G1)
    b = thermo.entropy_breakdown(cfg, 1e-3)
    assert b.s0 == 0.0 and b.regime == "fixed"
    assert b.s1 == pytest.approx(-2e-3 * (te + tm))


def test_entropy_signs_vanishing_parameter():
    law = TemperatureLaw(1.0, 2.0)
    assert thermo.residual_entropy(ThermoConfig(G1, Drude(1.0), law)).value < 0
    assert thermo.residual_entropy(ThermoConfig(G1, DcDielectric(5.0), law)).value > 0
    assert thermo.residual_entropy(ThermoConfig(BALL, Drude(1.0), law)).value < 0
    assert thermo.residual_entropy(ThermoConfig(BALL, DcDielectric(5.0), law)).value > 0


def test_residual_entropy_values():
    law = TemperatureLaw(1.0, 3.0)
    r = thermo.residual_entropy(ThermoConfig(G1, DcDielectric(5.0), law))
    assert r.value == pytest.approx(planar.f_lin_dc(5.0) / (16 * math.pi), rel=1e-7)
    assert not r.diverges
    rb = thermo.residual_entropy(ThermoConfig(BALL, Drude(1.0), law))
    assert rb.value == pytest.approx(-sphereplane.f_ball_closed_form(Drude(1.0), BALL) / (2 * math.pi), rel=1e-8)
    assert thermo.residual_entropy(ThermoConfig(G1, Drude(1.0, 0.1))).value == 0.0


@pytest.mark.parametrize("alpha", [1.0, 0.5])
def test_residual_entropy_diverging_regimes(alpha):
    cfg = ThermoConfig(G1, Drude(1.0), TemperatureLaw(1.0, alpha))
    with pytest.raises(RegimeError):
        thermo.residual_entropy(cfg)
    r = thermo.residual_entropy(cfg, strict=False)
    assert r.diverges
    if alpha == 1.0:
        assert r.value == pytest.approx(thermo.entropy_breakdown(cfg, 1e-3).s1)
    else:
        assert r.value == 0.0


def test_vacuum_channel_grows_like_log_T_for_alpha_one():
    cfg = ThermoConfig(G1, DcDielectric(5.0), TemperatureLaw(1.0, 1.0))
    s = [thermo.entropy_breakdown(cfg, T).s0 for T in (1e-4, 1e-5, 1e-6)]
    d1, d2 = s[1] - s[0], s[2] - s[1]
    assert d1 == pytest.approx(d2, rel=1e-9)
    et, _ = planar.dc_vacuum_coeffs(5.0, 1.0)
    assert d1 == pytest.approx(-et * math.log(10), rel=1e-9)
    assert d1 > 0  # DC: positive, growing


def test_regime_labels():
    assert ThermoConfig(G1, Drude(1.0), TemperatureLaw(1.0, 0.3)).regime == "alpha<1"
    assert ThermoConfig(G1, Drude(1.0), TemperatureLaw(1.0, 1.0)).regime == "alpha=1"
    assert ThermoConfig(G1, Drude(1.0), TemperatureLaw(1.0, 2.0)).regime == "alpha>1"
    assert ThermoConfig(G1, Drude(1.0, 0.1)).regime == "fixed"


def test_config_errors():
    with pytest.raises(DomainError):
        ThermoConfig(G1, Drude(1.0))            # fixed parameters need gamma > 0
    with pytest.raises(UnsupportedModelError):
        ThermoConfig(G1, PerfectConductor(), TemperatureLaw(1.0, 1.0))
    with pytest.raises(MissingCoefficientError):
        thermo.entropy_breakdown(ThermoConfig(BALL, Drude(1.0), TemperatureLaw(1.0, 2.0)), 1e-3)
    contact = sphereplane.SpherePlaneGeometry.from_eps(1.0)
    with pytest.raises(RegimeError):
        thermo.entropy_breakdown(ThermoConfig(contact, Drude(1.0, 0.1)), 1e-3)
    with pytest.raises(UnsupportedModelError):
        thermo.numerical_entropy(ThermoConfig(BALL, Drude(1.0, 0.1)), 1e-3)
    with pytest.raises(DomainError):
        thermo.entropy_breakdown(ThermoConfig(G1, Drude(1.0, 0.1)), 0.0)


def test_ball_fixed_parameter_breakdown():
    model = DcDielectric(5.0, 10.0)
    b = thermo.entropy_breakdown(ThermoConfig(BALL, model), 1e-3)
    g_te = sphereplane.fixed_param_g("TE", BALL)
    g_tm = sphereplane.fixed_param_g("TM", BALL)
    assert b.s1 == pytest.approx(-2e-3 * (g_te * 10.0 + g_tm / 10.0))


def test_sign_audit_rows_subset():
    rows = [r for r in thermo.TABLE if r[1] == "Drude"]
    audit = thermo.sign_audit(rows=rows)
    assert audit.passed, [(r.geometry, r.channel, r.found) for r in audit.rows]
    for r in audit.rows:
        assert set(r.entropy) == {"TE", "TM"}
