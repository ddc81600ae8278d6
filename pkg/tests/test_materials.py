import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from casimir_entropy.errors import DomainError, UnsupportedModelError
from casimir_entropy.materials import (DcDielectric, Drude, PerfectConductor, Plasma, TemperatureLaw,
                                       low_frequency_forms, permittivity, substitution_partner)


def test_permittivity_values():
    assert permittivity(Drude(2.0, 0.5), 1.0) == pytest.approx(1 + 4 / 1.5)
    assert permittivity(DcDielectric(3.0, 2.0), 4.0) == pytest.approx(3.5)
    assert permittivity(Plasma(2.0), 2.0) == pytest.approx(2.0)
    assert permittivity(PerfectConductor(), 1.0) == np.inf
    with pytest.raises(DomainError):
        permittivity(Drude(1.0), 0.0)


@given(st.floats(1e-3, 1e3), st.floats(0.01, 100), st.floats(0, 10))
def test_chi_and_inv_eps_consistent(xi, wp, g):
    mpmath.mp.dps = 40
    x = mpmath.mpf(xi)
    exact = {"drude": 1 + mpmath.mpf(wp) ** 2 / (x * (mpmath.mpf(g) + x)),
             "dc": 1 + mpmath.mpf(wp) + mpmath.mpf(g) / x}
    for name, m in (("drude", Drude(wp, g)), ("dc", DcDielectric(1.0 + wp, g))):
        eps = exact[name]
        assert m.chi(xi) == pytest.approx(float((eps - 1) * x * x), rel=1e-12)
        assert m.inv_eps(xi) == pytest.approx(float(1 / eps), rel=1e-12)


def test_parameter_validation():
    with pytest.raises(DomainError):
        Drude(0.0)
    with pytest.raises(DomainError):
        Drude(1.0, -1.0)
    with pytest.raises(DomainError):
        DcDielectric(1.0)
    with pytest.raises(DomainError):
        TemperatureLaw(1.0, 0.0)


def test_temperature_law():
    law = TemperatureLaw(2.0, 1.5)
    assert law(4.0) == pytest.approx(16.0)
    assert law.derivative(4.0) == pytest.approx(1.5 * 2 * 2.0)
    assert [TemperatureLaw(1, a).regime for a in (0.5, 1, 2)] == ["alpha<1", "alpha=1", "alpha>1"]


def test_low_frequency_forms_exact_for_dc():
    m = DcDielectric(5.0, 3.0)
    zeta = 0.7
    inv, root = low_frequency_forms(m, zeta)
    xi = m.sigma * zeta
    eps = permittivity(m, xi)
    assert inv == pytest.approx(1 / eps)
    assert root == pytest.approx(np.sqrt(eps) * xi)


def test_low_frequency_forms_drude_limit():
    m = Drude(2.0, 1e-6)
    zeta = 0.5
    inv, root = low_frequency_forms(m, zeta)
    xi = m.gamma * zeta
    eps = permittivity(m, xi)
    assert inv == pytest.approx(1 / eps, rel=1e-6)
    assert root == pytest.approx(np.sqrt(eps) * xi, rel=1e-6)


def test_low_frequency_forms_fixed_and_errors():
    inv, root = low_frequency_forms(Drude(2.0, 0.5), 1e-8, fixed=True)
    assert inv == pytest.approx(0.5 / 4 * 1e-8)
    with pytest.raises(DomainError):
        low_frequency_forms(Drude(2.0), 1e-3, fixed=True)
    with pytest.raises(UnsupportedModelError):
        low_frequency_forms(Plasma(1.0), 0.1)


def test_substitution_partner_matches_low_frequency():
    d = Drude(3.0, 0.2)
    dc = substitution_partner(d)
    xi = 1e-9
    assert permittivity(dc, xi) == pytest.approx(permittivity(d, xi), rel=1e-6)
    back = substitution_partner(dc)
    assert back.omega_p**2 / back.gamma == pytest.approx(dc.sigma)
