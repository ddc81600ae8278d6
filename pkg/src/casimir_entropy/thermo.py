"""Entropy assembly: vacuum-energy and thermal-photon channels, residual
entropy and the sign audit of the low-temperature regimes.

With F(T) = E0(mu(T)) + Delta_T F(T; mu(T)) the entropy S = -dF/dT splits
into

* S0 = -(dE0/dmu)(dmu/dT), present when the material parameter mu (gamma
  for Drude, sigma for DC) follows a law mu = mu1 T**alpha, and
* S1 = -d(Delta_T F)/dT, the thermal-photon part.

:func:`entropy_breakdown` assembles both from the low-temperature
coefficients of :mod:`.planar` and :mod:`.sphereplane`;
:func:`numerical_entropy` differentiates the computed free energy directly
and serves as the independent check. :func:`sign_audit` extracts the sign of
the entropy mode by mode from computed free-energy slopes.

All quantities are in natural units (hbar = c = k_B = 1); planar results are
per unit area.
"""
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import planar, sphereplane
from .errors import DomainError, MissingCoefficientError, RegimeError, UnsupportedModelError
from .materials import DcDielectric, Drude, TemperatureLaw
from .planar import PlanarGeometry
from .sphereplane import SpherePlaneGeometry

REGIMES = ("alpha<1", "alpha=1", "alpha>1", "fixed")

#: relative step of numerical T-derivatives (refined by one Richardson step)
DERIVATIVE_STEP = 0.1


@dataclass(frozen=True)
class ThermoConfig:
    """Geometry, material and (optionally) a temperature law for its parameter.

    Without a law the model's own ``gamma`` or ``sigma`` is held fixed and
    must be positive. With a law that parameter is replaced by
    ``law(T)`` at every temperature (the model's own value is ignored).
    ``l_m`` and ``l_m_g`` are the ball truncations for the linear and the
    T**2 coefficients.
    """

    geometry: Union[PlanarGeometry, SpherePlaneGeometry]
    model: Union[Drude, DcDielectric]
    law: Optional[TemperatureLaw] = None
    l_m: int = sphereplane.DEFAULT_LM_F
    l_m_g: int = sphereplane.DEFAULT_LM_G

    def __post_init__(self):
        if not isinstance(self.model, (Drude, DcDielectric)):
            raise UnsupportedModelError(
                f"entropy assembly needs a Drude or DC model, not {type(self.model).__name__}")
        if not isinstance(self.geometry, (PlanarGeometry, SpherePlaneGeometry)):
            raise UnsupportedModelError(f"unknown geometry {self.geometry!r}")
        if self.law is None and not _parameter(self.model) > 0:
            raise DomainError("fixed-parameter configurations need gamma > 0 or sigma > 0")

    @property
    def regime(self):
        return "fixed" if self.law is None else self.law.regime

    @property
    def planar(self):
        return isinstance(self.geometry, PlanarGeometry)

    def model_at(self, T):
        """The material model with its parameter evaluated at temperature T."""
        if self.law is None:
            return self.model
        return self.model.with_relaxation(float(self.law(T)))


@dataclass(frozen=True)
class EntropyBreakdown:
    """S = S0 + S1 at one temperature; S0 = 0 for fixed parameters."""

    s0: float
    s1: float
    total: float
    regime: str


@dataclass(frozen=True)
class ResidualEntropy:
    """Entropy in the limit T -> 0.

    ``value`` is the limit of the thermal-photon channel S1. ``diverges``
    flags the regimes alpha <= 1, where the vacuum-energy channel S0 grows
    without bound (like ln T for alpha = 1, like T**(alpha-1) ln T below),
    so that the total has no finite limit.
    """

    value: float
    diverges: bool


@dataclass(frozen=True)
class AuditRow:
    """One cell of the sign table: expected and found (mode, sign) pairs.

    ``entropy`` maps each mode to its computed entropy at the audit
    temperature, ``exponent`` to the local power p in S ~ T**p (vacuum rows:
    the per-decade increment of S0) used to decide which modes contribute
    at leading order.
    """

    geometry: str
    model: str
    channel: str
    expected: tuple
    found: tuple
    entropy: dict
    exponent: dict

    @property
    def passed(self):
        return self.expected == self.found


@dataclass(frozen=True)
class SignAudit:
    """Mode-tagged entropy signs for all rows of the sign table."""

    T: float
    rows: tuple

    @property
    def passed(self):
        return all(r.passed for r in self.rows)


# --- helpers -------------------------------------------------------------------

def _parameter(model):
    return model.gamma if isinstance(model, Drude) else model.sigma


def _derivative(difference, T, step=DERIVATIVE_STEP):
    """dF/dT from ``difference(t1, t2) = F(t1) - F(t2)``.

    Central differences with h = step*T and h/2, combined by one Richardson
    step (error O(h**4)).
    """
    h = step * T
    d1 = difference(T + h, T - h) / (2.0 * h)
    d2 = difference(T + 0.5 * h, T - 0.5 * h) / h
    return (4.0 * d2 - d1) / 3.0


def _planar_coeffs(model, geom, tol):
    if isinstance(model, Drude):
        return planar.drude_vacuum_coeffs(model.omega_p, geom.a, tol=tol)
    return planar.dc_vacuum_coeffs(model.eps0, geom.a, tol=tol)


def _planar_linear(model, geom, mu1, tol):
    """Linear-in-T coefficient of Delta_T F, i.e. Delta F = c T."""
    pref = 16.0 * math.pi * geom.a**2
    if isinstance(model, Drude):
        return planar.linear_coeff_drude(mu1, geom, model.omega_p, tol=tol) / pref
    return -planar.linear_coeff_dc(mu1, model.eps0, tol=tol) / pref


def _planar_s1(config, T, tol):
    model, geom, law = config.model, config.geometry, config.law
    if law is None:
        t2_te, t2_tm = planar.fixed_param_t2(model, geom)
        return -2.0 * T * (t2_te + t2_tm)
    if law.alpha >= 1.0:
        return -_planar_linear(model, geom, law.mu1 if law.alpha == 1.0 else 0.0, tol)
    # alpha < 1: mu(T) >> T, so Delta F = t2(mu(T)) T**2 with the fixed-
    # parameter coefficients; t2_te ~ 1/mu and t2_tm ~ mu for Drude, the
    # reverse for DC
    t2_te, t2_tm = planar.fixed_param_t2(config.model_at(T), geom)
    a = law.alpha
    if isinstance(model, Drude):
        return -T * ((2.0 - a) * t2_te + (2.0 + a) * t2_tm)
    return -T * ((2.0 + a) * t2_te + (2.0 - a) * t2_tm)


def _ball_g(config):
    geom = config.geometry
    if geom.contact:
        raise RegimeError("the T**2 coefficients of the ball need eps < 1")
    g_te = sphereplane.fixed_param_g("TE", geom, config.l_m_g)
    g_tm = sphereplane.fixed_param_g("TM", geom, config.l_m_g)
    return g_te, g_tm


def _ball_t2(config, model):
    """(TE, TM) coefficients of T**2 in Delta_T F for the ball, fixed parameters."""
    g_te, g_tm = _ball_g(config)
    R2 = config.geometry.R ** 2
    if isinstance(model, Drude):
        s = model.omega_p**2 / model.gamma
    else:
        s = model.sigma
    return g_te * s * R2, g_tm / s


# --- public operations ---------------------------------------------------------

def entropy_breakdown(config, T, tol=1e-9):
    """S0, S1 and their sum at temperature ``T`` from the expansion coefficients.

    Planar, with a law mu = mu1 T**alpha::

        S0 = -alpha mu1 T**(alpha-1) [-ln(2 a mu) E~1 - E~1 + E1]
        S1 = -f_D(mu1)/(16 pi a**2)   (Drude, alpha = 1; mu1 -> 0 for alpha > 1)
        S1 = +f_DC(mu1)/(16 pi a**2)  (DC)

    and for alpha < 1 S1 follows from the T**2 coefficients evaluated at
    mu(T). For fixed parameters S0 = 0 and S1 = -2 T (t2_TE + t2_TM).

    Ball: only the fixed-parameter case is assembled (S1 = -2 T times the
    g-coefficients); with a law the vacuum energy of the ball would be
    needed for S0, which is not available.

    Raises
    ------
    MissingCoefficientError
        Ball with a temperature law.
    RegimeError
        Ball at contact (eps = 1), where g_TM diverges.
    """
    if not T > 0:
        raise DomainError("T must be > 0")
    law = config.law
    if config.planar:
        geom = config.geometry
        s1 = _planar_s1(config, T, tol)
        if law is None:
            s0 = 0.0
        else:
            et, e1 = _planar_coeffs(config.model, geom, tol)
            mu = float(law(T))
            s0 = -float(law.derivative(T)) * planar.vacuum_energy_slope(et, e1, mu, geom.a)
    else:
        if law is not None:
            raise MissingCoefficientError(
                "S0 for the ball needs the small-parameter expansion of its vacuum "
                "energy, which is not available; use residual_entropy for the T -> 0 limit")
        t_te, t_tm = _ball_t2(config, config.model)
        s0, s1 = 0.0, -2.0 * T * (t_te + t_tm)
    return EntropyBreakdown(float(s0), float(s1), float(s0 + s1), config.regime)


def residual_entropy(config, strict=True, tol=1e-9):
    """Entropy at T -> 0.

    * fixed parameters: 0 (the free energy starts at T**2);
    * alpha > 1: planar -f_D(0)/(16 pi a**2) (Drude, < 0) or
      +f_DC(0)/(16 pi a**2) (DC, > 0); ball -f_ball/(2 pi);
    * alpha <= 1: the vacuum-energy channel diverges. With ``strict=True``
      this raises :class:`RegimeError`; otherwise the finite limit of the
      thermal-photon channel is returned (f at mu1 for alpha = 1, zero for
      alpha < 1) with ``diverges=True``.
    """
    law = config.law
    if law is None:
        if not config.planar:
            _ball_g(config)     # the T**2 law needs convergent coefficients
        return ResidualEntropy(0.0, False)
    diverges = law.alpha <= 1.0
    if diverges and strict:
        raise RegimeError(
            f"the entropy diverges for T -> 0 when alpha = {law.alpha:g} <= 1; "
            "use entropy_breakdown at finite T or strict=False")
    if law.alpha < 1.0:
        return ResidualEntropy(0.0, True)
    mu1 = law.mu1 if law.alpha == 1.0 else 0.0
    if config.planar:
        value = -_planar_linear(config.model, config.geometry, mu1, tol)
    else:
        f = sphereplane.linear_coeff_ball(config.model, config.geometry, config.l_m, mu1=mu1, tol=tol)
        value = -f / (2.0 * math.pi)
    return ResidualEntropy(float(value), diverges)


def free_energy_difference(config, t1, t2, modes=planar.MODES, tol=1e-10):
    """F(t1) - F(t2) for a planar configuration, both channels included.

    The vacuum-energy part is integrated as one difference of integrands,
    which keeps it accurate when mu(t1) and mu(t2) are close.
    """
    if not config.planar:
        raise UnsupportedModelError("finite-temperature free energies exist for planar geometries only")
    geom = config.geometry
    m1, m2 = config.model_at(t1), config.model_at(t2)
    d = planar.delta_f(m1, geom, t1, modes, tol=tol) - planar.delta_f(m2, geom, t2, modes, tol=tol)
    if config.law is not None:
        # the vacuum part only needs accuracy relative to the whole difference
        d += planar.vacuum_energy_difference(m1, m2, geom, modes, tol=tol, atol=tol * abs(d))
    return d


def numerical_entropy(config, T, modes=planar.MODES, tol=1e-10):
    """-dF/dT of the computed planar free energy (central differences).

    The step is ``DERIVATIVE_STEP * T`` refined by one Richardson step; this
    is the independent check of :func:`entropy_breakdown`.
    """
    return -_derivative(lambda t1, t2: free_energy_difference(config, t1, t2, modes, tol), T)


def numerical_thermal_entropy(config, T, modes=planar.MODES, tol=1e-10):
    """Numerical S1 = -d(Delta_T F)/dT of a planar configuration.

    Only the thermal-photon part is differentiated (the parameter follows
    its law inside Delta_T F); compare with ``entropy_breakdown(...).s1``.
    """
    if not config.planar:
        raise UnsupportedModelError("finite-temperature free energies exist for planar geometries only")
    geom = config.geometry

    def diff(t1, t2):
        return (planar.delta_f(config.model_at(t1), geom, t1, modes, tol=tol)
                - planar.delta_f(config.model_at(t2), geom, t2, modes, tol=tol))

    return -_derivative(diff, T)


# --- sign audit ----------------------------------------------------------------

#: rows of the sign table: (geometry, model, channel) -> expected (mode, sign)
TABLE = (
    ("planar", "Drude", "vacuum", (("TE", -1),)),
    ("planar", "DC", "vacuum", (("TM", +1),)),
    ("planar", "Drude", "thermal", (("TE", -1),)),
    ("planar", "DC", "thermal", (("TM", +1),)),
    ("planar", "Drude", "fixed", (("TE", -1), ("TM", +1))),
    ("planar", "DC", "fixed", (("TM", +1),)),
    ("ball", "Drude", "thermal", (("TE", -1),)),
    ("ball", "DC", "thermal", (("TM", +1),)),
    ("ball", "Drude", "fixed", (("TE", -1), ("TM", +1))),
    ("ball", "DC", "fixed", (("TE", -1), ("TM", +1))),
)


@dataclass(frozen=True)
class AuditParameters:
    """Parameters of the sign audit (nondimensional, a = 1 resp. R = 1).

    ``gamma`` and ``sigma`` are the fixed-parameter values (related by
    sigma = omega_p**2/gamma); the vanishing-parameter rows use laws with
    ``mu1`` and exponent ``alpha_vacuum`` (vacuum channel, which needs
    alpha <= 1) or ``alpha_thermal`` (thermal channel, alpha > 1).
    """

    omega_p_a: float = 1.0
    eps0: float = 5.0
    eps: float = 0.5
    omega_p_R: float = 1.0
    gamma: float = 0.1
    sigma: float = 10.0
    mu1: float = 1.0
    alpha_vacuum: float = 1.0
    alpha_thermal: float = 2.0
    decade: float = 10.0
    leading_window: float = 0.5
    vacuum_share: float = 0.1


def _planar_mode_entropy(config, T, channel):
    """Per-mode entropy of one channel from numerical free-energy slopes."""
    geom = config.geometry
    out = {}
    for mode in planar.MODES:
        if channel == "vacuum":
            def diff(t1, t2, mode=mode):
                return planar.vacuum_energy_difference(config.model_at(t1), config.model_at(t2),
                                                       geom, mode)
        else:
            def diff(t1, t2, mode=mode):
                return (planar.delta_f(config.model_at(t1), geom, t1, mode)
                        - planar.delta_f(config.model_at(t2), geom, t2, mode))
        out[mode] = -_derivative(diff, T)
    return out


def _ball_mode_entropy(config, T, channel):
    """Per-mode entropy of the ball from its low-temperature free energy.

    The ball enters only through its low-temperature expansion, so the
    free energy differentiated here is Delta F_mode(T) built from f_ball or
    the g-coefficients; a mode absent at that order has zero entropy.
    """
    model = config.model
    if channel == "thermal":
        te = isinstance(model, Drude)
        f = sphereplane.linear_coeff_ball(model, config.geometry, config.l_m,
                                          mu1=config.law.mu1 if config.law.alpha == 1.0 else 0.0)
        coeff = {"TE": f / (2.0 * math.pi) if te else 0.0, "TM": 0.0 if te else f / (2.0 * math.pi)}
        return {m: -_derivative(lambda t1, t2, c=c: c * (t1 - t2), T) for m, c in coeff.items()}
    t_te, t_tm = _ball_t2(config, model)
    coeff = {"TE": t_te, "TM": t_tm}
    return {m: -_derivative(lambda t1, t2, c=c: c * (t1 * t1 - t2 * t2), T) for m, c in coeff.items()}


def _audit_config(geometry, model_name, channel, p):
    if geometry == "planar":
        geom = PlanarGeometry(1.0)
        wp = p.omega_p_a
    else:
        geom = SpherePlaneGeometry.from_eps(p.eps, R=1.0)
        wp = p.omega_p_R
    if channel == "fixed":
        model = Drude(wp, p.gamma) if model_name == "Drude" else DcDielectric(p.eps0, p.sigma)
        return ThermoConfig(geom, model)
    alpha = p.alpha_vacuum if channel == "vacuum" else p.alpha_thermal
    model = Drude(wp) if model_name == "Drude" else DcDielectric(p.eps0)
    return ThermoConfig(geom, model, TemperatureLaw(p.mu1, alpha))


def _classify(s_hi, s_lo, channel, p):
    """Leading (mode, sign) pairs from entropies at T and T/decade."""
    modes = planar.MODES
    if channel == "vacuum":
        # the diverging part is ~ ln T: it shows as a per-decade increment;
        # modes whose S0 stays constant are subleading
        inc = {m: s_lo[m] - s_hi[m] for m in modes}
        big = max(abs(v) for v in inc.values())
        found = tuple((m, int(np.sign(inc[m]))) for m in modes
                      if big > 0 and abs(inc[m]) >= p.vacuum_share * big)
        return found, inc
    expo = {}
    for m in modes:
        if s_hi[m] == 0.0 or s_lo[m] == 0.0:
            expo[m] = math.inf
        else:
            expo[m] = math.log(abs(s_hi[m] / s_lo[m])) / math.log(p.decade)
    lead = min(expo.values())
    found = tuple((m, int(np.sign(s_hi[m]))) for m in modes
                  if math.isfinite(expo[m]) and expo[m] <= lead + p.leading_window)
    return found, expo


def sign_audit(T=1e-3, params=None, rows=TABLE):
    """Recompute the (mode, sign) pairs of the sign table from free-energy slopes.

    For every row the entropy of each mode is obtained as minus the slope
    of the computed free energy at ``T`` and at ``T / decade``. A mode is
    reported as contributing when its entropy vanishes no faster than the
    leading one (local exponents within ``leading_window``); for the
    vacuum-energy rows, when it carries the logarithmically growing part
    (per-decade increment at least ``vacuum_share`` of the largest). The
    reported sign is that of the entropy (vacuum rows: of the growing part).
    """
    p = params or AuditParameters()
    out = []
    for geometry, model_name, channel, expected in rows:
        config = _audit_config(geometry, model_name, channel, p)
        per_mode = _planar_mode_entropy if geometry == "planar" else _ball_mode_entropy
        s_hi = per_mode(config, T, channel)
        s_lo = per_mode(config, T / p.decade, channel)
        found, expo = _classify(s_hi, s_lo, channel, p)
        out.append(AuditRow(geometry, model_name, channel, tuple(expected), found,
                            {m: float(v) for m, v in s_hi.items()},
                            {m: float(v) for m, v in expo.items()}))
    return SignAudit(T, tuple(out))
