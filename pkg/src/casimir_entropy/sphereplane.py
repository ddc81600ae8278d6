"""Low-temperature Casimir free energy of a ball in front of a plane.

The plane is a perfect conductor; the ball (radius R, center at distance L
from the plane, eps = R/L) is made of a Drude metal or a dielectric with DC
conductivity. At the orders implemented here the round-trip operator M is
block diagonal in the polarizations and in the azimuthal number m, and only
the stretched coupling l'' = l + l' of the translation survives::

    M_ll'(m) = -+ W_ll'(m) t_l,
    W_ll'(m) = (sqrt(pi)/2) (eps/2)**(l+l'+1) k_{l+l'}(0) H_ll'(m) Lambda_ll'

with the upper sign for TE and the lower one for TM; W < 0. Orbital numbers
run over l = max(1, |m|) ... l_m; blocks with m != 0 occur twice (+-m).

Two families of quantities are provided:

* f_ball, the coefficient of the free energy linear in T when the material
  parameter (gamma or sigma) vanishes like mu1 * T:
  Delta F = (T / 2 pi) f_ball, entropy -f_ball / (2 pi);
* g_TE and g_TM, the T**2 coefficients at fixed parameters:
  Delta F_TE = g_TE omega_p**2 R**2 T**2 / gamma and
  Delta F_TM = g_TM gamma T**2 / omega_p**2 (Drude; sigma <-> omega_p**2/gamma
  for the DC model).
"""
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError, RegimeError, RoundTripError, UnsupportedModelError
from .materials import DcDielectric, Drude
from .numerics import QuadratureResult, integrate_semi_infinite
from .specfun import bessel_arrays, geometry_coeff, series_coeffs

KINDS = ("drude_zeta", "dc_zeta", "te1", "tm0", "tm1")
DEFAULT_LM_F = 4
DEFAULT_LM_G = 8

_SQRT_PI_2 = 0.5 * math.sqrt(math.pi)


@dataclass(frozen=True)
class SpherePlaneGeometry:
    """Ball of radius ``R`` with its center at distance ``L`` from the plane.

    ``eps = R / L`` must lie in (0, 1]; eps = 1 (contact) is admitted for
    convergence studies and flagged by :attr:`contact`.
    """

    R: float
    L: float

    def __post_init__(self):
        if not self.R > 0 or not self.L > 0:
            raise DomainError("R and L must be > 0")
        if self.R > self.L * (1.0 + 1e-15):
            raise DomainError(f"eps = R/L must be <= 1, got {self.R / self.L}")

    @classmethod
    def from_eps(cls, eps, R=1.0):
        if not 0.0 < eps <= 1.0:
            raise DomainError(f"eps must be in (0, 1], got {eps}")
        return cls(R, R / eps)

    @property
    def eps(self):
        return min(self.R / self.L, 1.0)

    @property
    def contact(self):
        """True at eps = 1, where the vacuum energy is infinite (unphysical)."""
        return self.eps >= 1.0


@dataclass(frozen=True)
class PolarizedMatrix:
    """Truncated round-trip matrix of one polarization, stored per m block.

    ``blocks[m]`` has rows/columns l = max(1, m) ... l_max; a trailing batch
    axis in front (shape (..., n, n)) holds several frequencies at once.
    """

    l_max: int
    mode: str
    blocks: dict = field(repr=False)

    @staticmethod
    def degeneracy(m):
        return 1 if m == 0 else 2

    def trace(self):
        return sum(self.degeneracy(m) * np.trace(b, axis1=-2, axis2=-1) for m, b in self.blocks.items())

    def eigenvalues(self):
        return {m: np.linalg.eigvals(b) for m, b in self.blocks.items()}

    def spectral_radius(self):
        return np.max(np.stack([np.max(np.abs(ev), axis=-1) for ev in self.eigenvalues().values()]), axis=0)

    def trace_log(self):
        """Tr ln(1 - M) summed over m with degeneracy weights.

        Computed from the eigenvalues with the principal logarithm, which is
        continuous as long as the spectral radius stays below 1.
        """
        total = 0.0
        for m, ev in self.eigenvalues().items():
            if np.any(np.abs(ev) >= 1.0):
                raise RoundTripError(f"spectral radius >= 1 in block m = {m}")
            total = total + self.degeneracy(m) * np.sum(np.log1p(-ev), axis=-1)
        return total

    def resolvent_trace(self, other):
        """Tr (1 - self)^-1 other, blockwise."""
        total = 0.0
        for m, b in self.blocks.items():
            ev = np.linalg.eigvals(b)
            if np.any(np.abs(ev) >= 1.0):
                raise RoundTripError(f"spectral radius >= 1 in block m = {m}; resolvent undefined")
            eye = np.eye(b.shape[-1])
            total = total + self.degeneracy(m) * np.trace(np.linalg.solve(eye - b, other.blocks[m]))
        return total


@dataclass(frozen=True)
class BallExpansion:
    """Low-temperature coefficients of the ball-plane free energy."""

    f_ball: float
    g_te: float
    g_tm: float
    convergence: dict
    contact: bool = False


@dataclass(frozen=True)
class ConvergenceProfile:
    """Values for increasing l_m with successive relative differences."""

    l_list: tuple
    values: tuple
    differences: tuple
    classification: str


# --- t-functions -------------------------------------------------------------

@dataclass(frozen=True)
class TSeries:
    """Low-frequency constants of the ball's T-matrix for orbital number l.

    t_TE = t1_te * w**2 + ..., with w**2 = eps xi**2 R**2 (-> omega_p**2 R**2
    xi / gamma for Drude, sigma R**2 xi for DC); t_TM = t0_tm + t1_tm / eps
    + ..., with 1/eps -> gamma xi / omega_p**2 (Drude) or xi / sigma (DC).
    """

    l: int
    t1_te: float
    t0_tm: float
    t1_tm: float


def _check_l(l):
    if int(l) != l or l < 1:
        raise DomainError(f"orbital number must be an integer >= 1, got {l}")
    return int(l)


def t_series(model, l):
    """The constants t1_TE, t0_TM, t1_TM of :class:`TSeries` for order l.

    They are material independent; ``model`` is checked only (Drude and DC
    share them under sigma <-> omega_p**2/gamma).
    """
    if not isinstance(model, (Drude, DcDielectric)):
        raise UnsupportedModelError(f"t-series exist for Drude and DC models, not {model!r}")
    return _t_series(_check_l(l))


@lru_cache(maxsize=None)
def _t_series(l):
    c = series_coeffs(l)
    den = c.k0 * c.it0 - c.kt0 * c.i0
    t1_te = (c.i0 * c.it1 - c.it0 * c.i1) / den
    t0_tm = c.it0 / c.kt0
    t1_tm = t0_tm * (-1.0 + c.k0 * c.it0 / (c.kt0 * c.i0))
    return TSeries(l, t1_te, t0_tm, t1_tm)


def _t_te_drude(l, w2):
    """t_TE at xi R -> 0 for complex w**2 (the functions are even in w)."""
    c = series_coeffs(l)
    w = np.sqrt(np.asarray(w2, dtype=complex))
    i, it, _, _ = bessel_arrays(l, np.atleast_1d(w))
    return (c.i0 * it - c.it0 * i) / (c.k0 * it - c.kt0 * i)


def _t_tm_dc(l, u):
    """t_TM at xi R -> 0 and w -> 0 as a function of u = 1/eps."""
    c = series_coeffs(l)
    u = np.asarray(u, dtype=complex)
    return (u - 1.0) * c.i0 * c.it0 / (u * c.k0 * c.it0 - c.kt0 * c.i0)


def t_low_freq(model, l, zeta, R=1.0):
    """t-function of the ball at rescaled frequency ``zeta`` (complex allowed).

    Drude (gamma -> 0, xi = gamma zeta): the TE function at
    w = omega_p R sqrt(zeta / (1 + zeta)); DC (sigma -> 0, xi = sigma zeta):
    the TM function with 1/eps = zeta / (1 + eps0 zeta). The respective other
    mode is suppressed by a power of the vanishing parameter.
    """
    l = _check_l(l)
    z = np.asarray(zeta, dtype=complex)
    if isinstance(model, Drude):
        w2 = (model.omega_p * R) ** 2 * z / (1.0 + z)
        out = _t_te_drude(l, np.ravel(w2)).reshape(z.shape)
    elif isinstance(model, DcDielectric):
        out = _t_tm_dc(l, z / (1.0 + model.eps0 * z))
    else:
        raise UnsupportedModelError(f"low-frequency t-functions exist for Drude and DC models, not {model!r}")
    return out if out.ndim else complex(out)


# --- matrices ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _weight_blocks(eps, l_max):
    """Static coupling W_ll'(m) per m (real, negative entries)."""
    blocks = {}
    for m in range(0, l_max + 1):
        ls = range(max(1, m), l_max + 1)
        w = np.empty((len(ls), len(ls)))
        for i, l in enumerate(ls):
            for j, lp in enumerate(ls):
                g = geometry_coeff(l, lp, m)
                k0 = series_coeffs(l + lp).k0
                w[i, j] = _SQRT_PI_2 * (eps / 2.0) ** (l + lp + 1) * k0 * g.H * g.Lambda
        w.setflags(write=False)
        blocks[m] = w
    return blocks


def _check_lm(l_m):
    if int(l_m) != l_m or l_m < 1:
        raise DomainError(f"l_m must be an integer >= 1, got {l_m}")
    return int(l_m)


def _assemble(eps, l_m, mode, t_of_l):
    """Blocks M_ll' = sign W_ll' t_l with t_of_l(l) scalar or batch array."""
    sign = -1.0 if mode == "TE" else 1.0
    tv = {l: np.asarray(t_of_l(l)) for l in range(1, l_m + 1)}
    blocks = {}
    for m, w in _weight_blocks(eps, l_m).items():
        ls = range(max(1, m), l_m + 1)
        t = np.stack([tv[l] for l in ls], axis=-1)  # (..., n)
        blocks[m] = sign * t[..., :, None] * w
    return PolarizedMatrix(l_m, mode, blocks)


def build_matrix(kind, geom, model=None, zeta=None, l_m=DEFAULT_LM_F):
    """Round-trip matrix of the given kind.

    * ``drude_zeta`` / ``dc_zeta``: M(zeta) of the linear-term analysis
      (``zeta`` scalar or array, complex allowed);
    * ``te1``: M1_TE, the coefficient of w**2 in M_TE at fixed parameters;
    * ``tm0`` / ``tm1``: M0_TM (perfect-conductor ball) and the coefficient
      M1_TM of 1/eps.
    """
    l_m = _check_lm(l_m)
    eps = geom.eps
    if kind == "drude_zeta":
        if not isinstance(model, Drude):
            raise UnsupportedModelError("drude_zeta needs a Drude model")
        return _assemble(eps, l_m, "TE", lambda l: t_low_freq(model, l, zeta, geom.R))
    if kind == "dc_zeta":
        if not isinstance(model, DcDielectric):
            raise UnsupportedModelError("dc_zeta needs a DcDielectric model")
        return _assemble(eps, l_m, "TM", lambda l: t_low_freq(model, l, zeta, geom.R))
    if kind == "te1":
        return _assemble(eps, l_m, "TE", lambda l: _t_series(l).t1_te)
    if kind == "tm0":
        return _assemble(eps, l_m, "TM", lambda l: _t_series(l).t0_tm)
    if kind == "tm1":
        return _assemble(eps, l_m, "TM", lambda l: _t_series(l).t1_tm)
    raise DomainError(f"unknown matrix kind {kind!r}; expected one of {KINDS}")


def static_matrix(geom, model, l_m=DEFAULT_LM_F, limit="high"):
    """M at the ends of the rescaled-frequency axis.

    Drude: zeta -> 0 gives M = 0, zeta -> inf the plasma-model static TE
    matrix (w = omega_p R). DC: zeta -> 0 the perfect-conductor TM matrix,
    zeta -> inf the static dielectric one (1/eps = 1/eps0).
    """
    l_m = _check_lm(l_m)
    eps = geom.eps
    if isinstance(model, Drude):
        w2 = (model.omega_p * geom.R) ** 2 if limit == "high" else 0.0
        return _assemble(eps, l_m, "TE", lambda l: _t_te_drude(l, w2)[0])
    if isinstance(model, DcDielectric):
        u = 1.0 / model.eps0 if limit == "high" else 0.0
        return _assemble(eps, l_m, "TM", lambda l: _t_tm_dc(l, u))
    raise UnsupportedModelError(f"{model!r}")


# --- linear term ---------------------------------------------------------------

def _ball_weight(mu1, zeta):
    if mu1 == 0.0:
        return 1.0 / zeta
    with np.errstate(over="ignore"):
        return mu1 / np.expm1(mu1 * zeta)


def linear_coeff_ball(model, geom, l_m=DEFAULT_LM_F, mu1=0.0, tol=1e-9, full=False, check_rtol=1e-12):
    """f_ball: Delta F = (T / 2 pi) f_ball for gamma (or sigma) = mu1 * T.

    f_ball = int dzeta w(zeta) i Tr[ln(1 - M(i zeta)) - ln(1 - M(-i zeta))]
    with w = mu1/(exp(mu1 zeta) - 1) (-> 1/zeta for mu1 = 0, the limit of a
    parameter vanishing faster than T). Both sides of the cut are evaluated
    and must be complex conjugates (checked to ``check_rtol``).

    Drude: f_ball > 0 (entropy < 0, TE); DC: f_ball < 0 (entropy > 0, TM).
    """
    if not mu1 >= 0:
        raise DomainError("mu1 must be >= 0")
    kind = "drude_zeta" if isinstance(model, Drude) else "dc_zeta"
    if not isinstance(model, (Drude, DcDielectric)):
        raise UnsupportedModelError(f"f_ball exists for Drude and DC models, not {model!r}")
    l_m = _check_lm(l_m)

    def integrand(zeta):
        up = build_matrix(kind, geom, model, 1j * zeta, l_m).trace_log()
        down = build_matrix(kind, geom, model, -1j * zeta, l_m).trace_log()
        jump = 1j * (up - down)
        size = np.maximum(np.abs(up), np.finfo(float).tiny)
        if np.any(np.abs(jump.imag) > check_rtol * size) or np.any(
                np.abs(jump.real + 2.0 * up.imag) > check_rtol * size):
            raise RoundTripError("Tr ln(1 - M) is not real-analytic across the cut")
        return _ball_weight(mu1, zeta) * jump.real

    scale = 1.0 if isinstance(model, Drude) else 1.0 / model.eps0
    res = integrate_semi_infinite(integrand, tol=tol, atol=1e-300, scale=scale)
    return res if full else res.value


def f_ball_closed_form(model, geom, l_m=DEFAULT_LM_F):
    """f_ball at mu1 = 0 from its end points: pi [Tr ln(1 - M(0)) - Tr ln(1 - M(inf))]."""
    lo = static_matrix(geom, model, l_m, "low")
    hi = static_matrix(geom, model, l_m, "high")
    g0 = 0.0 if isinstance(model, Drude) else lo.trace_log()
    return float(np.real(math.pi * (g0 - hi.trace_log())))


# --- fixed parameters ----------------------------------------------------------

def fixed_param_g(mode, geom, l_m=DEFAULT_LM_G, divergence_study=False):
    """T**2 coefficient g_TE or g_TM at fixed material parameters.

    g_TE = (pi/6) Tr M1_TE and g_TM = (pi/6) Tr (1 - M0_TM)^-1 M1_TM. At
    contact (eps = 1) the TM series in l_m does not converge; there the value
    is only returned with ``divergence_study=True``.
    """
    l_m = _check_lm(l_m)
    if mode == "TE":
        return float(math.pi / 6.0 * build_matrix("te1", geom, l_m=l_m).trace())
    if mode == "TM":
        if geom.contact and not divergence_study:
            raise RegimeError("g_TM diverges with l_m at contact (eps = 1); "
                              "use divergence_study=True or convergence_profile")
        m0 = build_matrix("tm0", geom, l_m=l_m)
        m1 = build_matrix("tm1", geom, l_m=l_m)
        return float(np.real(math.pi / 6.0 * m0.resolvent_trace(m1)))
    raise DomainError(f"mode must be 'TE' or 'TM', got {mode!r}")


def convergence_profile(target, geom, l_list, rtol=1e-3):
    """Evaluate ``target(geom, l_m)`` along ascending ``l_list`` and classify.

    * ``converged``: the last relative change is below ``rtol``;
    * ``converging``: changes shrink (each at most half the previous one at
      the end of the list);
    * ``diverging``: otherwise (changes do not shrink).
    """
    l_list = tuple(int(l) for l in l_list)
    if len(l_list) < 2 or any(b <= a for a, b in zip(l_list, l_list[1:])):
        raise DomainError("l_list must be ascending with at least two entries")
    values = tuple(float(target(geom, l)) for l in l_list)
    diffs = tuple(abs(b - a) / max(abs(b), np.finfo(float).tiny) for a, b in zip(values, values[1:]))
    if diffs[-1] < rtol:
        label = "converged"
    elif len(diffs) >= 2 and diffs[-1] <= 0.5 * diffs[-2]:
        label = "converging"
    else:
        label = "diverging"
    return ConvergenceProfile(l_list, values, diffs, label)


def expansion(model, geom, l_m_f=DEFAULT_LM_F, l_m_g=DEFAULT_LM_G, tol=1e-9):
    """Bundle f_ball, g_TE, g_TM and a g_TM convergence trace."""
    f = linear_coeff_ball(model, geom, l_m_f, tol=tol)
    g_te = fixed_param_g("TE", geom, l_m_g)
    prof = convergence_profile(lambda g, l: fixed_param_g("TM", g, l, divergence_study=True),
                               geom, range(1, l_m_g + 1))
    g_tm = prof.values[-1]
    return BallExpansion(f, g_te, g_tm, {"g_tm": prof}, geom.contact)
