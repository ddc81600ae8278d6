"""Thermal Casimir free energy of two equal parallel plates.

Units are hbar = c = 1; energies are per unit area. The free energy is
available in two representations:

* the Lifshitz/Matsubara sum, :func:`free_energy`;
* the Abel-Plana split F = E0 + Delta_T F into the vacuum energy
  :func:`vacuum_energy` and the thermal-photon part :func:`delta_f`.

On top of these the module provides the low-temperature data: the
small-parameter expansion E0(mu) = E0(0) + mu (-ln(2 a mu) E~1 + E1) of the
vacuum energy for the Drude and DC models, the functions f of the linear-in-T
free energy, and the T**2 coefficients for fixed parameters.

Sign conventions (see the README): both linear-term functions are positive,

* Drude (TE):  Delta_T F = + T f_D / (16 pi a**2)   (entropy < 0)
* DC    (TM):  Delta_T F = - T f_DC / (16 pi a**2)  (entropy > 0)
"""
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ContinuationError, DomainError, LimitError, UnsupportedModelError
from .materials import DcDielectric, Drude, PerfectConductor, Plasma
from .numerics import (
    QuadratureResult,
    boltzmann_integral,
    integrate_finite,
    integrate_semi_infinite,
    matsubara_frequency,
    matsubara_sum,
)
from .specfun import ZETA3, polylog

MODES = ("TE", "TM")
_MODE_INDEX = {"TE": 0, "TM": 1}
_FOUR_PI2 = 4.0 * math.pi**2

# inner integrals are converged more tightly than the outer ones so that the
# outer level differences measure the outer discretization only
_INNER = 1e-3


@dataclass(frozen=True)
class PlanarGeometry:
    """Two equal plates at separation ``a`` (> 0)."""

    a: float

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"separation must be > 0, got {self.a}")


@dataclass(frozen=True)
class PlanarExpansion:
    """Low-temperature coefficient bundle for one material and geometry.

    ``E_tilde1`` and ``E1`` are the vacuum-energy coefficients (energy per
    area per unit of gamma or sigma), ``f_linear`` the dimensionless
    linear-term function at vanishing argument and ``t2_te``/``t2_tm`` the
    coefficients of T**2 in Delta_T F for fixed parameters. ``errors`` maps
    field names to quadrature error estimates.
    """

    E_tilde1: float
    E1: float
    f_linear: float
    t2_te: float
    t2_tm: float
    errors: dict


def _modes(modes):
    if isinstance(modes, str):
        modes = (modes,)
    modes = tuple(modes)
    for m in modes:
        if m not in _MODE_INDEX:
            raise DomainError(f"unknown mode {m!r}; expected 'TE' or 'TM'")
    return modes


def _check_model(model):
    if not isinstance(model, (Drude, DcDielectric, Plasma, PerfectConductor)):
        raise UnsupportedModelError(f"unsupported material model {model!r}")


# --- reflection coefficients -------------------------------------------------

def reflection(mode, model, xi, q):
    """Fresnel coefficient r_TE or r_TM at imaginary frequency ``xi`` >= 0.

    ``q`` = sqrt(xi**2 + k**2) > 0. The zero-frequency values are the
    analytic limits (e.g. r_TE -> 0 and r_TM -> 1 for Drude with gamma > 0).
    A perfect conductor gives exactly -1 (TE) and +1 (TM).
    """
    (mode,) = _modes(mode)
    _check_model(model)
    xi = np.asarray(xi, dtype=float)
    q = np.asarray(q, dtype=float)
    if np.any(xi < 0):
        raise DomainError("xi must be >= 0")
    if np.any(q <= 0):
        raise LimitError("q = 0 is the grazing limit where |r| -> 1 for every model; "
                         "use the expansion operations instead")
    if isinstance(model, PerfectConductor):
        out = np.full(np.broadcast(xi, q).shape, -1.0 if mode == "TE" else 1.0)
        return out if out.ndim else float(out)
    s = np.sqrt(np.real(model.chi(xi)) + q * q)
    if mode == "TE":
        out = (q - s) / (q + s)
    else:
        t = s * np.real(model.inv_eps(xi))
        out = (q - t) / (q + t)
    return out if np.ndim(out) else float(out)


def _log_term(model, a, q, xi, mode):
    """ln(1 - r**2 exp(-2 a q)) for complex q, xi (broadcast)."""
    if isinstance(model, PerfectConductor):
        q = np.asarray(q, dtype=complex)
        return np.log(-_kernels.cexpm1(-2.0 * a * q)) + 0.0 * np.asarray(xi)
    xi = np.asarray(xi, dtype=complex)
    return _kernels.planar_log(q, model.chi(xi), model.inv_eps(xi), a, _MODE_INDEX[mode])


def _mode_sum(model, a, q, xi, modes):
    total = 0.0
    for m in modes:
        total = total + _log_term(model, a, q, xi, m)
    return total


# --- phi(xi) and the Matsubara representation --------------------------------

def _phi_pc(a, xi):
    e = math.exp(-2.0 * a * xi)
    return -(xi / a) * polylog(2, e) - polylog(3, e) / (2.0 * a * a)


def phi(model, geom, xi, modes=MODES, tol=1e-11):
    """phi(xi) = int_0^inf dk k sum_modes ln(1 - r**2 exp(-2 a q)), real xi >= 0."""
    _check_model(model)
    modes = _modes(modes)
    a = geom.a
    xi = float(xi)
    if xi < 0:
        raise DomainError("xi must be >= 0")
    if isinstance(model, PerfectConductor):
        return len(modes) / 2.0 * _phi_pc(a, xi)

    def integrand(p):
        q = xi + p
        return (q * _mode_sum(model, a, q, xi, modes)).real

    return integrate_semi_infinite(integrand, tol=tol, atol=1e-300, scale=0.5 / a).value


def free_energy(model, geom, T, modes=MODES, tol=1e-10):
    """Lifshitz free energy per unit area as a Matsubara sum.

    (T/2) sum_l int d^2k/(2 pi)^2 sum_modes ln(1 - r**2 exp(-2 a q)).
    """
    if not T > 0:
        raise DomainError("T must be > 0")

    def term(l):
        return phi(model, geom, matsubara_frequency(l, T), modes, tol=tol * 1e-2) / (2.0 * math.pi)

    return matsubara_sum(term, T, tol=tol)


# --- vacuum energy -----------------------------------------------------------

def _vacuum_integrand(model, a, modes):
    def inner_of(q):
        q = np.asarray(q)[:, None]

        def inner(u):
            return _mode_sum(model, a, q + 0j, q * u, modes).real

        return inner

    return inner_of


def vacuum_energy(model, geom, modes=MODES, tol=1e-10, full=False):
    """Zero-temperature energy E0 = (1/4 pi^2) int_0^inf dxi phi(xi).

    Evaluated as int dq q^2 int_0^1 du of the log term at xi = q u (the
    k-integration traded for q). ``full=True`` returns the
    :class:`QuadratureResult`.
    """
    _check_model(model)
    modes = _modes(modes)
    a = geom.a
    if isinstance(model, PerfectConductor):
        value = -len(modes) / 2.0 * math.pi**2 / (720.0 * a**3)
        res = QuadratureResult(value, 0.0, 0)
        return res if full else value
    inner_of = _vacuum_integrand(model, a, modes)

    def outer(q):
        inner = integrate_finite(inner_of(q), 0.0, 1.0, tol=tol * _INNER, atol=1e-300).value
        return q * q * inner

    res = integrate_semi_infinite(outer, tol=tol, atol=1e-300, scale=0.5 / a)
    res = QuadratureResult(res.value / _FOUR_PI2, res.error_estimate / _FOUR_PI2, res.evaluations)
    return res if full else res.value


def vacuum_energy_difference(model_b, model_a, geom, modes=MODES, tol=1e-9, atol=0.0):
    """E0(model_b) - E0(model_a), integrating the difference of integrands.

    Avoids the cancellation of two nearly equal vacuum energies (used for
    finite-difference checks of the small-parameter expansion). ``atol`` is
    an absolute tolerance on the difference (energy per area).
    """
    modes = _modes(modes)
    a = geom.a
    fb = _vacuum_integrand(model_b, a, modes)
    fa = _vacuum_integrand(model_a, a, modes)

    def outer(q):
        ib, ia = fb(q), fa(q)
        inner = integrate_finite(lambda u: ib(u) - ia(u), 0.0, 1.0, tol=tol * _INNER, atol=1e-300).value
        return q * q * inner

    res = integrate_semi_infinite(outer, tol=tol, atol=max(1e-300, atol * _FOUR_PI2), scale=0.5 / a)
    return res.value / _FOUR_PI2


# --- thermal part via analytic continuation ----------------------------------

def _disc_pc(a, x):
    theta = np.mod(2.0 * a * np.asarray(x, dtype=float), 2.0 * math.pi)
    c2 = math.pi**2 / 6.0 - math.pi * theta / 2.0 + theta**2 / 4.0
    s3 = math.pi**2 * theta / 6.0 - math.pi * theta**2 / 4.0 + theta**3 / 12.0
    return (2.0 * np.asarray(x) / a) * c2 - s3 / a**2


def phi_continued(model, geom, w, modes=MODES, regions=("first", "second"), tol=1e-12):
    """phi on the imaginary axis, w = +-i x (array of purely imaginary w).

    The k-integral splits into the first region k < x, where q = +-i y is
    imaginary (y in [0, x]), and the second region k > x with real q >= 0.
    Principal branches are used for the square roots; lossless materials
    (plasma model) put the first-region integrand on its branch cut and are
    rejected.
    """
    re = _continued_part(model, geom, w, modes, regions, tol, np.real)
    im = _continued_part(model, geom, w, modes, regions, tol, np.imag)
    return re + 1j * im


def _continued_part(model, geom, w, modes, regions, tol, part):
    """Real or imaginary part (``part`` is np.real or np.imag) of phi(w)."""
    _check_model(model)
    modes = _modes(modes)
    if isinstance(model, Plasma) or (isinstance(model, Drude) and model.gamma == 0.0):
        raise ContinuationError(
            "the lossless plasma model has real poles on the continued path; "
            "Delta_T F is not available from the discontinuity representation")
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    if np.any(w.real != 0) or np.any(w.imag == 0):
        raise DomainError("w must be purely imaginary and nonzero")
    a = geom.a
    x = np.abs(w.imag)
    side = np.sign(w.imag)
    out = np.zeros(w.shape)
    wc = w[:, None]
    if "second" in regions:
        # split the real-q range at the (damped) singular points of the
        # integrand, so the rules cluster their nodes there
        cuts = _merge_cuts(_second_region_cuts(model, w, a), _guided_modes(model, a, w, modes))

        def piece(lo, width):
            def f(s_):
                q = lo + width * s_[None, :]
                return width * part(q * _mode_sum(model, a, q + 0j, wc, modes))
            return f

        for k in range(cuts.shape[1] - 1):
            lo, hi = cuts[:, k:k + 1], cuts[:, k + 1:k + 2]
            if np.any(hi > lo):
                # later pieces only need accuracy relative to the bulk so far
                out += integrate_finite(piece(lo, hi - lo), 0.0, 1.0, tol=tol,
                                        atol=np.maximum(1e-300, tol * np.abs(out))).value
        last = cuts[:, -1:]

        def above(s_):
            q = last + s_[None, :]
            return part(q * _mode_sum(model, a, q + 0j, wc, modes))

        out = out + integrate_semi_infinite(above, tol=tol, atol=np.maximum(1e-300, tol * np.abs(out)),
                                            scale=0.5 / a).value
    if "first" in regions:
        # along q = +-i y the factor e^{-2aq} is a phase, and the log term has
        # sharp (damped) cavity resonances; the range is cut at each of them
        cuts = _cavity_resonances(model, a, x, side, wc, modes)
        xr, sr = x[:, None], side[:, None]
        for k in range(cuts.shape[1] - 1):
            lo, hi = cuts[:, k:k + 1], cuts[:, k + 1:k + 2]
            width = hi - lo
            if not np.any(width > 0):
                continue

            def first(s_):
                u = lo + width * s_[None, :]
                q = 1j * sr * xr * u
                return width * part(xr**2 * u * _mode_sum(model, a, q, wc, modes))

            # absolute floor at the rounding level of the integrand, x^2 * O(1)
            floor = 64.0 * np.finfo(float).eps * x**2 * width[:, 0]
            out += integrate_finite(first, 0.0, 1.0, tol=tol, atol=floor).value
    return out


def _round_trip(model, a, q, w, mode):
    """r**2 e^{-2 a q} for complex q and frequency w (broadcast)."""
    s = np.sqrt(model.chi(w) + q * q)
    p = s if mode == "TE" else s * model.inv_eps(w)
    r = (q - p) / (q + p)
    return r * r * np.exp(-2.0 * a * q)


def _cavity_resonances(model, a, x, side, wc, modes, per_radian=4, refine=40):
    """Breakpoints 0 = u_0 <= ... <= u_n = 1 (rows padded with 1) at the
    resonances of the first-region integrand.

    A resonance is where the round-trip factor r**2 e^{-2aq} (q = +-i x u)
    has phase 0 while its modulus is close to 1, i.e. where 1 - r**2 e^{-2aq}
    nearly vanishes. Crossings are bracketed on a grid fine enough that the
    phase moves by < 1/per_radian per step and refined by bisection.
    """
    n_grid = int(np.ceil(per_radian * 2.0 * a * np.max(x))) + 16
    u = np.linspace(0.0, 1.0, n_grid + 1)[1:-1]
    xr, sr = x[:, None], side[:, None]
    found = [[] for _ in range(x.size)]
    for mode in modes:
        def rt(uu):
            return _round_trip(model, a, 1j * sr * xr * uu, wc, mode)

        v = rt(u[None, :])
        ang = np.angle(v)
        # sign change of the phase through 0 (not through the +-pi wrap)
        cross = (np.sign(ang[:, :-1]) != np.sign(ang[:, 1:])) & (np.abs(ang[:, :-1] - ang[:, 1:]) < np.pi)
        cross &= (np.abs(v[:, :-1]) > 0.5) & (np.abs(v[:, 1:]) > 0.5)
        rows, cols = np.nonzero(cross)
        if rows.size == 0:
            continue
        lo, hi = u[cols].copy(), u[cols + 1].copy()
        s_lo = np.sign(ang[rows, cols])
        for _ in range(refine):
            mid = 0.5 * (lo + hi)
            a_mid = np.angle(_round_trip(model, a, 1j * side[rows] * x[rows] * mid, wc[rows, 0], mode))
            same = np.sign(a_mid) == s_lo
            lo = np.where(same, mid, lo)
            hi = np.where(same, hi, mid)
        for r_, c_ in zip(rows, 0.5 * (lo + hi)):
            found[r_].append(c_)
    # the medium's own branch point q**2 = -chi (S = 0) on the path
    with np.errstate(invalid="ignore"):
        ub = np.sqrt(model.chi(wc[:, 0])).real / x
    for i in np.nonzero((ub > 0) & (ub < 1))[0]:
        found[i].append(ub[i])
    n_max = max(len(f) for f in found)
    cuts = np.ones((x.size, n_max + 2))
    cuts[:, 0] = 0.0
    for i, f in enumerate(found):
        cuts[i, 1:len(f) + 1] = np.sort(f)
    return cuts


def _mode_onsets(model, a, x_max, modes, per_radian=4, refine=50):
    """Frequencies x < x_max at which a cavity mode reaches normal incidence.

    There the round trip at q = i x, r**2 e^{-2 i a x}, has phase 0 (for a
    perfect conductor: x = n pi / a), and Phi(x) has a kink or steep step.
    """
    if isinstance(model, PerfectConductor):
        return np.arange(1, int(x_max * a / math.pi) + 1) * math.pi / a
    n_grid = int(np.ceil(per_radian * 2.0 * a * x_max)) + 16
    xs = np.linspace(0.0, x_max, n_grid + 1)[1:]
    onsets = []
    for mode in modes:
        def rt(xv):
            return _round_trip(model, a, 1j * xv, 1j * xv, mode)

        v = rt(xs)
        ang = np.angle(v)
        cross = (np.sign(ang[:-1]) != np.sign(ang[1:])) & (np.abs(ang[:-1] - ang[1:]) < np.pi)
        cross &= (np.abs(v[:-1]) > 0.5) & (np.abs(v[1:]) > 0.5)
        (cols,) = np.nonzero(cross)
        lo, hi = xs[cols], xs[cols + 1]
        s_lo = np.sign(ang[cols])
        for _ in range(refine):
            mid = 0.5 * (lo + hi)
            same = np.sign(np.angle(rt(mid))) == s_lo
            lo = np.where(same, mid, lo)
            hi = np.where(same, hi, mid)
        onsets.extend(0.5 * (lo + hi))
    return np.unique(np.round(np.sort(onsets), 14))


def _second_region_cuts(model, w, a):
    """Breakpoints 0 = q_0 <= q_1 <= q_2 on the real-q path (per row).

    On the continued axis eps(w) may be negative (below the plasma
    frequency), giving the damped surface-plasmon pole of r_TM near
    q**2 = chi/(eps**2 - 1); and Re chi < 0 puts the branch point S = 0 of
    the medium near q**2 = -chi. Rows without such points repeat 1/(2a).
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        eps = (1.0 / model.inv_eps(w)).real
        chi = model.chi(w)
        qp = np.sqrt(chi.real / (eps * eps - 1.0))
        qb = np.sqrt(-chi.real)
    default = 0.5 / a
    qp = np.where((eps < -1.0) & np.isfinite(qp) & (qp > 0), qp, default)
    qb = np.where(np.isfinite(qb) & (qb > 0), qb, default)
    cuts = np.zeros((w.size, 3))
    cuts[:, 1:] = np.sort(np.stack([qp, qb], axis=1), axis=1)
    return cuts


def _guided_modes(model, a, w, modes, per_decade=40, refine=60):
    """Real parts of the near-real zeros of 1 - r**2 e^{-2aq} on the real-q path.

    On the continued axis weakly damped media support guided (e.g.
    gap-plasmon) modes whose log singularity sits just off the path. They
    show as sign changes of Re(1 - r**2 e^{-2aq}) at which the modulus is
    small; crossings are bracketed on a logarithmic grid per row and refined
    by bisection. Returns one list of points per row.
    """
    x = np.abs(w.imag)
    lo = np.minimum(1e-3 * x, 1e-3 / a)
    hi = 20.0 / a
    n = int(np.ceil(per_decade * np.log10(hi / np.min(lo)))) + 2
    t = np.linspace(0.0, 1.0, n)[None, :]
    log_lo = np.log(lo)[:, None]
    span = np.log(hi) - log_lo
    q = np.exp(log_lo + span * t)
    wc = w[:, None]
    found = [[] for _ in range(w.size)]
    for mode in modes:
        def gap(qq, wv):
            return 1.0 - _round_trip(model, a, qq + 0j, wv, mode)

        with np.errstate(all="ignore"):
            d = gap(q, wc).real
        cross = np.isfinite(d[:, :-1]) & np.isfinite(d[:, 1:]) & (np.sign(d[:, :-1]) * np.sign(d[:, 1:]) < 0)
        rows, cols = np.nonzero(cross)
        if rows.size == 0:
            continue
        left, right = np.log(q[rows, cols]), np.log(q[rows, cols + 1])
        s_left = np.sign(d[rows, cols])
        wr = w[rows]
        with np.errstate(all="ignore"):
            for _ in range(refine):
                mid = 0.5 * (left + right)
                same = np.sign(gap(np.exp(mid), wr).real) == s_left
                left = np.where(same, mid, left)
                right = np.where(same, right, mid)
            qm = np.exp(0.5 * (left + right))
            keep = np.abs(gap(qm, wr)) < 0.5
        for r_, q_ in zip(rows[keep], qm[keep]):
            found[r_].append(q_)
    return found


def _merge_cuts(cuts, extra):
    """Add per-row points to a (rows, k) breakpoint array; rows padded at the end."""
    rows = [np.unique(np.concatenate([c, np.asarray(e, dtype=float)])) for c, e in zip(cuts, extra)]
    n = max(r.size for r in rows)
    out = np.empty((len(rows), n))
    for i, r in enumerate(rows):
        out[i, :r.size] = r
        out[i, r.size:] = r[-1]
    return out


def disc_profile(model, geom, x, modes=MODES, regions=("first", "second"), tol=1e-12):
    """Phi(x) = i (phi(ix) - phi(-ix)) = -2 Im phi(ix) for x > 0 (array)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= 0):
        raise DomainError("x must be > 0")
    modes = _modes(modes)
    if isinstance(model, PerfectConductor):
        return len(modes) / 2.0 * _disc_pc(geom.a, x)
    return -2.0 * _continued_part(model, geom, 1j * x, modes, regions, tol, np.imag)


def _material_scale(model):
    if isinstance(model, Drude):
        return model.gamma
    if isinstance(model, DcDielectric):
        return model.sigma
    return math.inf


def delta_f(model, geom, T, modes=MODES, regions=("first", "second"), tol=1e-10, full=False):
    """Thermal-photon part Delta_T F = (1/4 pi^2) int dx n_T(x) Phi(x).

    Both integration regions of the continued phi(ix) are kept by default;
    ``regions=("second",)`` reproduces the leading-order representation used
    for the linear-term analysis.
    """
    if not T > 0:
        raise DomainError("T must be > 0")
    mu = _material_scale(model)
    scale = math.sqrt(min(1.0, mu / T)) if mu > 0 else 1.0

    def Phi(xv):
        return disc_profile(model, geom, xv, modes, regions, tol=tol * _INNER)

    # Phi has kinks (perfect conductor) or steep, damped steps (real media)
    # where a new cavity mode opens
    breaks = _mode_onsets(model, geom.a, 60.0 * T, modes)
    res = boltzmann_integral(Phi, T, tol=tol, atol=1e-300, scale=scale, breakpoints=breaks)
    res = QuadratureResult(res.value / _FOUR_PI2, res.error_estimate / _FOUR_PI2, res.evaluations)
    return res if full else res.value


# --- Drude: vacuum-energy expansion ------------------------------------------

def _drude_h(q, z, wp, a):
    """h_q(z) and its first two z-derivatives (TE mode)."""
    e = np.exp(-2.0 * a * q)
    S = np.sqrt(wp**2 / (1.0 + z) + q * q)
    S1 = -wp**2 / (2.0 * S * (1.0 + z) ** 2)
    S2 = 0.5 * wp**2 * (S1 / (S * S * (1.0 + z) ** 2) + 2.0 / (S * (1.0 + z) ** 3))
    r = (q - S) / (q + S)
    rS = -2.0 * q / (q + S) ** 2
    rSS = 4.0 * q / (q + S) ** 3
    r1 = rS * S1
    r2 = rSS * S1 * S1 + rS * S2
    u = r * r * e
    u1 = 2.0 * r * r1 * e
    u2 = 2.0 * (r1 * r1 + r * r2) * e
    with np.errstate(divide="ignore"):
        om = -np.expm1(np.log(r * r) - 2.0 * a * q)  # 1 - u without cancellation
        h = np.log1p(-u)
    h1 = -u1 / om
    h2 = -u2 / om - (u1 / om) ** 2
    return h, h1, h2


def _drude_tm_dz(q, xi, wp, a):
    """d/dz of the TM log term at z = gamma/xi = 0 (Drude)."""
    e = np.exp(-2.0 * a * q)
    S = np.sqrt(wp**2 + q * q)
    S1 = -wp**2 / (2.0 * S)
    d = xi * xi + wp**2
    eta = xi * xi / d
    eta1 = xi * xi * wp**2 / (d * d)
    P = S * eta
    P1 = S1 * eta + S * eta1
    r = (q - P) / (q + P)
    r1 = -2.0 * q * P1 / (q + P) ** 2
    # 1 - r^2 e = (1 - e) + e (1 - r^2), both parts free of cancellation
    om = -np.expm1(-2.0 * a * q) + e * 4.0 * q * P / (q + P) ** 2
    return -2.0 * r * r1 * e / om


def drude_vacuum_coeffs(omega_p, a, tol=1e-10, parts=False):
    """(E~1, E1) of E0(gamma) = E0(0) + gamma (-ln(2 a gamma) E~1 + E1) + ...

    E~1 and the TE part of E1 come from the twice integrated-by-parts TE
    representation; the TM part is the direct first-order derivative.
    With ``parts=True`` a dict with the TE/TM split and error estimates is
    returned as well.
    """
    if not omega_p > 0:
        raise DomainError("omega_p must be > 0")
    geom = PlanarGeometry(a)
    wp = float(omega_p)

    res_t = integrate_semi_infinite(lambda q: q * _drude_h(q, 0.0, wp, a)[1], tol=tol,
                                    atol=1e-300, scale=0.5 / a)

    def te_outer(q):
        qc = q[:, None]
        # h_q(z) has structure near z ~ 1 and near z ~ (omega_p/q)^2: center
        # the rule between the two with a per-q rescaling z = c x
        c = np.clip(wp / qc, 1.0, 1e15)
        # rounding noise of h'' at 2aq << 1 is harmless once weighted by q
        floor = tol * _INNER * np.abs(_drude_h(qc, 0.0, wp, a)[1])[:, 0] / np.minimum(1.0, 2.0 * a * q)
        inner = integrate_semi_infinite(
            lambda x: c * np.log(c * x[None, :]) * _drude_h(qc, c * x[None, :], wp, a)[2],
            tol=tol * _INNER, atol=floor).value
        return q * ((1.0 + np.log(2.0 * a * q)) * _drude_h(q, 0.0, wp, a)[1] - inner)

    res_te = integrate_semi_infinite(te_outer, tol=tol, atol=1e-300, scale=0.5 / a)

    def tm_outer(q):
        qc = q[:, None]
        inner = integrate_finite(lambda u: _drude_tm_dz(qc, qc * u[None, :], wp, a) / u[None, :],
                                 0.0, 1.0, tol=tol * _INNER, atol=1e-300).value
        return q * inner

    res_tm = integrate_semi_infinite(tm_outer, tol=tol, atol=1e-300, scale=0.5 / a)
    et = res_t.value / _FOUR_PI2
    e1_te = res_te.value / _FOUR_PI2
    e1_tm = res_tm.value / _FOUR_PI2
    del geom
    if parts:
        info = {
            "E1_TE": e1_te,
            "E1_TM": e1_tm,
            "errors": {
                "E_tilde1": res_t.error_estimate / _FOUR_PI2,
                "E1": (res_te.error_estimate + res_tm.error_estimate) / _FOUR_PI2,
            },
        }
        return et, e1_te + e1_tm, info
    return et, e1_te + e1_tm


# --- DC: vacuum-energy expansion ---------------------------------------------

def _dc_g(z, xi, q, eps0, a):
    """g(z, xi, q) = d/dz ln(1 - r_TM**2 e^{-2aq}) with eps = eps0 + z, and d/dxi g."""
    e = np.exp(-2.0 * a * q)
    w = eps0 + z
    S = np.sqrt((w - 1.0) * xi * xi + q * q)
    Sz = xi * xi / (2.0 * S)
    Sx = (w - 1.0) * xi / S
    Szx = xi / S - xi * xi * Sx / (2.0 * S * S)
    den = w * q + S
    r = (w * q - S) / den
    rz = 2.0 * q * (S - w * Sz) / den**2
    rx = -2.0 * w * q * Sx / den**2
    rzx = 2.0 * q * ((Sx - w * Szx) * den - 2.0 * (S - w * Sz) * Sx) / den**3
    u = r * r * e
    om = 1.0 - u
    N = r * rz
    Nx = rx * rz + r * rzx
    g = -2.0 * N * e / om
    gx = -2.0 * e * (Nx / om + 2.0 * N * r * rx * e / om**2)
    return g, gx


def _dc_g_static(w, q, eps0, a):
    """g at xi = 0 as a function of w = eps0 + z, and dg/dw."""
    e = np.exp(-2.0 * a * q)
    one_e = -np.expm1(-2.0 * a * q)
    # (w+1)^2 - (w-1)^2 e without cancellation for large w and small q
    D = 4.0 * w + (w - 1.0) ** 2 * one_e
    Dw = 4.0 + 2.0 * (w - 1.0) * one_e
    g = -4.0 * (w - 1.0) * e / ((w + 1.0) * D)
    gw = -4.0 * e * (2.0 * D - (w - 1.0) * (w + 1.0) * Dw) / ((w + 1.0) ** 2 * D * D)
    return g, gw


def dc_log_coefficient(eps0, a):
    """Closed form E~1 = Li2(r0**2) / (4 pi^2 (1 - eps0**2) a**2)."""
    if not eps0 > 1:
        raise DomainError("eps0 must be > 1")
    r0 = (eps0 - 1.0) / (eps0 + 1.0)
    return polylog(2, r0 * r0) / (_FOUR_PI2 * (1.0 - eps0**2) * a * a)


def dc_log_coefficient_numeric(eps0, a, tol=1e-10):
    """E~1 realized through the small-sigma integral pipeline.

    (1/4 pi^2) int dq q int_0^inf dzeta d/dzeta g(1/zeta, 0, q): the
    coefficient of -ln(2 a sigma) produced by the inner region xi ~ sigma.
    """
    def outer(q):
        qc = q[:, None]

        def inner(zeta):
            w = eps0 + 1.0 / zeta[None, :]
            return -_dc_g_static(w, qc, eps0, a)[1] / zeta[None, :] ** 2

        return q * integrate_semi_infinite(inner, tol=tol * _INNER, atol=1e-300).value

    return integrate_semi_infinite(outer, tol=tol, atol=1e-300, scale=0.5 / a).value / _FOUR_PI2


def dc_vacuum_coeffs(eps0, a, tol=1e-10, parts=False):
    """(E~1, E1) of E0(sigma) = E0(0) + sigma (-ln(2 a sigma) E~1 + E1) + ...

    E~1 is the closed form. The TM part of E1 collects the regular remainder
    of the integrated-by-parts derivative d E0/d sigma (which equals
    -ln(2 a sigma) E~1 - E~1 + E1, hence the explicit + E~1); the TE part is
    the direct derivative at sigma = 0.
    """
    if not eps0 > 1:
        raise DomainError("eps0 must be > 1")
    et = dc_log_coefficient(eps0, a)

    def tm_outer(q):
        qc = q[:, None]
        g_qq = _dc_g(0.0, q, q, eps0, a)[0]

        def a1(zeta):
            w = eps0 + 1.0 / zeta[None, :]
            return np.log(zeta)[None, :] * (-_dc_g_static(w, qc, eps0, a)[1] / zeta[None, :] ** 2)

        def a2(u):
            xi = qc * u[None, :]
            return qc * np.log(2.0 * a * xi) * _dc_g(0.0, xi, qc, eps0, a)[1]

        i1 = integrate_semi_infinite(a1, tol=tol * _INNER, atol=1e-300).value
        i2 = integrate_finite(a2, 0.0, 1.0, tol=tol * _INNER, atol=1e-300).value
        return q * (np.log(2.0 * a * q) * g_qq - i1 - i2)

    res_tm = integrate_semi_infinite(tm_outer, tol=tol, atol=1e-300, scale=0.5 / a)

    def te_outer(q):
        qc = q[:, None]

        def inner(u):
            xi = qc * u[None, :]
            e = np.exp(-2.0 * a * qc)
            S = np.sqrt((eps0 - 1.0) * xi * xi + qc * qc)
            r = (qc - S) / (qc + S)
            rS = -2.0 * qc / (qc + S) ** 2
            return qc * (-2.0 * r * rS * (xi / (2.0 * S)) * e / (1.0 - r * r * e))

        return q * integrate_finite(inner, 0.0, 1.0, tol=tol * _INNER, atol=1e-300).value

    res_te = integrate_semi_infinite(te_outer, tol=tol, atol=1e-300, scale=0.5 / a)
    e1_tm = et + res_tm.value / _FOUR_PI2
    e1_te = res_te.value / _FOUR_PI2
    if parts:
        info = {
            "E1_TE": e1_te,
            "E1_TM": e1_tm,
            "errors": {"E_tilde1": 0.0,
                       "E1": (res_tm.error_estimate + res_te.error_estimate) / _FOUR_PI2},
        }
        return et, e1_te + e1_tm, info
    return et, e1_te + e1_tm


def vacuum_energy_shift(E_tilde1, E1, mu, a):
    """First-order shift mu (-ln(2 a mu) E~1 + E1) of the vacuum energy."""
    return mu * (-math.log(2.0 * a * mu) * E_tilde1 + E1)


def vacuum_energy_slope(E_tilde1, E1, mu, a):
    """d E0 / d mu = -ln(2 a mu) E~1 - E~1 + E1 at first order."""
    return -math.log(2.0 * a * mu) * E_tilde1 - E_tilde1 + E1


# --- linear-in-T functions ---------------------------------------------------

def _boltzmann_weight(mu1, zeta):
    """mu1 / (exp(mu1 zeta) - 1), which tends to 1/zeta for mu1 -> 0."""
    if mu1 == 0.0:
        return 1.0 / zeta
    with np.errstate(over="ignore"):
        return mu1 / np.expm1(mu1 * zeta)


def _drude_tilde_log(qt, wt, zeta_c):
    """ln(1 - r**2 e^{-qt}) with chi = wt**2 i zeta/(1 + i zeta), qt = 2 a q."""
    chi = wt * wt * (1j * zeta_c) / (1.0 + 1j * zeta_c)
    return _kernels.planar_log(qt + 0j, chi, 0.0, 0.5, 0)


def linear_coeff_drude(gamma1, geom, omega_p, tol=1e-9, full=False):
    """f_D(gamma1): coefficient function of the linear-in-T TE term.

    Delta_T F^TE = + T f_D / (16 pi a**2) for gamma = gamma1 T; gamma1 = 0
    gives the limit of gamma vanishing faster than T. In q~ = 2 a q::

        f_D = (1/pi) int dzeta w(zeta) int dq~ q~ i [h(1/(i zeta)) - c.c.]

    with w = gamma1/(exp(gamma1 zeta) - 1) (-> 1/zeta). f_D > 0.
    """
    if not gamma1 >= 0:
        raise DomainError("gamma1 must be >= 0")
    if not omega_p > 0:
        raise DomainError("omega_p must be > 0")
    wt = 2.0 * geom.a * omega_p

    def outer(zeta):
        zc = zeta[:, None]

        def inner(qt):
            return (qt[None, :] * _drude_tilde_log(qt[None, :], wt, zc)).imag

        im = integrate_semi_infinite(inner, tol=tol * _INNER, atol=1e-300).value
        return _boltzmann_weight(gamma1, zeta) * (-2.0 * im)

    res = integrate_semi_infinite(outer, tol=tol, atol=1e-300)
    res = QuadratureResult(res.value / math.pi, res.error_estimate / math.pi, res.evaluations)
    return res if full else res.value


def f_lin_drude(omega_p, geom, tol=1e-12):
    """(2a)^2 int dq q ln(1 - r_plasma_TE(0)**2 e^{-2aq}) (negative; equals -f_D(0))."""
    wt = 2.0 * geom.a * omega_p

    def integrand(qt):
        s = np.sqrt(wt * wt + qt * qt)
        return qt * _kernels.log_one_minus_r2e(qt, s, 1.0).real

    return integrate_semi_infinite(integrand, tol=tol, atol=1e-300).value


def _dc_ratio(zeta_c, eps0):
    iz = 1j * zeta_c
    return (1.0 + iz * (eps0 - 1.0)) / (1.0 + iz * (eps0 + 1.0))


def linear_coeff_dc(sigma1, eps0, tol=1e-9, full=False):
    """f_DC(sigma1): coefficient function of the linear-in-T TM term.

    Delta_T F^TM = - T f_DC / (16 pi a**2) for sigma = sigma1 T. With
    R(zeta) = (1 + i zeta (eps0 - 1)) / (1 + i zeta (eps0 + 1))::

        f_DC = -(1/pi) int dzeta w(zeta) int dq~ q~ i [ln(1 - R**2 e^{-q~}) - c.c.]

    f_DC(0) = zeta(3) - Li3(r0**2) > 0.
    """
    if not sigma1 >= 0:
        raise DomainError("sigma1 must be >= 0")
    if not eps0 > 1:
        raise DomainError("eps0 must be > 1")

    def outer(zeta):
        zc = zeta[:, None]
        # R = (1 - p)/(1 + p) with p = i zeta/(1 + i zeta eps0): the planar
        # log helper then keeps full accuracy near R -> 1, q -> 0
        iz = 1j * zc
        p = iz / (1.0 + iz * eps0)

        def inner(qt):
            qq = qt[None, :]
            return (qq * _kernels.log_one_minus_r2e(1.0, p, qq)).imag

        im = integrate_semi_infinite(inner, tol=tol * _INNER, atol=1e-300).value
        return _boltzmann_weight(sigma1, zeta) * (-2.0 * im)

    res = integrate_semi_infinite(outer, tol=tol, atol=1e-300, scale=1.0 / (eps0 + 1.0))
    res = QuadratureResult(-res.value / math.pi, res.error_estimate / math.pi, res.evaluations)
    return res if full else res.value


def f_lin_dc(eps0):
    """Closed form zeta(3) - Li3(r0**2)."""
    if not eps0 > 1:
        raise DomainError("eps0 must be > 1")
    r0 = (eps0 - 1.0) / (eps0 + 1.0)
    return ZETA3 - polylog(3, r0 * r0)


# --- fixed parameters: T^2 coefficients --------------------------------------

DRUDE_TE_T2 = (2.0 * math.log(2.0) - 1.0) / 48.0
TM_T2 = math.pi**2 / 18.0


def fixed_param_t2(model, geom):
    """(t2_te, t2_tm) with Delta_T F = (t2_te + t2_tm) T**2 + ... at fixed parameters.

    Drude: t2_te = (2 ln 2 - 1)/48 omega_p**2/gamma,
           t2_tm = -(pi^2/18) gamma / ((2a)**2 omega_p**2).
    DC:    t2_te = (2 ln 2 - 1)/48 sigma,
           t2_tm = -(pi^2/18) / ((2a)**2 sigma).

    The DC TE term is the image of the Drude one under
    sigma <-> omega_p**2/gamma: both come from frequencies xi ~ T where the
    two permittivities agree to leading order. It is *not* of order T**4;
    ``delta_f(..., modes="TE")`` approaches it numerically like the Drude
    TE term does (with corrections of relative order sqrt(T)).
    """
    a2 = (2.0 * geom.a) ** 2
    if isinstance(model, Drude):
        if not model.gamma > 0:
            raise DomainError("fixed-parameter coefficients need gamma > 0")
        wp2 = model.omega_p**2
        return DRUDE_TE_T2 * wp2 / model.gamma, -TM_T2 * model.gamma / (a2 * wp2)
    if isinstance(model, DcDielectric):
        if not model.sigma > 0:
            raise DomainError("fixed-parameter coefficients need sigma > 0")
        return DRUDE_TE_T2 * model.sigma, -TM_T2 / (a2 * model.sigma)
    raise UnsupportedModelError(f"T^2 coefficients exist for Drude and DC models, not {model!r}")


def fixed_param_t2_numeric(model, geom, temperatures=(1e-2, 5e-3), modes=MODES, order=1.0, tol=1e-10):
    """Richardson extrapolation of Delta_T F / T**2 to T = 0.

    Assumes a leading correction proportional to T**order. Returns the
    extrapolated value and the raw ratios.
    """
    t1, t2 = temperatures
    v1 = delta_f(model, geom, t1, modes, tol=tol) / t1**2
    v2 = delta_f(model, geom, t2, modes, tol=tol) / t2**2
    k = (t1 / t2) ** order
    return (k * v2 - v1) / (k - 1.0), (v1, v2)


def expansion(model, geom, tol=1e-9):
    """Collect the low-temperature coefficients in a :class:`PlanarExpansion`.

    The T**2 coefficients refer to the model's own (fixed) parameter and are
    NaN when that parameter vanishes.
    """
    a = geom.a
    if isinstance(model, Drude):
        et, e1, info = drude_vacuum_coeffs(model.omega_p, a, tol=tol, parts=True)
        f = linear_coeff_drude(0.0, geom, model.omega_p, tol=tol, full=True)
    elif isinstance(model, DcDielectric):
        et, e1, info = dc_vacuum_coeffs(model.eps0, a, tol=tol, parts=True)
        f = linear_coeff_dc(0.0, model.eps0, tol=tol, full=True)
    else:
        raise UnsupportedModelError(f"expansions exist for Drude and DC models, not {model!r}")
    try:
        t2 = fixed_param_t2(model, geom)
    except DomainError:
        t2 = (math.nan, math.nan)
    errors = dict(info["errors"], f_linear=f.error_estimate)
    return PlanarExpansion(et, e1, f.value, t2[0], t2[1], errors)
