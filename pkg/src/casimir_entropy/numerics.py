"""Quadrature, summation and analytic-continuation helpers.

All integrators use fixed, nested node sets (double-exponential rules with
step halving), so results are bitwise reproducible for a given tolerance and
budget. Integrands are called with a 1-D array of nodes and may return an
array whose *last* axis runs over those nodes; leading axes are integrated
independently ("batched"), which is how the nested double integrals of the
physics modules are vectorized.
"""
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import AccuracyError, ContinuationError

DEFAULT_RTOL = 1e-9
DEFAULT_SERIES_TOL = 1e-10

_HALF_PI = 0.5 * math.pi
_BATCH_FLOOR = 1e-6
_ROUNDING = 64.0 * np.finfo(float).eps
_BOLTZMANN_CUT = 80.0


@dataclass(frozen=True)
class QuadratureResult:
    """Value of an integral with an error estimate and the evaluation count.

    ``value`` and ``error_estimate`` are floats for scalar integrands and
    arrays for batched ones.
    """

    value: object
    error_estimate: object
    evaluations: int

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class DiscProfile:
    """Discontinuity Phi(x) = i (phi(ix) - phi(-ix)) of a real-analytic phi."""

    x: object
    value: object


# --- double-exponential rules ------------------------------------------------

def _exp_sinh(t, scale):
    """Nodes and weights of x = scale * exp(pi/2 sinh t) on (0, inf)."""
    u = _HALF_PI * np.sinh(t)
    x = scale * np.exp(u)
    w = x * _HALF_PI * np.cosh(t)
    return x, w


def _tanh_sinh(t, lo, hi):
    """Nodes and weights of the tanh-sinh map onto (lo, hi).

    The distance to the nearer endpoint is formed without cancellation.
    """
    u = _HALF_PI * np.sinh(t)
    half = 0.5 * (hi - lo)
    # 1 - tanh|u| = 2 / (exp(2|u|) + 1)
    e = np.exp(-2.0 * np.abs(u))
    gap = half * 2.0 * e / (1.0 + e)
    x = np.where(u < 0, lo + gap, hi - gap)
    sech2 = 4.0 * e / (1.0 + e) ** 2
    w = half * _HALF_PI * np.cosh(t) * sech2
    return x, w


def _as_batch(values, n):
    values = np.asarray(values)
    if values.shape[-1:] != (n,):
        values = np.broadcast_to(values, values.shape[:-1] + (n,)) if values.ndim else np.full(n, values)
    return values


def _de_integrate(f, mapping, tol, atol, t_max, max_level, what):
    """Shared driver: trapezoid in t on [-t_max, t_max] with step halving."""
    h = 0.5
    n_max = int(math.floor(t_max / h + 1e-9))
    t = np.arange(-n_max, n_max + 1) * h
    x, w = mapping(t)
    vals = _as_batch(f(x), t.size)
    evaluations = t.size
    total = np.sum(vals * w, axis=-1)
    estimate = h * total
    err = np.full(np.shape(estimate), np.inf)
    for level in range(1, max_level + 1):
        h *= 0.5
        n_max = 2 * n_max + 1
        j = np.arange(-n_max, n_max + 1, 2)
        t = j * h
        x, w = mapping(t)
        vals = _as_batch(f(x), t.size)
        evaluations += t.size
        total = total + np.sum(vals * w, axis=-1)
        new = h * total
        err = np.abs(new - estimate)
        estimate = new
        if not np.all(np.isfinite(estimate)):
            raise AccuracyError(f"{what}: non-finite integrand values", best=estimate, error=err)
        # rows of a batch far below the largest one only need absolute
        # accuracy relative to it (they are negligible once integrated on)
        size = np.abs(estimate)
        floor = 0.0
        if size.ndim:
            biggest = np.max(size)
            size = np.maximum(size, _BATCH_FLOOR * biggest)
            floor = _ROUNDING * biggest
        if level >= 2 and np.all(err <= tol * size + atol + floor):
            return QuadratureResult(_unwrap(estimate), _unwrap(err), evaluations)
    raise AccuracyError(
        f"{what}: tolerance {tol:g} not reached after {evaluations} evaluations",
        best=_unwrap(estimate),
        error=_unwrap(err),
    )


def _unwrap(a):
    a = np.asarray(a)
    return a.item() if a.ndim == 0 else a


def integrate_semi_infinite(f: Callable, tol=DEFAULT_RTOL, atol=0.0, scale=1.0, t_max=4.0, max_level=9):
    """Integrate ``f`` over (0, inf).

    The exp-sinh substitution x = scale * exp(pi/2 sinh t) clusters nodes
    doubly exponentially towards both 0 and infinity, which absorbs
    logarithmic singularities at the origin and exponential or power decay at
    infinity. ``scale`` should sit near the characteristic scale of the
    integrand; the default window t in [-4, 4] covers x / scale in roughly
    [1e-19, 7e18].

    Parameters
    ----------
    f : callable
        Vectorized integrand; returns values along the last axis.
    tol, atol : float
        Relative and absolute tolerances on successive-level differences.
    scale : float
        Characteristic length of the integration variable.

    Returns
    -------
    QuadratureResult

    Raises
    ------
    AccuracyError
        If the tolerance is not met within ``max_level`` halvings; the best
        estimate is attached.
    """
    if not scale > 0:
        raise ValueError("scale must be positive")
    return _de_integrate(f, lambda t: _exp_sinh(t, scale), tol, atol, t_max, max_level,
                         "integrate_semi_infinite")


def integrate_finite(f: Callable, lo, hi, tol=DEFAULT_RTOL, atol=0.0, t_max=3.2, max_level=9):
    """Integrate ``f`` over (lo, hi) with the tanh-sinh rule.

    Integrable endpoint singularities (logarithmic or algebraic) are handled
    by the doubly exponential clustering; endpoints are never evaluated.
    """
    if not hi > lo:
        raise ValueError("need hi > lo")
    return _de_integrate(f, lambda t: _tanh_sinh(t, lo, hi), tol, atol, t_max, max_level,
                         "integrate_finite")


# --- analytic continuation ---------------------------------------------------

def disc(phi: Callable, x, rtol=1e-12):
    """Discontinuity i (phi(ix) - phi(-ix)) across the imaginary axis.

    Both sides are evaluated independently; by Schwarz reflection the result
    must equal -2 Im phi(ix) and be real. A violation (reality lost, or the
    two representations disagree beyond ``rtol``) means the continuation
    crossed a branch cut and raises :class:`ContinuationError`.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("disc needs x > 0")
    up = np.asarray(phi(1j * x), dtype=complex)
    down = np.asarray(phi(-1j * x), dtype=complex)
    two_sided = 1j * (up - down)
    one_sided = -2.0 * up.imag
    size = np.maximum(np.abs(up), np.finfo(float).tiny)
    if np.any(np.abs(two_sided.imag) > rtol * size) or np.any(
        np.abs(two_sided.real - one_sided) > rtol * size
    ):
        raise ContinuationError("phi(-ix) is not the conjugate of phi(ix): branch cut crossed")
    value = two_sided.real
    return DiscProfile(_unwrap(x), _unwrap(value))


def boltzmann_integral(Phi: Callable, T, tol=DEFAULT_RTOL, atol=0.0, scale=1.0, breakpoints=()):
    """Thermal integral of a discontinuity profile.

    Returns the integral over x in (0, inf) of Phi(x) / (exp(x/T) - 1),
    evaluated in the rescaled variable x = T zeta. ``scale`` is the
    characteristic value of zeta (move it below 1 when Phi has structure at
    x much smaller than T). ``breakpoints`` lists points x where Phi has
    kinks; the range is then split there and each piece integrated with its
    own rule.
    """
    if not T > 0:
        raise ValueError("T must be positive")

    def integrand(zeta):
        # beyond _BOLTZMANN_CUT the weight is negligible against any
        # polynomially growing profile; Phi is not evaluated there
        keep = zeta < _BOLTZMANN_CUT
        weight = 1.0 / np.expm1(zeta[keep])
        vals = np.asarray(Phi(T * zeta[keep])) * weight
        out = np.zeros(vals.shape[:-1] + zeta.shape, dtype=vals.dtype)
        out[..., keep] = vals
        return out

    cuts = sorted(b / T for b in breakpoints if b > 0)
    if not cuts:
        res = integrate_semi_infinite(integrand, tol=tol, atol=atol / T, scale=scale, t_max=3.5)
        value, error, evaluations = res.value, res.error_estimate, res.evaluations
    else:
        # each later piece is measured against the bulk already collected
        pieces = []
        bulk = 0.0
        for lo, hi in zip([0.0] + cuts[:-1], cuts):
            pieces.append(integrate_finite(integrand, lo, hi, tol=tol,
                                           atol=np.maximum(atol / T, tol * bulk)))
            bulk = np.abs(sum(np.asarray(p.value) for p in pieces))
        last = cuts[-1]
        pieces.append(integrate_semi_infinite(lambda z: integrand(last + z), tol=tol,
                                              atol=np.maximum(atol / T, tol * bulk), t_max=3.5))
        value = sum(np.asarray(p.value) for p in pieces)
        error = sum(np.asarray(p.error_estimate) for p in pieces)
        evaluations = sum(p.evaluations for p in pieces)
    return QuadratureResult(_unwrap(T * np.asarray(value)),
                            _unwrap(T * np.asarray(error)), evaluations)


def matsubara_frequency(l, T):
    """xi_l = 2 pi l T."""
    return 2.0 * math.pi * l * T


def matsubara_sum(term: Callable, T, tol=DEFAULT_SERIES_TOL, max_terms=200000, atol=0.0):
    """T * (term(0)/2 + sum_{l>=1} term(l)).

    This realizes (T/2) sum over all integers for a term even in l. The sum
    is truncated once a geometric tail bound built from the last two terms
    drops below ``tol * |sum| + atol``.

    Raises
    ------
    AccuracyError
        If ``max_terms`` terms do not suffice (very low temperature; use the
        Abel-Plana representation there).
    """
    if not T > 0:
        raise ValueError("T must be positive")
    total = 0.5 * float(term(0))
    prev = None
    for l in range(1, max_terms + 1):
        t = float(term(l))
        total += t
        if prev is not None and prev != 0.0:
            ratio = abs(t / prev)
            tail = abs(t) * ratio / (1.0 - ratio) if ratio < 1.0 else math.inf
        else:
            tail = 0.0 if t == 0.0 else math.inf
        if tail <= tol * abs(total) + atol and abs(t) <= tol * abs(total) + atol:
            return T * total
        prev = t
    raise AccuracyError(f"Matsubara sum not converged after {max_terms} terms", best=T * total)
