"""Special functions: polylogarithms, modified spherical Bessel functions,
their ascending-series coefficients, and sphere-plane geometry coefficients.

Bessel conventions (with I, K the modified cylinder functions)::

    i_l(z) = (z/2)**(-l-1/2) I_{l+1/2}(z)
    k_l(z) = (2/pi) (z/2)**(l+1/2) K_{l+1/2}(z)
    i~_l = (l + 1 + z d/dz) i_l,      k~_l = (-l + z d/dz) k_l
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import zeta as _riemann_zeta

from . import _kernels
from .errors import DomainError, RangeError

ZETA3 = 1.2020569031595942853997381615114499907649862923405
PI2_6 = 1.6449340668482264364724151666460251892189499012068

Z_MAX = 30.0
L_MAX = 40


# --- polylogarithm ----------------------------------------------------------

def _li_series(s, x):
    total = 0.0
    xk = 1.0
    for k in range(1, 200):
        xk *= x
        term = xk / k**s
        total += term
        if abs(term) < 1e-18 * max(abs(total), 1e-300):
            break
    return total


def _li_log_series(s, x):
    # Li_s(e^mu) = sum_{k != s-1} zeta(s-k) mu^k/k! + mu^(s-1)/(s-1)! (H_{s-1} - ln(-mu))
    mu = math.log(x)
    harmonic = sum(1.0 / j for j in range(1, s))
    total = mu ** (s - 1) / math.factorial(s - 1) * (harmonic - (math.log(-mu) if mu < 0 else 0.0))
    if mu == 0.0:
        return float(_riemann_zeta(s))
    mk = 1.0
    for k in range(0, 60):
        if k > 0:
            mk *= mu / k
        if k == s - 1:
            continue
        total += float(_riemann_zeta(s - k)) * mk
        if k > s + 2 and abs(mk) < 1e-18 * abs(total):
            break
    return total


def polylog(s, x):
    """Li_s(x) = sum_{k>=1} x**k / k**s for s in {2, 3} and real |x| <= 1."""
    if s not in (2, 3):
        raise DomainError(f"polylog order must be 2 or 3, got {s}")
    x = float(x)
    if not abs(x) <= 1.0:
        raise DomainError(f"polylog needs |x| <= 1, got {x}")
    if x == 1.0:
        return ZETA3 if s == 3 else PI2_6
    if abs(x) <= 0.5:
        return _li_series(s, x)
    if x > 0:
        return _li_log_series(s, x)
    # duplication: Li_s(-y) = 2**(1-s) Li_s(y**2) - Li_s(y)
    y = -x
    return 2.0 ** (1 - s) * polylog(s, y * y) - polylog(s, y)


# --- modified spherical Bessel functions ------------------------------------

@dataclass(frozen=True)
class BesselBundle:
    l: int
    z: complex
    i_l: complex
    k_l: complex
    i_tilde_l: complex
    k_tilde_l: complex


@dataclass(frozen=True)
class SeriesCoeffs:
    """Ascending-series constants: i_l(z) = i0 + i1 z**2 + ...,
    i~_l(z) = it0 + it1 z**2 + ..., k_l(0) = k0, k~_l(0) = kt0."""

    l: int
    i0: float
    i1: float
    it0: float
    it1: float
    k0: float
    kt0: float


def _check_bessel_args(l, z):
    if l < 0 or l > L_MAX:
        raise DomainError(f"l must be in [0, {L_MAX}], got {l}")
    if np.any(np.abs(z) > Z_MAX):
        raise RangeError(f"|z| exceeds the supported range {Z_MAX}")


def bessel_arrays(l, z):
    """Vectorized (i_l, i~_l, k_l, k~_l) for complex array ``z``."""
    z = np.asarray(z, dtype=complex)
    _check_bessel_args(l, z)
    i, it, k, kt, ok = _kernels.bessel_arrays(l, z)
    if not ok:
        raise RangeError("ascending series did not converge")
    return i, it, k, kt


def bessel_bundle(l, z):
    """All four functions of order ``l`` at one complex point ``z``."""
    i, it, k, kt = bessel_arrays(l, np.array([z]))
    return BesselBundle(l, complex(z), complex(i[0]), complex(k[0]), complex(it[0]), complex(kt[0]))


@lru_cache(maxsize=None)
def series_coeffs(l):
    if l < 0:
        raise DomainError(f"l must be >= 0, got {l}")
    i0 = 1.0 / math.gamma(l + 1.5)
    i1 = 1.0 / (4.0 * math.gamma(l + 2.5))
    k0 = math.gamma(l + 0.5) / math.pi
    return SeriesCoeffs(l, i0, i1, (l + 1) * i0, (l + 3) * i1, k0, -l * k0)


# --- sphere-plane geometry coefficients -------------------------------------

@dataclass(frozen=True)
class GeometryCoeffs:
    """Translation data at l'' = l + l' for azimuthal number m.

    ``H`` is the scalar translation coefficient, ``Lambda`` the
    polarization-conserving factor and ``LambdaTilde`` the mixing factor
    per unit of 2*xi*L (it vanishes as xi -> 0 and is not used at the
    orders implemented here).
    """

    l: int
    lp: int
    m: int
    H: float
    Lambda: float
    LambdaTilde: float


def _fact(n):
    return math.factorial(n)


@lru_cache(maxsize=None)
def geometry_coeff(l, lp, m=0):
    """H, Lambda, LambdaTilde for the stretched coupling l'' = l + l'.

    H = sqrt((2l+1)(2l'+1)) (2l''+1) (l l' l''; 0 0 0)(l l' l''; m -m 0),
    evaluated with the closed form of stretched 3j symbols.
    """
    if l < 1 or lp < 1:
        raise DomainError("vector waves start at l = 1")
    m = abs(int(m))
    if m > min(l, lp):
        raise DomainError(f"|m| = {m} exceeds min(l, l') = {min(l, lp)}")
    L = l + lp
    num = _fact(2 * l) * _fact(2 * lp) * _fact(L) ** 2
    den0 = _fact(2 * L + 1) * _fact(l) ** 2 * _fact(lp) ** 2
    denm = _fact(2 * L + 1) * _fact(l + m) * _fact(l - m) * _fact(lp + m) * _fact(lp - m)
    threej0 = math.sqrt(num / den0)
    threejm = math.sqrt(num / denm)
    H = math.sqrt((2 * l + 1) * (2 * lp + 1)) * (2 * L + 1) * threej0 * threejm
    nn = math.sqrt(l * (l + 1) * lp * (lp + 1))
    lam = (l * (l + 1) + lp * (lp + 1) - L * (L + 1)) / (2.0 * nn)
    return GeometryCoeffs(l, lp, m, H, lam, m / nn)
