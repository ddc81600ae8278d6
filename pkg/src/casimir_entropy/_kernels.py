"""Hot numeric kernels, each in a numba and a pure-numpy variant.

The public dispatchers at the bottom pick the compiled variant when
:mod:`._accel` reports numba as active. Both variants take flat arrays and
must agree to rounding; the test-suite checks this.
"""
import math

import numpy as np

from ._accel import njit, use_numba

SQRT_PI = math.sqrt(math.pi)


# --- planar reflection log --------------------------------------------------
#
# ln(1 - r**2 e) with e = exp(-2 a q) is formed in one of two ways: for
# |r**2 e| < 1/2 as log1p(-r**2 e); otherwise as the log of
# (1 - e) + e (1 - r)(1 + r), where 1 - e comes from expm1 and
# (1 - r)(1 + r) = 4 q p / (q + p)**2 is exact. The second form keeps full
# relative accuracy when r -> 1 and q -> 0 simultaneously.

@njit
def _clog1p_nb(u):
    # numpy's complex log1p loses the real part for |u| << 1
    x = u.real
    y = u.imag
    return complex(0.5 * math.log1p(2.0 * x + x * x + y * y), math.atan2(y, 1.0 + x))


@njit
def _cexpm1_nb(z):
    x = z.real
    y = z.imag
    s = math.sin(0.5 * y)
    return complex(math.expm1(x) * math.cos(y) - 2.0 * s * s, math.exp(x) * math.sin(y))


def clog1p(u):
    """Accurate complex log(1 + u), also for |u| << 1 (array version)."""
    u = np.asarray(u, dtype=np.complex128)
    x, y = u.real, u.imag
    return 0.5 * np.log1p(2.0 * x + x * x + y * y) + 1j * np.arctan2(y, 1.0 + x)


def cexpm1(z):
    """Accurate complex exp(z) - 1 (array version)."""
    z = np.asarray(z, dtype=np.complex128)
    x, y = z.real, z.imag
    return np.expm1(x) * np.cos(y) - 2.0 * np.sin(0.5 * y) ** 2 + 1j * np.exp(x) * np.sin(y)


def log_one_minus_r2e(q, p, two_a, q_minus_p=None):
    """ln(1 - r**2 exp(-two_a q)) for r = (q - p)/(q + p), complex arrays.

    ``q_minus_p`` may supply q - p computed without cancellation.
    """
    q, p, two_a = np.broadcast_arrays(np.asarray(q, dtype=np.complex128),
                                      np.asarray(p, dtype=np.complex128),
                                      np.asarray(two_a, dtype=float))
    e = np.exp(-two_a * q)
    qmp = q - p if q_minus_p is None else np.broadcast_to(q_minus_p, q.shape)
    r = qmp / (q + p)
    u = r * r * e
    small = np.abs(u) < 0.5
    out = np.empty(q.shape, dtype=np.complex128)
    out[small] = clog1p(-u[small])
    big = ~small
    if np.any(big):
        qb, pb, eb, tb = q[big], p[big], e[big], two_a[big]
        w = -cexpm1(-tb * qb) + eb * 4.0 * qb * pb / (qb + pb) ** 2
        out[big] = np.log(w)
    return out


@njit
def _planar_log_nb(q, chi, inv_eps, a, mode):
    out = np.empty(q.shape[0], dtype=np.complex128)
    for n in range(q.shape[0]):
        qq = q[n]
        s = np.sqrt(chi[n] + qq * qq)
        if mode == 0:
            p = s
            # q - S = -chi / (q + S) avoids cancellation for small chi
            r = -chi[n] / ((qq + s) * (qq + p))
        else:
            p = s * inv_eps[n]
            r = (qq - p) / (qq + p)
        e = np.exp(-2.0 * a * qq)
        u = r * r * e
        if abs(u) < 0.5:
            out[n] = _clog1p_nb(-u)
        else:
            w = -_cexpm1_nb(-2.0 * a * qq) + e * 4.0 * qq * p / ((qq + p) * (qq + p))
            out[n] = np.log(w)
    return out


def _planar_log_np(q, chi, inv_eps, a, mode):
    s = np.sqrt(chi + q * q)
    if mode == 0:
        return log_one_minus_r2e(q, s, 2.0 * a, q_minus_p=-chi / (q + s))
    return log_one_minus_r2e(q, s * inv_eps, 2.0 * a)


def planar_log(q, chi, inv_eps, a, mode):
    """ln(1 - r**2 exp(-2 a q)) for mode 0 (TE) or 1 (TM), complex arrays.

    ``chi`` is (eps - 1) xi**2 and ``inv_eps`` is 1/eps, broadcast against ``q``.
    """
    q, chi, inv_eps = np.broadcast_arrays(
        np.asarray(q, dtype=np.complex128),
        np.asarray(chi, dtype=np.complex128),
        np.asarray(inv_eps, dtype=np.complex128),
    )
    shape = q.shape
    args = (q.ravel(), chi.ravel(), inv_eps.ravel(), float(a), int(mode))
    if use_numba():
        out = _planar_log_nb(*args)
    else:
        out = _planar_log_np(*args)
    return out.reshape(shape)


# --- modified spherical Bessel functions ------------------------------------

@njit
def _binomial_terms(n):
    """(n + j)! / (j! (n - j)!) for j = 0..n."""
    c = np.empty(n + 1)
    for j in range(n + 1):
        c[j] = math.exp(math.lgamma(n + j + 1.0) - math.lgamma(j + 1.0) - math.lgamma(n - j + 1.0))
    return c


@njit
def _i_closed_nb(n, c, zz):
    # c = _binomial_terms(n); both sums are polynomials in 1/(2z)
    x = 1.0 / (2.0 * zz)
    sa = 0j
    sb = 0j
    for j in range(n, -1, -1):
        sa = sa * (-x) + c[j]
        sb = sb * x + c[j]
    sign = -1.0 if n % 2 == 0 else 1.0
    return (np.exp(zz) * sa + sign * np.exp(-zz) * sb) / (2.0 * SQRT_PI) / (zz / 2.0) ** (n + 1)


@njit
def _bessel_nb(l, z, max_terms):
    n = z.shape[0]
    i_out = np.empty(n, dtype=np.complex128)
    it_out = np.empty(n, dtype=np.complex128)
    k_out = np.empty(n, dtype=np.complex128)
    kt_out = np.empty(n, dtype=np.complex128)
    lead = 1.0 / math.gamma(l + 1.5)
    c_l = _binomial_terms(l)
    c_l1 = _binomial_terms(l + 1)
    # k_l = e^{-z}/sqrt(pi) * sum_p a_p z^p with a_p = c_{l-p} / 2^(2l-p)
    a = np.empty(l + 1)
    for p in range(l + 1):
        a[p] = c_l[l - p] / 2.0 ** (2 * l - p)
    ok = True
    for m in range(n):
        zz = z[m]
        if abs(zz) > max(4.0, 1.0 * l) and abs(zz.imag) > abs(zz.real):
            iv = _i_closed_nb(l, c_l, zz)
            i_out[m] = iv
            it_out[m] = (l + 1.0) * iv + zz * zz / 2.0 * _i_closed_nb(l + 1, c_l1, zz)
        else:
            w = zz * zz / 4.0
            term = lead + 0j
            si = term
            sit = (l + 1.0) * term
            k = 0
            converged = False
            while k < max_terms:
                term = term * w / ((k + 1.0) * (l + k + 1.5))
                k += 1
                si += term
                sit += (l + 1.0 + 2.0 * k) * term
                # |term| (l + 1 + 2k) <= 1e-17 |si|, in squared moduli (no hypot)
                t2 = term.real * term.real + term.imag * term.imag
                if t2 * (l + 1.0 + 2.0 * k) ** 2 <= 1e-34 * (si.real * si.real + si.imag * si.imag):
                    converged = True
                    break
            if not converged:
                ok = False
            i_out[m] = si
            it_out[m] = sit
        poly = 0j
        dpoly = 0j
        for p in range(l, -1, -1):
            poly = poly * zz + a[p]
            dpoly = dpoly * zz + p * a[p]
        e = np.exp(-zz) / SQRT_PI
        kv = e * poly
        k_out[m] = kv
        kt_out[m] = -l * kv - zz * kv + e * dpoly
    return i_out, it_out, k_out, kt_out, ok


def _i_closed_np(n, z):
    sa = np.zeros(z.shape, dtype=np.complex128)
    sb = np.zeros(z.shape, dtype=np.complex128)
    for j in range(n + 1):
        c = math.exp(math.lgamma(n + j + 1.0) - math.lgamma(j + 1.0) - math.lgamma(n - j + 1.0))
        t = c / (2.0 * z) ** j
        sa += t * (-1.0) ** j
        sb += t
    sign = -1.0 if n % 2 == 0 else 1.0
    return (np.exp(z) * sa + sign * np.exp(-z) * sb) / (2.0 * SQRT_PI) / (z / 2.0) ** (n + 1)


def _bessel_np(l, z, max_terms):
    far = (np.abs(z) > max(4.0, 1.0 * l)) & (np.abs(z.imag) > np.abs(z.real))
    zs = np.where(far, 0.0, z)
    w = zs * zs / 4.0
    term = np.full(z.shape, 1.0 / math.gamma(l + 1.5), dtype=np.complex128)
    si = term.copy()
    sit = (l + 1.0) * term
    ok = False
    for k in range(1, max_terms + 1):
        term = term * w / (k * (l + k + 0.5))
        si += term
        sit += (l + 1.0 + 2.0 * k) * term
        small = np.abs(term) * (l + 1.0 + 2.0 * k) <= 1e-17 * np.abs(si)
        if np.all(small):
            ok = True
            break
    if np.any(far):
        zf = z[far]
        iv = _i_closed_np(l, zf)
        si[far] = iv
        sit[far] = (l + 1.0) * iv + zf * zf / 2.0 * _i_closed_np(l + 1, zf)
    poly = np.zeros(z.shape, dtype=np.complex128)
    dpoly = np.zeros(z.shape, dtype=np.complex128)
    for j in range(l + 1):
        c = math.exp(math.lgamma(l + j + 1.0) - math.lgamma(j + 1.0) - math.lgamma(l - j + 1.0)) / 2.0 ** (l + j)
        p = l - j
        zp = z**p
        poly += c * zp
        dpoly += c * p * zp
    e = np.exp(-z) / SQRT_PI
    kv = e * poly
    kt = -l * kv - z * kv + e * dpoly
    return si, sit, kv, kt, ok


def bessel_arrays(l, z, max_terms=400):
    """(i_l, i~_l, k_l, k~_l) at complex points ``z`` plus a convergence flag."""
    z = np.asarray(z, dtype=np.complex128)
    shape = z.shape
    flat = np.ascontiguousarray(z.ravel())
    if use_numba():
        res = _bessel_nb(int(l), flat, int(max_terms))
    else:
        res = _bessel_np(int(l), flat, int(max_terms))
    return tuple(r.reshape(shape) for r in res[:4]) + (bool(res[4]),)
