"""Permittivity models on the imaginary frequency axis.

Units are hbar = c = 1, so frequencies, ``omega_p``, ``gamma`` and the
conductivity ``sigma`` are inverse lengths. ``sigma`` already contains the
factor 4*pi of Gaussian units: eps = eps0 + sigma/xi.

Besides the permittivity itself every model exposes two functions that are
finite (and analytic) at xi = 0 and are what the reflection coefficients
actually need:

* ``chi(xi) = (eps(i xi) - 1) xi**2``
* ``inv_eps(xi) = 1 / eps(i xi)``

Both accept complex ``xi`` so that the same code evaluates the analytic
continuation xi -> +-i x.
"""
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, UnsupportedModelError


@dataclass(frozen=True)
class Drude:
    """Drude metal, eps = 1 + omega_p**2 / (xi (gamma + xi))."""

    omega_p: float
    gamma: float = 0.0

    def __post_init__(self):
        if not self.omega_p > 0:
            raise DomainError(f"omega_p must be > 0, got {self.omega_p}")
        if not self.gamma >= 0:
            raise DomainError(f"gamma must be >= 0, got {self.gamma}")

    def chi(self, xi):
        xi = np.asarray(xi)
        if self.gamma == 0.0:
            return np.full_like(xi, self.omega_p**2, dtype=np.result_type(xi, float))
        return self.omega_p**2 * xi / (self.gamma + xi)

    def inv_eps(self, xi):
        xi = np.asarray(xi)
        d = xi * (self.gamma + xi)
        return d / (d + self.omega_p**2)

    def with_relaxation(self, gamma):
        return Drude(self.omega_p, gamma)


@dataclass(frozen=True)
class DcDielectric:
    """Dielectric with DC conductivity, eps = eps0 + sigma / xi."""

    eps0: float
    sigma: float = 0.0

    def __post_init__(self):
        if not self.eps0 > 1:
            raise DomainError(f"eps0 must be > 1, got {self.eps0}")
        if not self.sigma >= 0:
            raise DomainError(f"sigma must be >= 0, got {self.sigma}")

    def chi(self, xi):
        xi = np.asarray(xi)
        return (self.eps0 - 1.0) * xi**2 + self.sigma * xi

    def inv_eps(self, xi):
        xi = np.asarray(xi)
        if self.sigma == 0.0:
            return np.full_like(xi, 1.0 / self.eps0, dtype=np.result_type(xi, float))
        return xi / (self.eps0 * xi + self.sigma)

    def with_relaxation(self, sigma):
        return DcDielectric(self.eps0, sigma)

    @property
    def r0(self):
        """Static TM reflection coefficient (eps0 - 1)/(eps0 + 1)."""
        return (self.eps0 - 1.0) / (self.eps0 + 1.0)


@dataclass(frozen=True)
class Plasma:
    """Plasma model, eps = 1 + omega_p**2 / xi**2."""

    omega_p: float

    def __post_init__(self):
        if not self.omega_p > 0:
            raise DomainError(f"omega_p must be > 0, got {self.omega_p}")

    def chi(self, xi):
        xi = np.asarray(xi)
        return np.full_like(xi, self.omega_p**2, dtype=np.result_type(xi, float))

    def inv_eps(self, xi):
        xi = np.asarray(xi)
        return xi**2 / (xi**2 + self.omega_p**2)


@dataclass(frozen=True)
class PerfectConductor:
    """Ideal reflector: r_TE = -1 and r_TM = +1 exactly."""


MaterialModel = Union[Drude, DcDielectric, Plasma, PerfectConductor]


@dataclass(frozen=True)
class TemperatureLaw:
    """Power law mu(T) = mu1 * T**alpha for gamma or sigma."""

    mu1: float
    alpha: float

    def __post_init__(self):
        if not self.mu1 > 0:
            raise DomainError(f"mu1 must be > 0, got {self.mu1}")
        if not self.alpha > 0:
            raise DomainError(f"alpha must be > 0, got {self.alpha}")

    def __call__(self, T):
        return self.mu1 * np.asarray(T, dtype=float) ** self.alpha

    def derivative(self, T):
        return self.alpha * self.mu1 * np.asarray(T, dtype=float) ** (self.alpha - 1.0)

    @property
    def regime(self):
        """One of ``"alpha<1"``, ``"alpha=1"``, ``"alpha>1"``."""
        if self.alpha < 1.0:
            return "alpha<1"
        if self.alpha == 1.0:
            return "alpha=1"
        return "alpha>1"


def permittivity(model, xi):
    """eps(i xi) for real xi > 0.

    Returns ``inf`` for :class:`PerfectConductor`.
    """
    xi_arr = np.asarray(xi, dtype=float)
    if np.any(xi_arr <= 0):
        raise DomainError("permittivity needs xi > 0; use the limiting forms at xi = 0")
    if isinstance(model, PerfectConductor):
        out = np.full_like(xi_arr, np.inf)
    elif isinstance(model, Drude):
        out = 1.0 + model.omega_p**2 / (xi_arr * (model.gamma + xi_arr))
    elif isinstance(model, DcDielectric):
        out = model.eps0 + model.sigma / xi_arr
    elif isinstance(model, Plasma):
        out = 1.0 + model.omega_p**2 / xi_arr**2
    else:
        raise UnsupportedModelError(f"unknown model {model!r}")
    return out if out.ndim else float(out)


def low_frequency_forms(model, zeta, fixed=False):
    """Leading small-parameter forms of 1/eps and sqrt(eps) * frequency.

    With ``fixed=False`` the frequency is rescaled by the model parameter,
    xi = gamma*zeta (Drude) or xi = sigma*zeta (DC), and the limit of a
    vanishing parameter is taken at fixed zeta::

        Drude: 1/eps -> gamma**2 zeta (1 + zeta) / omega_p**2
               sqrt(eps) gamma zeta -> omega_p sqrt(zeta / (1 + zeta))
        DC:    1/eps = zeta / (1 + eps0 zeta)
               sqrt(eps) sigma zeta = sigma sqrt(zeta (1 + eps0 zeta))

    (For DC these are exact: eps = eps0 + 1/zeta at xi = sigma zeta.)

    The DC pair is returned per unit radius (multiply the second entry by R).

    With ``fixed=True`` the parameters are held fixed, ``zeta`` is the bare
    frequency xi -> 0, and the pair is (1/eps, sqrt(eps) xi) per unit radius::

        Drude: (gamma/omega_p**2) xi,  (omega_p/sqrt(gamma)) sqrt(xi)
        DC:    xi/sigma,               sqrt(sigma) sqrt(xi)

    ``zeta`` may be complex; principal square roots are used.
    """
    z = np.asarray(zeta)
    if np.any(np.real(z) <= 0) and not np.iscomplexobj(z):
        raise DomainError("zeta must be > 0")
    if isinstance(model, Drude):
        wp, g = model.omega_p, model.gamma
        if fixed:
            if g <= 0:
                raise DomainError("fixed-parameter forms need gamma > 0")
            return g / wp**2 * z, wp / np.sqrt(g) * np.sqrt(z)
        return g**2 * z * (1 + z) / wp**2, wp * np.sqrt(z / (1 + z))
    if isinstance(model, DcDielectric):
        e0, s = model.eps0, model.sigma
        if fixed:
            if s <= 0:
                raise DomainError("fixed-parameter forms need sigma > 0")
            return z / s, np.sqrt(s) * np.sqrt(z)
        return z / (1 + e0 * z), s * np.sqrt(z * (1 + e0 * z))
    raise UnsupportedModelError(
        f"low-frequency forms exist for Drude and DC models only, not {type(model).__name__}"
    )


def substitution_partner(model):
    """The model related by sigma <-> omega_p**2/gamma at small frequency.

    A fixed-parameter Drude model maps to a DC model with the same
    leading small-xi permittivity and vice versa. ``eps0`` of the image is
    irrelevant at leading order and set to 2; ``omega_p`` of the image is 1.
    """
    if isinstance(model, Drude):
        if model.gamma <= 0:
            raise DomainError("the map needs gamma > 0")
        return DcDielectric(2.0, model.omega_p**2 / model.gamma)
    if isinstance(model, DcDielectric):
        if model.sigma <= 0:
            raise DomainError("the map needs sigma > 0")
        return Drude(1.0, 1.0 / model.sigma)
    raise UnsupportedModelError(type(model).__name__)
