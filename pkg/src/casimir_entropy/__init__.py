"""Low-temperature thermal Casimir free energy and entropy.

Parallel plates and a ball in front of a plane, for the Drude metal and for
a dielectric with DC conductivity: vacuum-energy coefficients, the
linear-in-T and T**2 terms of the thermal part, residual entropy and the
sign audit of the entropy in all regimes of the material-parameter laws.
"""
__version__ = "0.1.0"

from .errors import (  # noqa: E402
    AccuracyError,
    CasimirError,
    ConfigError,
    ContinuationError,
    DomainError,
    LimitError,
    MissingCoefficientError,
    RangeError,
    RegimeError,
    RoundTripError,
    UnsupportedModelError,
)
from .materials import DcDielectric, Drude, PerfectConductor, Plasma, TemperatureLaw  # noqa: E402
from .planar import PlanarGeometry  # noqa: E402
from .sphereplane import SpherePlaneGeometry  # noqa: E402
from .thermo import ThermoConfig, entropy_breakdown, residual_entropy, sign_audit  # noqa: E402

__all__ = [
    "__version__",
    "AccuracyError", "CasimirError", "ConfigError", "ContinuationError", "DomainError",
    "LimitError", "MissingCoefficientError", "RangeError", "RegimeError", "RoundTripError",
    "UnsupportedModelError",
    "DcDielectric", "Drude", "PerfectConductor", "Plasma", "TemperatureLaw",
    "PlanarGeometry", "SpherePlaneGeometry",
    "ThermoConfig", "entropy_breakdown", "residual_entropy", "sign_audit",
]
