"""Certified constants for explicit bounds on the Riemann zeta function and
the zero-free region derived from them."""

from .errors import (
    BracketError,
    CapExceeded,
    CertificateFailure,
    ConfigError,
    DomainViolation,
    PrecisionExhausted,
    TailError,
    VdcertError,
)
from .numerics import DEFAULT_PRECISION, DirectedReal

__version__ = "0.1.0"

__all__ = [
    "BracketError",
    "CapExceeded",
    "CertificateFailure",
    "ConfigError",
    "DEFAULT_PRECISION",
    "DirectedReal",
    "DomainViolation",
    "PrecisionExhausted",
    "TailError",
    "VdcertError",
    "__version__",
]
