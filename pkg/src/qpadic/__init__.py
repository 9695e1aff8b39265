"""Exact p-adic symplectic lattices, Gaussian channels, and entropy ledgers.

The exact layer (padic, lattice, ledger, channels, adelic) works entirely
in rational arithmetic. The oracle module rebuilds the same objects as
finite complex matrices for numerical cross-checks, and the cli module
exposes the lot as a command-line tool.
"""

from .adelic import AdelicGainReport, adelic_report, factor_integer, factor_rational, gain_exponent
from .channels import ChannelValidity, GaussianChannel, GaussianState, channel_validity
from .errors import InvariantViolation, NotAChannelError, NotAStateError
from .lattice import (
    STANDARD_J,
    Lattice,
    Mat2,
    Vec2,
    standard_lattice,
    sympl,
    symplectic_transport,
)
from .ledger import LogLedger
from .padic import (
    INFINITY,
    PhaseQ,
    additive_character,
    as_rational,
    fractional_part,
    is_prime,
    padic_norm,
    valuation,
)

__version__ = "0.1.0"

__all__ = [
    "AdelicGainReport",
    "ChannelValidity",
    "GaussianChannel",
    "GaussianState",
    "INFINITY",
    "InvariantViolation",
    "Lattice",
    "LogLedger",
    "Mat2",
    "NotAChannelError",
    "NotAStateError",
    "PhaseQ",
    "STANDARD_J",
    "Vec2",
    "additive_character",
    "adelic_report",
    "as_rational",
    "channel_validity",
    "factor_integer",
    "factor_rational",
    "fractional_part",
    "gain_exponent",
    "is_prime",
    "padic_norm",
    "standard_lattice",
    "sympl",
    "symplectic_transport",
    "valuation",
    "__version__",
]
