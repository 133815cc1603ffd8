"""cartankit: exact constructions, verification, and classification of
Cartan subalgebras of the finitary classical Lie algebras.

The package works over Q(i) throughout. Infinite objects (line families,
eventually periodic functional data) carry finite certificates, and every
almost-everywhere statement is decided from explicit stabilization bounds,
never by sampling.
"""

__version__ = "0.1.0"

from .scalars import Scalar, parse_scalar, format_scalar, sc  # noqa: F401
