"""Certified eigenvalue enclosures for non-self-adjoint Schrödinger operators.

Bounds follow from the Birman-Schwinger principle: any eigenvalue of
``(-Delta)**m + q`` must make the sandwiched resolvent have norm at least
one, and explicit kernel norms turn that into a region in the complex plane.
"""

from ._backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
