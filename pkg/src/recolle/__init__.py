"""Exact-arithmetic workbench for recollements of derived module categories.

Everything is computed over Q or a prime field with exact arithmetic; there
are no tolerances anywhere.  Verdicts that depend on unbounded searches
(projective dimension, compactness, ladder extensions) are tri-valued and
always carry certificates.
"""

from .fields import QQ, GF, Field
from .algebra import (
    QuiverPresentation,
    BasedAlgebra,
    build_algebra,
    opposite,
    corner,
    quotient_by_idempotent_ideal,
    fingerprint,
    cartan_matrix,
    is_local,
)
from .verdicts import TriBool, Finite, Periodic, DepthExceeded

__all__ = [
    "QQ",
    "GF",
    "Field",
    "QuiverPresentation",
    "BasedAlgebra",
    "build_algebra",
    "opposite",
    "corner",
    "quotient_by_idempotent_ideal",
    "fingerprint",
    "cartan_matrix",
    "is_local",
    "TriBool",
    "Finite",
    "Periodic",
    "DepthExceeded",
]
