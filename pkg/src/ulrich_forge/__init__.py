"""Ulrich bundles on Hirzebruch surfaces: numerics, exact cohomology and certified constructions."""

from .cohomology import CohomologyTriple, cech_cohomology, line_bundle_cohomology
from .forge import ConstructionKind, NotAdmissibleError, UlrichCertificate, certify
from .numerics import (
    coker_exponents,
    enumerate_admissible_c1,
    is_admissible_pair,
    ker_exponents,
    monad_exponents,
)
from .picard import Divisor, Polarization, canonical, intersect

__version__ = "0.1.0"

__all__ = [
    "CohomologyTriple",
    "ConstructionKind",
    "Divisor",
    "NotAdmissibleError",
    "Polarization",
    "UlrichCertificate",
    "canonical",
    "cech_cohomology",
    "certify",
    "coker_exponents",
    "enumerate_admissible_c1",
    "intersect",
    "is_admissible_pair",
    "ker_exponents",
    "line_bundle_cohomology",
    "monad_exponents",
]
