"""reedylab: exhaustive desk-scale certification of the (surjective, mono)
Reedy structure on finite join-semilattices, the semilattice cube category
and its idempotent completion, presheaf cellular machinery, and the crown
winding-number obstructions."""

from .semilattice import (
    FinPoset,
    FiniteSemilattice,
    SLatMorphism,
    enumerate_homs,
    enumerate_semilattices,
    validate_semilattice,
)

__all__ = [
    "FinPoset",
    "FiniteSemilattice",
    "SLatMorphism",
    "enumerate_homs",
    "enumerate_semilattices",
    "validate_semilattice",
]
