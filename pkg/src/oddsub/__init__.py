"""Totally odd subdivisions and immersions: explicit constructions plus an independent certifier."""

from .certify import (
    IMMERSION,
    SUBDIVISION,
    Certificate,
    VerificationReport,
    Violation,
    brute_force_find_subdivision,
    verify,
    verify_immersion,
    verify_subdivision,
)
from .config import CAPS, Caps
from .errors import AlgorithmInvariantViolated, ConstructionBug, InvalidInput, OddSubError, ResourceLimit
from .graphs import (
    APEX,
    Graph,
    KneserOracle,
    KSubset,
    Lifted,
    MycielskiOracle,
    SchrijverOracle,
    chromatic_number_exact,
    gaps,
    isles,
    kneser_adjacent,
    make_host,
    materialize,
)
from .mycielski_lift import LiftInput, lift_immersion, lift_subdivision
from .subdivision_kneser import Theorem8Params, build_theorem2, build_theorem8
from .zigzag import (
    ProperColouring,
    assign_even_labels,
    build_theorem3,
    choose_min_zigzag_colouring,
    is_potential_zigzag,
    kempe_chain,
    max_zigzags,
    zig,
)

__version__ = "0.1.0"

__all__ = [
    "IMMERSION",
    "SUBDIVISION",
    "Certificate",
    "VerificationReport",
    "Violation",
    "brute_force_find_subdivision",
    "verify",
    "verify_immersion",
    "verify_subdivision",
    "APEX",
    "Graph",
    "KneserOracle",
    "KSubset",
    "Lifted",
    "MycielskiOracle",
    "SchrijverOracle",
    "chromatic_number_exact",
    "gaps",
    "isles",
    "kneser_adjacent",
    "make_host",
    "materialize",
    "ProperColouring",
    "assign_even_labels",
    "build_theorem3",
    "choose_min_zigzag_colouring",
    "is_potential_zigzag",
    "kempe_chain",
    "max_zigzags",
    "zig",
    "CAPS",
    "Caps",
    "AlgorithmInvariantViolated",
    "ConstructionBug",
    "InvalidInput",
    "OddSubError",
    "ResourceLimit",
    "LiftInput",
    "lift_immersion",
    "lift_subdivision",
    "Theorem8Params",
    "build_theorem2",
    "build_theorem8",
]
