"""Finite lattice congruence toolkit.

Decides the spread relations between (prime) intervals of a finite lattice
(perspectivity, congruence-perspectivity, prime-perspectivity, swings on
planar diagrams), searches for explicit witness sequences, and cross-checks
everything against a brute-force congruence oracle over exhaustively
enumerated small lattices.
"""

from .catalog import Fixture, enumerate_lattices, fixture, is_isomorphic, sps_corpus
from .congruence import (
    Congruence,
    ConjOrder,
    all_congruences,
    collapses,
    con_prime,
    conj_order,
    is_congruence,
    principal_congruence,
    principal_congruence_naive,
)
from .core import FiniteLattice, Interval, PrimeInterval
from .perspectivity import (
    MODE_CPROJ,
    MODE_PPROJ,
    MODE_SWING_LEMMA,
    PperspClass,
    StepKind,
    ValidationResult,
    WitnessSequence,
    classify_ppersp,
    cpersp,
    cpersp_dn,
    cpersp_up,
    persp,
    persp_dn,
    persp_up,
    ppersp,
    ppersp_dn,
    ppersp_up,
    swing,
    validate_sequence,
)
from .planar import (
    Corner,
    PlanarDiagram,
    boundaries,
    build_diagram,
    corners,
    is_rectangular,
    is_semimodular,
    is_slim,
    is_sps,
    remove_corner,
)
from .witness import (
    CornerPreservationReport,
    EquivalenceReport,
    N5Extraction,
    check_corner_preservation,
    check_equivalences,
    cproj_to_pproj,
    cproj_witness,
    n5_witness,
    pproj_witness,
    swing_witness,
)

__version__ = "0.1.0"

__all__ = [
    "FiniteLattice",
    "Interval",
    "PrimeInterval",
    "Congruence",
    "ConjOrder",
    "principal_congruence",
    "principal_congruence_naive",
    "con_prime",
    "collapses",
    "conj_order",
    "all_congruences",
    "is_congruence",
    "StepKind",
    "WitnessSequence",
    "PperspClass",
    "ValidationResult",
    "persp_up",
    "persp_dn",
    "persp",
    "cpersp_up",
    "cpersp_dn",
    "cpersp",
    "ppersp_up",
    "ppersp_dn",
    "ppersp",
    "classify_ppersp",
    "swing",
    "validate_sequence",
    "MODE_CPROJ",
    "MODE_PPROJ",
    "MODE_SWING_LEMMA",
    "PlanarDiagram",
    "Corner",
    "build_diagram",
    "is_semimodular",
    "is_slim",
    "is_sps",
    "boundaries",
    "corners",
    "is_rectangular",
    "remove_corner",
    "Fixture",
    "fixture",
    "enumerate_lattices",
    "is_isomorphic",
    "sps_corpus",
    "cproj_witness",
    "pproj_witness",
    "cproj_to_pproj",
    "n5_witness",
    "swing_witness",
    "check_equivalences",
    "check_corner_preservation",
    "EquivalenceReport",
    "CornerPreservationReport",
    "N5Extraction",
]
