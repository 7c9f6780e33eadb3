"""Workbench for polymatroids on small ground sets: cyclic-flat lattices,
lattice/measure convolution, and the constructions built on them."""

from .constructions import (
    BadParameters,
    ExpansionMap,
    GroundOverlap,
    InfiltrationSpec,
    NotInteger,
    RankMismatch,
    default_labels,
    graphic_matroid,
    helgason_expand,
    helgason_lattice,
    infiltrate,
    infiltrate_via_lattices,
    random_polymatroid,
    uniform_matroid,
)
from .convolution import (
    RecoveryMismatch,
    RoundTripReport,
    convolution_argmin,
    convolution_singleton_profile,
    convolve,
    convolve_lattices,
    verify_main_theorem,
)
from .lattice import (
    ConditionReport,
    DuplicateElement,
    ElementNotInLattice,
    LatticeError,
    NotALattice,
    RankedLattice,
    Verdict,
    Witness,
    check_conditions,
    normalize_pointed,
    validate_lattice,
)
from .model import (
    MAX_GROUND_SIZE,
    GroundSet,
    GroundSetMismatch,
    Measure,
    SetFunction,
    bits,
    induced_measure,
    submasks,
    to_fraction,
)
from .polymatroid import (
    AxiomWitness,
    NotAFlat,
    PolymatroidReport,
    check_polymatroid,
    closure,
    coloops,
    cyclic_flats,
    flats,
    is_cyclic_flat,
    is_flat,
    loops,
    max_cyclic_flat,
    reconstruct_check,
    reconstruction_failure,
    submodular_pairwise_witness,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomWitness",
    "BadParameters",
    "ConditionReport",
    "DuplicateElement",
    "ElementNotInLattice",
    "ExpansionMap",
    "GroundOverlap",
    "GroundSet",
    "GroundSetMismatch",
    "InfiltrationSpec",
    "LatticeError",
    "MAX_GROUND_SIZE",
    "Measure",
    "NotAFlat",
    "NotALattice",
    "NotInteger",
    "PolymatroidReport",
    "RankMismatch",
    "RankedLattice",
    "RecoveryMismatch",
    "RoundTripReport",
    "SetFunction",
    "Verdict",
    "Witness",
    "bits",
    "check_conditions",
    "check_polymatroid",
    "closure",
    "coloops",
    "convolution_argmin",
    "convolution_singleton_profile",
    "convolve",
    "convolve_lattices",
    "cyclic_flats",
    "default_labels",
    "flats",
    "graphic_matroid",
    "helgason_expand",
    "helgason_lattice",
    "induced_measure",
    "infiltrate",
    "infiltrate_via_lattices",
    "is_cyclic_flat",
    "is_flat",
    "loops",
    "max_cyclic_flat",
    "normalize_pointed",
    "random_polymatroid",
    "reconstruct_check",
    "reconstruction_failure",
    "submasks",
    "submodular_pairwise_witness",
    "to_fraction",
    "uniform_matroid",
    "validate_lattice",
    "verify_main_theorem",
]
