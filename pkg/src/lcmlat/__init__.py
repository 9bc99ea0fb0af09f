"""Finite atomic lattices as abstract monomial ideals."""

from ._accel import backend
from .complexes import F2, QQ, FieldSpec, SimplicialComplex, reduced_homology
from .coordinatization import (
    Labeling,
    deficit_labeling,
    eccv_labeling,
    minimal_squarefree_labeling,
    realize,
    roundtrip_check,
    validate_labeling,
)
from .deformation import Deformation, construct_deformation, is_valid_deformation, universal_family
from .errors import LcmlatError
from .ideals import MonomialIdeal, is_generic, is_strongly_generic, lcm_lattice, parse_ideal
from .lattice import FiniteAtomicLattice
from .ln import (
    ln_count,
    ln_enumerate,
    ln_join,
    ln_leq,
    ln_lower_covers,
    ln_meet,
    ln_meet_irreducibles,
    ln_rank,
    ln_upper_covers,
)
from .resolutions import (
    BettiTable,
    augmented_face_lattice,
    betti_table,
    is_scarf_resolved,
    scarf_complex,
    strongly_generic_coordinatization,
    supports_resolution,
    verify_scarf_filter,
)

__version__ = "0.1.0"
