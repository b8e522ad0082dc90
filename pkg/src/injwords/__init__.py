"""Complexes of injective words: exact homology, collapses, certificates."""

__version__ = "0.1.0"

from .collapse import (
    CollapsePair,
    CollapseTrace,
    TopCollapseReport,
    collapse_step,
    free_faces,
    greedy_collapse,
    top_collapse_experiment,
)
from .complexes import (
    GeneratedComplex,
    boundary_matrix,
    coface_list,
    complex_from_cells,
    euler_characteristic,
    generate_complex,
    validate_complex,
)
from .homology import (
    HomologySummary,
    homology,
    rank_nullity,
    smith_normal_form,
    top_cycle_dimension,
)
from .matrices import RingSpec, SparseMatrix, coordinate_text, legend_text
from .redundancy import (
    Certificate,
    CertificateError,
    FixedPointReport,
    Profile,
    WitnessRecord,
    ascending_gaps,
    build_certificate,
    build_witness,
    compare_gap_pairs,
    descending_gaps,
    face_profile,
    fixed_point_insertions,
    redundancy_fixed_point,
    verify_witness,
)
from .words import (
    InjWord,
    delete,
    derangement_count,
    derangements,
    has_fixed_point,
    insert_missing,
    is_permutation,
    is_subword,
    missing_letter,
    nonderangements,
    permutations,
    subwords,
)

__all__ = [
    "CollapsePair",
    "CollapseTrace",
    "Certificate",
    "CertificateError",
    "FixedPointReport",
    "GeneratedComplex",
    "HomologySummary",
    "InjWord",
    "Profile",
    "RingSpec",
    "SparseMatrix",
    "TopCollapseReport",
    "WitnessRecord",
    "ascending_gaps",
    "boundary_matrix",
    "build_certificate",
    "build_witness",
    "coface_list",
    "collapse_step",
    "compare_gap_pairs",
    "complex_from_cells",
    "coordinate_text",
    "delete",
    "derangement_count",
    "derangements",
    "descending_gaps",
    "euler_characteristic",
    "face_profile",
    "fixed_point_insertions",
    "free_faces",
    "generate_complex",
    "greedy_collapse",
    "has_fixed_point",
    "homology",
    "insert_missing",
    "is_permutation",
    "is_subword",
    "legend_text",
    "missing_letter",
    "nonderangements",
    "permutations",
    "rank_nullity",
    "redundancy_fixed_point",
    "smith_normal_form",
    "subwords",
    "top_collapse_experiment",
    "top_cycle_dimension",
    "validate_complex",
    "verify_witness",
]
