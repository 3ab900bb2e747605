"""Finite Coxeter groups, parabolic double cosets, and the two-sided
Coxeter complex: construction, verification, and face enumeration."""

from .complexes import (
    Face,
    TwoSidedComplex,
    euler_characteristic,
    face_color,
    face_count,
    hasse_dot,
    restriction,
    sigma_ideal,
    verify_pseudomanifold,
    verify_shelling,
    verify_thin,
)
from .contingency import (
    ContingencyTable,
    KWayTable,
    SymmetricGroupFaces,
    kway_maximal_count,
    refinement_leq,
)
from .cosets import (
    double_coset,
    double_quotient_size,
    is_minimal_rep,
    minimal_rep,
)
from .coxeter import (
    CoxeterMatrix,
    CoxeterSystem,
    GroupTable,
    TypeLabel,
    build_group,
    classify,
    classify_spec,
    length_order,
    leq_two_sided,
    parse_type_spec,
    standard_matrix,
)
from .enumeration import (
    GammaTable,
    flag_f,
    flag_h,
    gamma_expansion,
    two_sided_eulerian,
)
from .errors import (
    BicoxError,
    CacheError,
    CapacityError,
    GammaBasisError,
    InternalCheckError,
    NotFiniteError,
)

__all__ = [
    "BicoxError",
    "CacheError",
    "CapacityError",
    "ContingencyTable",
    "CoxeterMatrix",
    "CoxeterSystem",
    "Face",
    "GammaBasisError",
    "GammaTable",
    "GroupTable",
    "InternalCheckError",
    "KWayTable",
    "NotFiniteError",
    "SymmetricGroupFaces",
    "TwoSidedComplex",
    "TypeLabel",
    "build_group",
    "classify",
    "classify_spec",
    "double_coset",
    "double_quotient_size",
    "euler_characteristic",
    "face_color",
    "face_count",
    "flag_f",
    "flag_h",
    "gamma_expansion",
    "hasse_dot",
    "is_minimal_rep",
    "kway_maximal_count",
    "length_order",
    "leq_two_sided",
    "minimal_rep",
    "parse_type_spec",
    "refinement_leq",
    "restriction",
    "sigma_ideal",
    "standard_matrix",
    "two_sided_eulerian",
    "verify_pseudomanifold",
    "verify_shelling",
    "verify_thin",
]
