"""Exact gradings of matrix Lie algebras over cyclotomic fields."""

__version__ = "0.1.0"

from gradekit.kernels import BACKEND
from gradekit.errors import (
    AlgebraError,
    AutomorphismError,
    ConductorMismatch,
    ConductorTooSmall,
    DimensionMismatch,
    GradeKitError,
    GradingError,
    Inconclusive,
    RealFormError,
    SchemaError,
)
from gradekit.exactmath import Cyclotomic, ScalarMatrix, Subspace, field, smith_normal_form
from gradekit.liealg import (
    MatrixLieAlgebra,
    ideal_decomposition,
    killing_matrix,
    make_orthogonal,
    make_sl,
    make_symplectic,
)
from gradekit.autos import (
    AlgebraMap,
    commute,
    eigenspaces,
    inner_auto,
    is_automorphism,
    outer_auto,
)
from gradekit.gradings import (
    Grading,
    NotGroupIndexable,
    coarsen,
    diag_group,
    displayed,
    fingerprint,
    grade_by,
    is_finest,
    refines,
    regrade_from_diag,
    universal_group,
    verify_grading,
)
from gradekit.realforms import (
    fixed_point_form,
    fundamental_method,
    make_antiauto,
    real_basis_method,
    real_killing_signature,
)
