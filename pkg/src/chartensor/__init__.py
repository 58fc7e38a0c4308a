"""Exact certification of characteristic tensors and synthesis of their Lie algebras."""

from .builder import (
    BuildError,
    LieAlgebraStructure,
    LiftShift,
    build_bracket,
    check_jacobi,
    derived_series,
    killing_form,
    killing_inertia,
    lambda_bar_equivariance,
    lifting_shift_isomorphism,
)
from .conditions import (
    check_curvature_relation,
    check_first_bianchi,
    check_inf_invariance,
    check_second_bianchi,
    run_certificate,
)
from .exact import Matrix, Vector, solve_linear, span_membership, symmetric_inertia, to_rational
from .io import InstanceError, InstanceFile, load_corpus, parse_instance, serialize_instance
from .results import CertificateReport, CheckResult
from .subalgebra import GroupGenerators, LieSubalgebra, so_basis
from .tensors import CharTriple, CurvatureTensor, Lifting, TorsionTensor
from .torsion import add_torsion, remove_torsion

__all__ = [
    "BuildError", "LieAlgebraStructure", "LiftShift", "build_bracket", "check_jacobi",
    "derived_series", "killing_form", "killing_inertia", "lambda_bar_equivariance",
    "lifting_shift_isomorphism", "check_curvature_relation", "check_first_bianchi",
    "check_inf_invariance", "check_second_bianchi", "run_certificate", "Matrix", "Vector",
    "solve_linear", "span_membership", "symmetric_inertia", "to_rational", "InstanceError",
    "InstanceFile", "load_corpus", "parse_instance", "serialize_instance", "CertificateReport",
    "CheckResult", "GroupGenerators", "LieSubalgebra", "so_basis", "CharTriple",
    "CurvatureTensor", "Lifting", "TorsionTensor", "add_torsion", "remove_torsion",
]
