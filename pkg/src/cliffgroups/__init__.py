"""Exact Clifford algebra arithmetic and the groups defined by conjugation and norms."""

from .algebra import (
    Backend, Field, Involution, Multivector, Signature, SubspaceSpec, all_signatures, bracket,
    geometric_product, grade_project, in_subspace, involution,
)
from .errors import (
    CliffordError, IndexOutOfRange, MissingWitness, NotInvertible, ParseError, SamplerExhausted,
    SignatureMismatch, SingularError, UnsupportedGroup,
)
from .groups import (
    A, A_PRIME, B, B_PRIME, GAMMA, INVERTIBLE, LIPSCHITZ, P, PIN, Q, Q_PRIME, SPIN, Family, GroupId,
    analyze, chi, member, parse_group, preserves_subspace, psi, sample,
)
from .lie import closure_check, dim_formula, enumerated_dim, exp_membership_check, lie_spec
from .matrix_rep import centralizer_basis, conjugation_matrix, exp_mv, inverse, left_matrix
from .parser import evaluate, parse_expression

__version__ = "0.1.0"
