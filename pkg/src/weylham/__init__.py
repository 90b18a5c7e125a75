"""Exact computations in the Weyl algebra of canonical position/momentum symbols."""

from .scalars import Coefficient, Gaussian, I, I_HBAR
from .free_algebra import (
    ArityError,
    DimensionMismatch,
    FreePoly,
    Generator,
    derivative_at,
    fp_arith,
    fp_compose,
    fp_derivative,
    fp_partial,
    fp_second_derivative,
)
from .weyl import (
    NormalMonomial,
    WeylElement,
    closed_commutator,
    commutator,
    hbar_check,
    ideal_sample,
    lift,
    normal_form,
    rewrite_normal_form,
    w_arith,
)
from .fields import (
    NotAVectorField,
    ScalarField,
    VectorField,
    is_vector_field,
    lie_bracket,
    lie_derivative,
)
from .hamiltonian import (
    FlowSeries,
    GradientCovector,
    covector_eval,
    flow_taylor,
    free_theta_pairing,
    grad,
    grad_components,
    heisenberg_generator,
    is_conserved,
    noether_symmetry,
    noetherian_identity_check,
    poisson_bracket,
    theta_apply,
)
from .matrix_eval import Assignment, ExactMatrix, eval_derivative, eval_free, separate
from .cli.parser import parse
from .cli.printer import dumps, from_json, loads, print_canonical, to_json

__version__ = "0.1.0"
