"""Differential-algebra tools for pseudo-null curve flows in Lorentzian space forms."""

from .diffalg import (
    KAPPA,
    TAU,
    Coefficient,
    DiffMonomial,
    DiffPoly,
    Generator,
    GeneratorMismatch,
    NotTotalDerivative,
    antiderivative,
    commutator,
    evolution_derivation,
    frechet,
    total_derivative,
    variational_derivative,
)
from .expr import ExpressionSyntaxError, UnknownSymbolError, format_poly, parse
from .geometry import (
    FrenetField,
    InvalidField,
    ParallelField,
    curvature_variation,
    derive_field,
    frame_derivation,
    inner,
    lie_bracket,
    tangency_check,
    torsion_variation,
    variation_coefficients,
)
from .hierarchy import (
    HierarchyLevel,
    RecursionOperator,
    burgers_operator,
    generate_hierarchy,
    is_symmetry,
    operator_flow,
    recursion_chain,
)

__version__ = "0.1.0"
