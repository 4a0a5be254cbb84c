"""Numerical transforms, eigenbases and verification of transform identities."""

from .apply import (
    MeasureMismatchError,
    apply_transform,
    default_rule,
    default_targets,
    function_values,
    measure_weight,
)
from .basis import (
    BASIS_FAMILIES,
    BasisIndex,
    InvalidIndexError,
    angular_dimension,
    angular_element,
    class_eigenvalue,
    eval_basis,
    family_basis,
    predicted_eigenvalue,
    symbolic_basis,
)
from .checks import (
    EigenReport,
    NumericReport,
    bochner_check,
    bochner_radial_integral,
    calculus_check,
    default_indices,
    dunkl_integration_by_parts,
    eigen_check,
    eigen_product_check,
    factorization_check,
    finite_order,
    finite_order_check,
    heisenberg_ratio,
    inversion_check,
    laguerre_gram,
    master_formula_check,
    measure_eigenvalue,
    semigroup_check,
    unitarity_check,
)

__all__ = [
    "MeasureMismatchError",
    "apply_transform",
    "default_rule",
    "default_targets",
    "function_values",
    "measure_weight",
    "BASIS_FAMILIES",
    "BasisIndex",
    "InvalidIndexError",
    "angular_dimension",
    "angular_element",
    "class_eigenvalue",
    "eval_basis",
    "family_basis",
    "predicted_eigenvalue",
    "symbolic_basis",
    "EigenReport",
    "NumericReport",
    "bochner_check",
    "bochner_radial_integral",
    "calculus_check",
    "default_indices",
    "dunkl_integration_by_parts",
    "eigen_check",
    "eigen_product_check",
    "factorization_check",
    "finite_order",
    "finite_order_check",
    "heisenberg_ratio",
    "inversion_check",
    "laguerre_gram",
    "master_formula_check",
    "measure_eigenvalue",
    "semigroup_check",
    "unitarity_check",
]
