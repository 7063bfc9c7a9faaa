"""Exact-arithmetic workbench for purity of short exact sequences over Z/N."""

__version__ = "0.1.0"

from .errors import InputError, InternalCheckError
from .zmodlin import IntMatrix, SnfResult, kernel_mod, smith_normal_form, solve_linear_mod
from .finmod import (
    CanonicalModule,
    ModuleMap,
    ShortSequence,
    dual_map,
    dual_module,
    hom_module,
    is_exact,
    is_split,
    normalize_presentation,
    random_ses,
    splitting_section,
    tensor_map,
    tensor_modules,
)
from .ppdef import PpFormula, PpPair, enumerate_pp, eval_pp, induced_pp_map, pp_pair_value
from .funcat import (
    FunctorOnD,
    build_index_category,
    coend_tensor,
    dual_functor,
    dual_of_hom_check,
    eval_fp_functor,
    fp_functor_from_map,
    hom_tensor_duality_check,
    kan_eval,
    nat_transformations,
    representable_cov,
    restrict_module,
    tensor_functor,
)
from .purity import Bounds, PurityReport, equivalence_harness, purity_report

__all__ = [
    "Bounds",
    "CanonicalModule",
    "FunctorOnD",
    "InputError",
    "IntMatrix",
    "InternalCheckError",
    "ModuleMap",
    "PpFormula",
    "PpPair",
    "PurityReport",
    "ShortSequence",
    "SnfResult",
    "build_index_category",
    "coend_tensor",
    "dual_functor",
    "dual_map",
    "dual_module",
    "dual_of_hom_check",
    "enumerate_pp",
    "equivalence_harness",
    "eval_fp_functor",
    "eval_pp",
    "fp_functor_from_map",
    "hom_module",
    "hom_tensor_duality_check",
    "induced_pp_map",
    "is_exact",
    "is_split",
    "kan_eval",
    "kernel_mod",
    "nat_transformations",
    "normalize_presentation",
    "pp_pair_value",
    "purity_report",
    "random_ses",
    "representable_cov",
    "restrict_module",
    "smith_normal_form",
    "solve_linear_mod",
    "splitting_section",
    "tensor_functor",
    "tensor_map",
    "tensor_modules",
]
