"""Edge labellings, lexicographic shellability and quadratic Groebner bases."""

from .algebra import AlgebraElement, MonomialOrder, parallel_ideal_generators, truncate
from .category import AcyclicCategory, augment_category, build_category, poset_to_category
from .complexes import find_shelling, is_shelling, nerve, order_complex
from .errors import LexShellError, TheoremViolation
from .groebner import buchberger, is_groebner_basis, is_quadratic, normal_form, parallel_basis
from .labellings import (
    EdgeLabelling,
    check_lex_condition,
    check_prefix_condition,
    check_sbs_condition,
    search_lex_labelling,
)
from .lab import SweepConfig, equivalence_sweep, verify_backward, verify_forward
from .poset import Poset, augment, build_poset

__all__ = [
    "AcyclicCategory",
    "AlgebraElement",
    "EdgeLabelling",
    "LexShellError",
    "MonomialOrder",
    "Poset",
    "SweepConfig",
    "TheoremViolation",
    "augment",
    "augment_category",
    "buchberger",
    "build_category",
    "build_poset",
    "check_lex_condition",
    "check_prefix_condition",
    "check_sbs_condition",
    "equivalence_sweep",
    "find_shelling",
    "is_groebner_basis",
    "is_quadratic",
    "is_shelling",
    "nerve",
    "normal_form",
    "order_complex",
    "parallel_basis",
    "parallel_ideal_generators",
    "poset_to_category",
    "search_lex_labelling",
    "truncate",
    "verify_backward",
    "verify_forward",
]
