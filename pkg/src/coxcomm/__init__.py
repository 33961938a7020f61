"""Commensurators, normalizers and quasi-centralizers of parabolic subgroups
of Coxeter groups, with brute-force cross-checks."""

from .errors import (
    BudgetExceeded,
    CoxeterError,
    GraphParseError,
    InfiniteTypeError,
    PreconditionError,
    UnknownGeneratorError,
    UnsupportedLabelError,
)
from .graph import (
    INF,
    ComponentType,
    CoxeterGraph,
    GeneratorSubset,
    ParabolicAnalysis,
    analyze_parabolic,
    classify_component,
    connected_components,
    decompose_subset,
    parse_graph,
    perpendicular_set,
)
from .words import (
    DoubleCosetDecomposition,
    Element,
    ball,
    descents,
    double_coset_decompose,
    inverse,
    is_in_parabolic,
    longest_element,
    normal_form,
    product,
    set_word_engine,
    support,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CoxeterError",
    "GraphParseError",
    "InfiniteTypeError",
    "PreconditionError",
    "UnknownGeneratorError",
    "UnsupportedLabelError",
    "INF",
    "ComponentType",
    "CoxeterGraph",
    "GeneratorSubset",
    "ParabolicAnalysis",
    "analyze_parabolic",
    "classify_component",
    "connected_components",
    "decompose_subset",
    "parse_graph",
    "perpendicular_set",
    "DoubleCosetDecomposition",
    "Element",
    "ball",
    "descents",
    "double_coset_decompose",
    "inverse",
    "is_in_parabolic",
    "longest_element",
    "normal_form",
    "product",
    "set_word_engine",
    "support",
]
