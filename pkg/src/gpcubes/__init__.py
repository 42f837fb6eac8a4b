"""Graph products of cyclic groups and finite balls of their cube complexes."""

__version__ = "0.1.0"

from .groups import (
    BudgetExceededError,
    GraphParseError,
    GraphProduct,
    LabeledGraph,
    NormalForm,
    OracleUndecidedError,
    PresentationMismatchError,
    UnknownGeneratorError,
    parse_graph,
    parse_word,
)

__all__ = [
    "BudgetExceededError",
    "GraphParseError",
    "GraphProduct",
    "LabeledGraph",
    "NormalForm",
    "OracleUndecidedError",
    "PresentationMismatchError",
    "UnknownGeneratorError",
    "parse_graph",
    "parse_word",
    "__version__",
]
