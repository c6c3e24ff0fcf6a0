"""Exact letter-braiding invariants of words in free and finitely presented groups."""

from .braiding import (
    braiding_product,
    cobound,
    configuration_value,
    evaluate_configurations,
    evaluate_recursive,
    evaluate_single_pass,
    induced_dfunction,
    integrate,
    is_eigenword,
)
from .coalgebra import (
    Functional,
    braiding_functional,
    cobracket_functional,
    cobracket_tree,
    functional_from_bar,
    functional_from_symbol,
    hopf_evaluate,
    linearize_tree,
    pair,
    symbol_for_functional,
)
from .descent import InvariantBasis, descending_invariants, verify_descent
from .errors import BraidlinkError, DimensionError, NotPrimitiveError, ParseError, SemanticError
from .lie import LieElement, LyndonBasis, lie_bracket, lie_coordinates, lyndon_basis, lyndon_words
from .membership import DepthReport, commutator_depth
from .symbols import SymbolSum, TreeSymbol, parse_symbol
from .tensor import TruncatedTensor, bch_of_word, exp_letter, log_grouplike, truncated_product
from .words import (
    Alphabet,
    Homomorphism,
    Presentation,
    SignedLetter,
    Word,
    free_reduce,
    invert_word,
    load_presentation,
    parse_word,
)

__version__ = "0.1.0"
