"""scikit-learn style wrappers: words in, exact rational feature matrices out.

Feature matrices are numpy arrays of ``dtype=object`` holding Fractions, so
nothing is rounded on the way through a pipeline.
"""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .braiding import EVALUATORS
from .coalgebra import Functional, hopf_evaluate
from .descent import descending_invariants
from .membership import depth_from_basis
from .symbols import SymbolSum, parse_symbol
from .words import Alphabet, Presentation, Word, load_presentation, parse_word


def check_alphabet(alphabet) -> Alphabet:
    if isinstance(alphabet, Alphabet):
        return alphabet
    if isinstance(alphabet, str):
        return Alphabet.from_text(alphabet)
    return Alphabet(alphabet)


def check_presentation(presentation) -> Presentation:
    if isinstance(presentation, Presentation):
        return presentation
    return load_presentation(presentation)


def check_words(X, alphabet: Alphabet) -> list[Word]:
    """Accept Words, word strings, or a 1-d array of either."""
    if isinstance(X, (str, Word)):
        raise ValueError("expected a sequence of words, got a single word")
    if isinstance(X, np.ndarray):
        if X.ndim == 2 and X.shape[1] == 1:
            X = X[:, 0]
        elif X.ndim != 1:
            raise ValueError(f"expected a 1-d array of words, got shape {X.shape}")
    if not isinstance(X, Iterable):
        raise ValueError("expected a sequence of words")
    out = []
    for x in X:
        if isinstance(x, Word):
            if x.max_generator() >= len(alphabet):
                raise ValueError("word uses a generator outside the alphabet")
            out.append(x)
        elif isinstance(x, str):
            out.append(parse_word(x, alphabet))
        else:
            raise ValueError(f"cannot interpret {x!r} as a word")
    return out


def check_symbols(symbols, alphabet: Alphabet) -> list[SymbolSum]:
    if isinstance(symbols, (str, SymbolSum)):
        symbols = [symbols]
    return [s if isinstance(s, SymbolSum) else parse_symbol(s, alphabet) for s in symbols]


def _as_matrix(rows, width: int) -> np.ndarray:
    out = np.empty((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        out[i, :] = row
    return out


class BraidingTransformer(TransformerMixin, BaseEstimator):
    """Letter-braiding values of fixed symbols, one column per symbol."""

    def __init__(self, symbols=(), alphabet="a,b", method="singlepass"):
        self.symbols = symbols
        self.alphabet = alphabet
        self.method = method

    def fit(self, X=None, y=None):
        if self.method not in EVALUATORS:
            raise ValueError(f"unknown method {self.method!r}; choose from {sorted(EVALUATORS)}")
        self.alphabet_ = check_alphabet(self.alphabet)
        self.symbols_ = check_symbols(self.symbols, self.alphabet_)
        if not self.symbols_:
            raise ValueError("at least one symbol is required")
        self.n_features_out_ = len(self.symbols_)
        return self

    def transform(self, X):
        check_is_fitted(self, "symbols_")
        words = check_words(X, self.alphabet_)
        evaluate = EVALUATORS[self.method]
        return _as_matrix([[evaluate(s, w) for s in self.symbols_] for w in words], len(self.symbols_))

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "symbols_")
        return np.array([s.format(self.alphabet_) for s in self.symbols_], dtype=object)


class DescendingInvariantTransformer(TransformerMixin, BaseEstimator):
    """Values of a basis of descending invariants of a presentation."""

    def __init__(self, presentation=None, max_weight=3):
        self.presentation = presentation
        self.max_weight = max_weight

    def fit(self, X=None, y=None):
        if int(self.max_weight) < 1:
            raise ValueError("max_weight must be at least 1")
        self.presentation_ = check_presentation(self.presentation)
        self.basis_ = descending_invariants(self.presentation_, int(self.max_weight))
        self.functionals_: list[Functional] = self.basis_.functionals()
        self.n_features_out_ = len(self.functionals_)
        return self

    def transform(self, X):
        check_is_fitted(self, "basis_")
        words = check_words(X, self.presentation_.alphabet)
        return _as_matrix(
            [[hopf_evaluate(phi, w) for phi in self.functionals_] for w in words],
            self.n_features_out_,
        )

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "basis_")
        return np.array(
            [f"w{phi.weight}_{i}" for i, phi in enumerate(self.functionals_)], dtype=object
        )


class CommutatorDepthClassifier(ClassifierMixin, BaseEstimator):
    """Predict the lower-central-series depth of words in a presented group.

    Words whose invariants all vanish through ``max_weight`` are labelled
    ``max_weight + 1``.  ``fit`` ignores ``y`` apart from recording classes.
    """

    def __init__(self, presentation=None, max_weight=3):
        self.presentation = presentation
        self.max_weight = max_weight

    def fit(self, X=None, y=None):
        if int(self.max_weight) < 1:
            raise ValueError("max_weight must be at least 1")
        self.presentation_ = check_presentation(self.presentation)
        self.basis_ = descending_invariants(self.presentation_, int(self.max_weight))
        self.classes_ = np.arange(1, int(self.max_weight) + 2)
        return self

    def report(self, X):
        check_is_fitted(self, "basis_")
        return [depth_from_basis(w, self.basis_) for w in check_words(X, self.presentation_.alphabet)]

    def predict(self, X):
        top = int(self.max_weight) + 1
        return np.array([r.depth or top for r in self.report(X)], dtype=int)
