"""Rational lower-central-series depth of a word in a presented group."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coalgebra import Functional, hopf_evaluate
from .descent import InvariantBasis, descending_invariants
from .symbols import SymbolSum
from .words import Presentation, Word, format_word

BLIND_NOTE = (
    "the presentation has no descending invariants above weight one; "
    "depth is only seen through rational nilpotent quotients, so torsion is invisible"
)


@dataclass(frozen=True)
class DepthReport:
    """Outcome of a depth computation.

    ``depth`` is the smallest weight ``c`` at which some descending invariant
    is nonzero on the word, so the logarithm of the word lies in the c-th
    but not the (c+1)-th term of the lower central series.  ``None`` means
    every invariant through the cutoff vanishes.
    """

    word: Word
    presentation: Presentation
    cutoff: int
    depth: int | None
    witness: Functional | None = None
    value: Fraction | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def exact(self) -> bool:
        return self.depth is not None

    def describe(self) -> str:
        if self.depth is None:
            return f"greater than {self.cutoff}"
        return f"exactly {self.depth}"

    def to_json(self, symbol: SymbolSum | None = None) -> dict:
        alphabet = self.presentation.alphabet
        out = {
            "word": format_word(self.word, alphabet),
            "cutoff": self.cutoff,
            "depth": self.describe(),
            "depth_value": self.depth,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json(alphabet)
            out["value"] = f"{self.value.numerator}/{self.value.denominator}"
            if symbol is not None:
                out["symbol"] = symbol.format(alphabet)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def depth_from_basis(w: Word, basis: InvariantBasis) -> DepthReport:
    for n in range(1, basis.cutoff + 1):
        for phi in basis.new_at(n):
            value = hopf_evaluate(phi, w)
            if value:
                return DepthReport(w, basis.presentation, basis.cutoff, n, phi, value)
    notes = ()
    if not any(basis.dimensions()[1:]):
        notes = (BLIND_NOTE,)
    return DepthReport(w, basis.presentation, basis.cutoff, None, notes=notes)


def commutator_depth(w: Word, P: Presentation, K: int) -> DepthReport:
    return depth_from_basis(w, descending_invariants(P, K))
