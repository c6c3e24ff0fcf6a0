"""Functionals on the free Lie dual that descend to a presented group.

The weight-one seed is the kernel of the letter-count matrix of the
relations.  Each further weight keeps the functionals whose cobracket lies
in (previous space) ⊗ (previous space) and which vanish on every relation.
Coordinates follow the Lyndon basis order of ``lyndon_basis(m, K)``; the
space at weight ``n`` lives in the first ``cumulative_dimension(n)``
coordinates.
"""

from __future__ import annotations

import random
import warnings
from fractions import Fraction
from functools import cached_property, lru_cache

from .coalgebra import (
    Functional,
    bch_coordinates,
    cobracket_functional,
    hopf_evaluate,
    symbol_for_functional,
)
from .lie import LyndonBasis, lyndon_basis
from .linalg import QMatrix, Subspace, intersect, kernel, preimage
from .symbols import SymbolSum
from .words import Presentation, SignedLetter, Word, free_reduce


def prepare_relations(P: Presentation) -> list[Word]:
    """Freely reduced relations with duplicates and empty words removed."""
    seen, out = set(), []
    for r in P.relations:
        r = free_reduce(r)
        if not r:
            warnings.warn("dropping a relation that reduces to the empty word", stacklevel=3)
            continue
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


def _cobracket_matrix(basis: LyndonBasis, n: int) -> tuple[QMatrix, list[tuple[int, int]]]:
    """Cobracket of weight-<=n functionals as a map into pair coordinates."""
    dim = basis.cumulative_dimension(n)
    pairs = [
        (i, j)
        for i in range(dim)
        for j in range(dim)
        if i != j and basis.weight_of(i) + basis.weight_of(j) <= n
    ]
    table = basis.bracket_structure()
    rows = []
    for i, j in pairs:
        row = [Fraction(0)] * dim
        for k, c in table[(i, j)].items():
            row[k] = c
        rows.append(row)
    return QMatrix(rows, dim), pairs


def _tensor_square_annihilator(E: Subspace, pairs, dim_pairs: int) -> QMatrix:
    """Rows cutting out E ⊗ E among antisymmetric pair vectors.

    For an antisymmetric X the single condition (c ⊗ 1) X = 0 for every c
    annihilating E already forces X into E ⊗ E.
    """
    ann = E.annihilator()
    position = {p: t for t, p in enumerate(pairs)}
    rows = []
    seconds = sorted({j for _, j in pairs})
    for c in ann.basis:
        support = [i for i, v in enumerate(c) if v]
        for j in seconds:
            row = [Fraction(0)] * dim_pairs
            hit = False
            for i in support:
                t = position.get((i, j))
                if t is not None:
                    row[t] = c[i]
                    hit = True
            if hit:
                rows.append(row)
    return QMatrix(rows, dim_pairs)


def _embed(S: Subspace, ambient: int) -> Subspace:
    return Subspace(ambient, [list(v) + [Fraction(0)] * (ambient - S.ambient) for v in S.basis])


class InvariantBasis:
    """Per-weight bases of the descending functionals of a presentation."""

    def __init__(self, presentation: Presentation, cutoff: int, spaces: dict[int, Subspace], relations):
        self.presentation = presentation
        self.cutoff = cutoff
        self.spaces = spaces
        self.relations = relations
        self.basis = lyndon_basis(presentation.rank, cutoff)

    @property
    def m(self) -> int:
        return self.presentation.rank

    def space(self, n: int) -> Subspace:
        return self.spaces[n]

    def cumulative_dimensions(self) -> tuple[int, ...]:
        return tuple(self.spaces[n].dim for n in range(1, self.cutoff + 1))

    def dimensions(self) -> tuple[int, ...]:
        cum = (0,) + self.cumulative_dimensions()
        return tuple(b - a for a, b in zip(cum, cum[1:]))

    def _functional(self, vec) -> Functional:
        return Functional(
            self.m, self.cutoff, {self.basis.words[i]: c for i, c in enumerate(vec) if c}
        )

    @cached_property
    def _by_weight(self) -> dict[int, list[Functional]]:
        # echelon over coordinates listed heaviest weight first, so every new
        # basis vector carries a pivot in its own top weight
        out = {}
        for n in range(1, self.cutoff + 1):
            S = self.spaces[n]
            order = [i for k in range(n, 0, -1) for i in range(self.basis.cumulative_dimension(k - 1), self.basis.cumulative_dimension(k))]
            permuted = Subspace(S.ambient, [[v[i] for i in order] for v in S.basis])
            top = self.basis.dimension(n)
            new = []
            for row, p in zip(permuted.basis, permuted.pivots):
                if p >= top:
                    break
                vec = [Fraction(0)] * S.ambient
                for pos, i in enumerate(order):
                    vec[i] = row[pos]
                new.append(self._functional(vec))
            out[n] = new
        return out

    def new_at(self, n: int) -> list[Functional]:
        """Basis functionals of weight exactly ``n`` completing the weight n-1 space."""
        return list(self._by_weight[n])

    def functionals(self, n: int | None = None) -> list[Functional]:
        """A basis of the weight <= n space, listed by increasing weight."""
        top = self.cutoff if n is None else n
        return [phi for k in range(1, top + 1) for phi in self._by_weight[k]]

    def contains(self, phi: Functional) -> bool:
        n = max(phi.weight, 1)
        if n > self.cutoff:
            return False
        dim = self.basis.cumulative_dimension(n)
        vec = [Fraction(0)] * dim
        for w, c in phi.coords.items():
            vec[self.basis.index[w]] = c
        return self.spaces[n].contains(vec)

    def __contains__(self, phi) -> bool:
        return self.contains(phi)

    def cobracket_closed(self, phi: Functional) -> bool:
        """Whether the cobracket of ``phi`` lies in (space) ⊗ (space)."""
        X = cobracket_functional(phi.with_cutoff(self.cutoff))
        # both factors have weight below the cutoff
        ann = self.spaces[max(self.cutoff - 1, 1)].annihilator()
        for c in ann.basis:
            for side in (X, X.swap()):
                sums: dict = {}
                for (u, v), x in side.coeffs.items():
                    i = self.basis.index[u]
                    if i < len(c) and c[i]:
                        sums[v] = sums.get(v, 0) + c[i] * x
                if any(sums.values()):
                    return False
        return True

    def symbol(self, phi: Functional) -> SymbolSum:
        return _cached_symbol(phi.m, phi.cutoff, tuple(sorted(phi.coords.items())))

    def __repr__(self):
        return f"InvariantBasis(K={self.cutoff}, dims={self.dimensions()})"


@lru_cache(maxsize=1024)
def _cached_symbol(m, cutoff, items) -> SymbolSum:
    return symbol_for_functional(Functional(m, cutoff, dict(items)))


def descending_invariants(P: Presentation, K: int) -> InvariantBasis:
    if K < 1:
        raise ValueError("cutoff must be at least 1")
    m = P.rank
    basis = lyndon_basis(m, K)
    relations = prepare_relations(P)
    logs = [bch_coordinates(r, m, K).vector(basis) for r in relations]

    spaces: dict[int, Subspace] = {}
    dim1 = basis.cumulative_dimension(1)
    if logs:
        spaces[1] = kernel(QMatrix([v[:dim1] for v in logs], dim1))
    else:
        spaces[1] = Subspace.full(dim1)

    for n in range(2, K + 1):
        dim = basis.cumulative_dimension(n)
        L, pairs = _cobracket_matrix(basis, n)
        E = _embed(spaces[n - 1], dim)
        V = preimage(L, Subspace(len(pairs)), annihilator=_tensor_square_annihilator(E, pairs, len(pairs)))
        if logs:
            V = intersect(V, kernel(QMatrix([v[:dim] for v in logs], dim)))
        spaces[n] = V
    return InvariantBasis(P, K, spaces, relations)


def _random_word(rng: random.Random, m: int, length: int) -> Word:
    return Word(SignedLetter(rng.randrange(m), rng.choice((1, -1))) for _ in range(length))


def verify_descent(
    phi: Functional, P: Presentation, trials: int = 100, seed: int | None = 0, max_length: int = 8
) -> bool:
    """Randomised check that inserting conjugated relations never changes the value."""
    relations = prepare_relations(P)
    if not relations:
        return True
    rng = random.Random(seed)
    m = P.rank
    for _ in range(trials):
        u = _random_word(rng, m, rng.randint(0, max_length))
        g = _random_word(rng, m, rng.randint(0, max_length // 2))
        r = rng.choice(relations)
        if rng.random() < 0.5:
            r = ~r
        cut = rng.randint(0, len(u))
        v = Word(u.letters[:cut]) * g * r * ~g * Word(u.letters[cut:])
        if hopf_evaluate(phi, u) != hopf_evaluate(phi, v):
            return False
    return True
