"""Functionals on the truncated free Lie algebra and their tree realisations.

A ``Functional`` holds coordinates dual to the Lyndon basis.  Trees become
functionals by first rewriting them as combinations of linear trees
(``linearize_tree``) and then pairing each linear tree, read leaf to root as
a bar word ``h1|h2|...|hn``, against tensor expansions of basis elements.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import DimensionError
from .lie import LieElement, LyndonBasis, lie_coordinates, lyndon_basis
from .symbols import SymbolSum, TreeSymbol
from .tensor import bch_of_word
from .words import Alphabet, Homomorphism, Word

Monomial = tuple[int, ...]


class Functional:
    """A linear functional on the free Lie algebra through weight ``cutoff``."""

    __slots__ = ("m", "cutoff", "coords")

    def __init__(self, m: int, cutoff: int, coords: Mapping[Monomial, object] | None = None):
        self.m = m
        self.cutoff = cutoff
        out: dict[Monomial, Fraction] = {}
        for w, c in (coords or {}).items():
            w = tuple(w)
            c = Fraction(c)
            if not c:
                continue
            if len(w) > cutoff:
                raise DimensionError(f"coordinate of weight {len(w)} beyond cutoff {cutoff}")
            out[w] = out.get(w, 0) + c
        self.coords = {w: c for w, c in out.items() if c}

    @classmethod
    def dual(cls, word, m: int, cutoff: int | None = None) -> "Functional":
        word = tuple(word)
        return cls(m, len(word) if cutoff is None else cutoff, {word: 1})

    @classmethod
    def from_homomorphism(cls, h: Homomorphism, cutoff: int = 1) -> "Functional":
        return cls(len(h), cutoff, {(i,): v for i, v in enumerate(h.values)})

    @classmethod
    def from_vector(cls, vec, basis: LyndonBasis) -> "Functional":
        return cls(basis.m, basis.cutoff, {basis.words[i]: c for i, c in enumerate(vec) if c})

    def vector(self, basis: LyndonBasis) -> list[Fraction]:
        out = [Fraction(0)] * len(basis)
        for w, c in self.coords.items():
            out[basis.index[w]] = c
        return out

    def with_cutoff(self, cutoff: int) -> "Functional":
        return Functional(self.m, cutoff, self.coords)

    @property
    def weight(self) -> int:
        return max((len(w) for w in self.coords), default=0)

    def homogeneous(self, n: int) -> "Functional":
        return Functional(self.m, self.cutoff, {w: c for w, c in self.coords.items() if len(w) == n})

    def __getitem__(self, w) -> Fraction:
        return self.coords.get(tuple(w), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.coords)

    def __eq__(self, other) -> bool:
        # functionals of different cutoffs agree when their coordinates do
        return isinstance(other, Functional) and self.coords == other.coords

    def __add__(self, other: "Functional") -> "Functional":
        out = dict(self.coords)
        for w, c in other.coords.items():
            out[w] = out.get(w, 0) + c
        return Functional(max(self.m, other.m), max(self.cutoff, other.cutoff), out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Functional":
        return Functional(self.m, self.cutoff, {w: c * v for w, v in self.coords.items()})

    __mul__ = scale
    __rmul__ = scale

    def __repr__(self):
        body = ", ".join(
            f"{''.join(map(str, w))}: {c}"
            for w, c in sorted(self.coords.items(), key=lambda kv: (len(kv[0]), kv[0]))
        )
        return f"Functional(K={self.cutoff}, {{{body}}})"

    def to_json(self, alphabet: Alphabet) -> dict[str, dict[str, str]]:
        out: dict[str, dict[str, str]] = {}
        for w, c in sorted(self.coords.items(), key=lambda kv: (len(kv[0]), kv[0])):
            out.setdefault(str(len(w)), {})[spell(w, alphabet)] = f"{c.numerator}/{c.denominator}"
        return out

    @classmethod
    def from_json(cls, data: Mapping, alphabet: Alphabet, cutoff: int | None = None) -> "Functional":
        coords = {}
        for weight, comp in data.items():
            for text, value in comp.items():
                w = unspell(text, alphabet)
                if len(w) != int(weight):
                    raise ValueError(f"word {text!r} listed under weight {weight}")
                coords[w] = Fraction(value)
        top = max((len(w) for w in coords), default=1)
        return cls(len(alphabet), cutoff or top, coords)


def spell(w: Monomial, alphabet: Alphabet) -> str:
    sep = "" if all(len(n) == 1 for n in alphabet.names) else "."
    return sep.join(alphabet.names[i] for i in w)


def unspell(text: str, alphabet: Alphabet) -> Monomial:
    if all(len(n) == 1 for n in alphabet.names):
        return tuple(alphabet.index(ch) for ch in text)
    return tuple(alphabet.index(part) for part in text.split("."))


class CobracketTensor:
    """Rational coefficients on ordered pairs of Lyndon words (an element of dual ⊗ dual)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[Monomial, Monomial], object] | None = None):
        self.coeffs = {k: Fraction(c) for k, c in (coeffs or {}).items() if c}

    def __getitem__(self, pair) -> Fraction:
        u, v = pair
        return self.coeffs.get((tuple(u), tuple(v)), Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, CobracketTensor) and self.coeffs == other.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "CobracketTensor") -> "CobracketTensor":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return CobracketTensor(out)

    def scale(self, c) -> "CobracketTensor":
        return CobracketTensor({k: c * v for k, v in self.coeffs.items()})

    def swap(self) -> "CobracketTensor":
        return CobracketTensor({(v, u): c for (u, v), c in self.coeffs.items()})

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(len(u), len(v)) for u, v in self.coeffs}

    def __repr__(self):
        return f"CobracketTensor({len(self.coeffs)} terms)"


def pair(phi: Functional, u: LieElement) -> Fraction:
    if phi.cutoff != u.cutoff:
        raise DimensionError(f"cutoff mismatch: functional {phi.cutoff}, element {u.cutoff}")
    return sum((c * u.coords[w] for w, c in phi.coords.items() if w in u.coords), Fraction(0))


def cobracket_functional(phi: Functional) -> CobracketTensor:
    """Transpose of the bracket: ``<]phi[, u ⊗ v> = <phi, [u, v]>`` on basis pairs."""
    basis = lyndon_basis(phi.m, phi.cutoff)
    table = basis.bracket_structure()
    idx = {basis.index[w]: c for w, c in phi.coords.items()}
    out = {}
    for (i, j), bracket in table.items():
        total = sum((c * idx[k] for k, c in bracket.items() if k in idx), Fraction(0))
        if total:
            out[(basis.words[i], basis.words[j])] = total
    return CobracketTensor(out)


# -- trees ------------------------------------------------------------------

TreePairs = dict[tuple[TreeSymbol, TreeSymbol], Fraction]


def _prunings(tree: TreeSymbol):
    """Every way to cut one edge: yields (branch subtree, remaining rooted tree)."""
    for i, child in enumerate(tree.children):
        others = tree.children[:i] + tree.children[i + 1 :]
        yield child, TreeSymbol(tree.label, others)
        for branch, rest in _prunings(child):
            yield branch, TreeSymbol(tree.label, others + (rest,))


def tree_coproduct(tree: TreeSymbol) -> TreePairs:
    out: TreePairs = {}
    for branch, rest in _prunings(tree):
        out[(branch, rest)] = out.get((branch, rest), 0) + 1
    return out


def cobracket_tree(tree: TreeSymbol) -> TreePairs:
    """Antisymmetrised pruning coproduct; empty for a single vertex."""
    out: TreePairs = {}
    for (b, r), c in tree_coproduct(tree).items():
        out[(b, r)] = out.get((b, r), 0) + c
        out[(r, b)] = out.get((r, b), 0) - c
    return {k: v for k, v in out.items() if v}


Chain = tuple[Homomorphism, ...]


def _merge(branches: list[dict[Chain, Fraction]], root: Homomorphism) -> dict[Chain, Fraction]:
    """Chains equivalent to ``root`` with each branch combination attached."""
    if not branches:
        return {(root,): Fraction(1)}
    if len(branches) == 1:
        return {ch + (root,): c for ch, c in branches[0].items()}
    first, second, rest = branches[0], branches[1], branches[2:]
    nested: dict[Chain, Fraction] = {}
    for a, ca in first.items():
        for b, cb in second.items():
            # (a)(b)g = ((a)b)g + ((b)a)g
            for inner in (_merge([{a: 1}, {b[:-1]: 1}] if len(b) > 1 else [{a: 1}], b[-1]),
                          _merge([{b: 1}, {a[:-1]: 1}] if len(a) > 1 else [{b: 1}], a[-1])):
                for ch, c in inner.items():
                    nested[ch] = nested.get(ch, 0) + ca * cb * c
    nested = {k: v for k, v in nested.items() if v}
    return _merge([nested] + rest, root)


def _chains(tree: TreeSymbol) -> dict[Chain, Fraction]:
    return _merge([_chains(c) for c in tree.children], tree.label)


def linearize_tree(tree: TreeSymbol) -> SymbolSum:
    """Rewrite ``tree`` as linear trees using the nested Arnold identity.

    At a vertex with branches ``a`` and ``b`` the identity
    ``(a)(b)g = ((a)b)g + ((b)a)g`` moves one branch onto the other's root;
    branches are linearised first so every step strictly shrinks the
    branching part being resolved.
    """
    return SymbolSum(
        (TreeSymbol.from_chain(ch), c) for ch, c in _chains(tree).items()
    )


def _bar_functional(chain: Chain, m: int, cutoff: int) -> dict[Monomial, Fraction]:
    n = len(chain)
    if n > cutoff:
        return {}
    rows = [h.values for h in chain]
    out = {}
    basis = lyndon_basis(m, n)
    for b in basis.by_weight[n]:
        total = Fraction(0)
        for mono, e in basis.expansion(b).items():
            term = e
            for t, g in enumerate(mono):
                term *= rows[t][g]
                if not term:
                    break
            total += term
        if total:
            out[b] = total
    return out


def functional_from_bar(tree: TreeSymbol | Chain, cutoff: int | None = None) -> Functional:
    """Functional of a linear tree, labels read from the leaf to the root."""
    if isinstance(tree, TreeSymbol):
        if not tree.is_linear:
            raise ValueError("functional_from_bar needs a linear tree")
        chain = tree.chain()
    else:
        chain = tuple(tree)
    m = len(chain[0])
    K = len(chain) if cutoff is None else cutoff
    return Functional(m, K, _bar_functional(chain, m, K))


def functional_from_symbol(sigma: SymbolSum | TreeSymbol, cutoff: int | None = None) -> Functional:
    if isinstance(sigma, TreeSymbol):
        sigma = SymbolSum.of(sigma)
    K = max(sigma.weight, 1) if cutoff is None else cutoff
    m = next((len(t.label) for t, _ in sigma), 1)
    total: dict[Monomial, Fraction] = {}
    for tree, c in sigma:
        for ch, d in _chains(tree).items():
            for w, v in _bar_functional(ch, m, K).items():
                total[w] = total.get(w, 0) + c * d * v
    return Functional(m, K, total)


def symbol_for_functional(phi: Functional) -> SymbolSum:
    """A combination of indicator bar words realising ``phi``.

    Bar words are taken from the Lyndon words themselves; their pairing
    matrix against the basis is unitriangular, so the solution is unique on
    that support and found by back substitution in decreasing order.
    """
    m = phi.m
    out: dict[TreeSymbol, Fraction] = {}
    for n in range(1, phi.weight + 1):
        words = lyndon_basis(m, n).by_weight[n]
        x: dict[Monomial, Fraction] = {}
        for b in reversed(words):
            target = phi[b]
            for mono, e in lyndon_basis(m, n).expansion(b).items():
                if mono != b and mono in x:
                    target -= x[mono] * e
            if target:
                x[b] = target
        for b, c in x.items():
            chain = [Homomorphism.indicator(g, m) for g in b]
            out[TreeSymbol.from_chain(chain)] = c
    return SymbolSum(out)


@lru_cache(maxsize=4096)
def bch_coordinates(w: Word, m: int, cutoff: int) -> LieElement:
    return lie_coordinates(bch_of_word(w, cutoff), m=m, check=False)


def hopf_evaluate(phi: Functional, w: Word) -> Fraction:
    """Pair ``phi`` with the truncated logarithm of ``w``."""
    if not phi.coords:
        return Fraction(0)
    return pair(phi, bch_coordinates(w, phi.m, phi.cutoff))


# -- braiding symbols as functionals -----------------------------------------
#
# Letter braiding of a tree is a pairing with the expansion g -> 1 + x_g,
# g^-1 -> (1 + x_g)^-1, where sibling subtrees combine by the quasi-shuffle
# product.  Substituting x -> log(1 + x) rewrites that expansion in terms of
# exponentials, and the Lie part of the resulting bar element is the
# functional whose Hopf evaluation matches braiding on eigenwords.  It
# differs from ``functional_from_symbol`` only through products of labels
# (e.g. a vertex and its child carrying the same indicator).

BarElement = dict[Chain, Fraction]


def _label_product(h: Homomorphism, k: Homomorphism) -> Homomorphism:
    return Homomorphism(a * b for a, b in zip(h.values, k.values))


@lru_cache(maxsize=None)
def _stuffle_words(u: Chain, v: Chain) -> tuple[tuple[Chain, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: dict[Chain, int] = {}
    for w, c in _stuffle_words(u[:-1], v):
        out[w + (u[-1],)] = out.get(w + (u[-1],), 0) + c
    for w, c in _stuffle_words(u, v[:-1]):
        out[w + (v[-1],)] = out.get(w + (v[-1],), 0) + c
    merged = _label_product(u[-1], v[-1])
    if merged:
        for w, c in _stuffle_words(u[:-1], v[:-1]):
            out[w + (merged,)] = out.get(w + (merged,), 0) + c
    return tuple((w, c) for w, c in out.items() if c)


def _stuffle(x: BarElement, y: BarElement) -> BarElement:
    out: BarElement = {}
    for u, cu in x.items():
        for v, cv in y.items():
            for w, c in _stuffle_words(u, v):
                out[w] = out.get(w, 0) + cu * cv * c
    return {w: c for w, c in out.items() if c}


def _magnus_bar(tree: TreeSymbol) -> BarElement:
    acc: BarElement = {(): Fraction(1)}
    for child in tree.children:
        acc = _stuffle(acc, _magnus_bar(child))
    return {w + (tree.label,): c for w, c in acc.items()}


def _log_substitution(chain: Chain) -> BarElement:
    """Transpose of x -> log(1 + x): merge consecutive blocks of labels."""
    out: BarElement = {}

    def walk(start, prefix, coef):
        if start == len(chain):
            out[prefix] = out.get(prefix, 0) + coef
            return
        label = None
        for end in range(start + 1, len(chain) + 1):
            label = chain[start] if label is None else _label_product(label, chain[end - 1])
            if not label:
                break
            j = end - start
            walk(end, prefix + (label,), coef * Fraction((-1) ** (j + 1), j))

    walk(0, (), Fraction(1))
    return {w: c for w, c in out.items() if c}


def braiding_functional(sigma: SymbolSum | TreeSymbol, cutoff: int | None = None) -> Functional:
    """Functional whose Hopf evaluation reproduces letter braiding on eigenwords."""
    if isinstance(sigma, TreeSymbol):
        sigma = SymbolSum.of(sigma)
    K = max(sigma.weight, 1) if cutoff is None else cutoff
    m = next((len(t.label) for t, _ in sigma), 1)
    total: dict[Monomial, Fraction] = {}
    for tree, c in sigma:
        for chain, d in _magnus_bar(tree).items():
            for sub, e in _log_substitution(chain).items():
                for w, v in _bar_functional(sub, m, K).items():
                    total[w] = total.get(w, 0) + c * d * e * v
    return Functional(m, K, total)
