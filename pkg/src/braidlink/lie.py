"""Truncated free Lie algebra in the Lyndon basis.

Basis elements are Lyndon words over generator indices ``0..m-1``, ordered by
weight and then lexicographically.  The standard bracketing of a Lyndon word
expands to a tensor whose lexicographically least monomial is the word
itself with coefficient 1, so coordinates come out of a single sweep of
back substitution.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import DimensionError, NotPrimitiveError, SemanticError
from .tensor import Monomial, TruncatedTensor, commutator, is_primitive


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def witt_number(m: int, n: int) -> int:
    """Dimension of the weight-n part of the free Lie algebra on m generators."""
    total = sum(_mobius(d) * m ** (n // d) for d in range(1, n + 1) if n % d == 0)
    return total // n


def _duval(m: int, max_len: int):
    # Duval's algorithm: all Lyndon words of length <= max_len in lex order
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        base = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - base])
        while w and w[-1] == m - 1:
            w.pop()


def lyndon_words(m: int, n: int) -> list[Monomial]:
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    return [w for w in _duval(m, n) if len(w) == n]


def is_lyndon(w: Monomial) -> bool:
    w = tuple(w)
    return bool(w) and all(w < w[i:] for i in range(1, len(w)))


def standard_factorization(w: Monomial) -> tuple[Monomial, Monomial]:
    """Split a Lyndon word of length >= 2 as ``u v`` with ``v`` its longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no proper Lyndon suffix")


@lru_cache(maxsize=None)
def _expansion(w: Monomial) -> dict[Monomial, Fraction]:
    if len(w) == 1:
        return {w: Fraction(1)}
    u, v = standard_factorization(w)
    pu, pv = _expansion(u), _expansion(v)
    out: dict[Monomial, Fraction] = {}
    for a, ca in pu.items():
        for b, cb in pv.items():
            out[a + b] = out.get(a + b, 0) + ca * cb
            out[b + a] = out.get(b + a, 0) - ca * cb
    return {k: c for k, c in out.items() if c}


def bracketing_expand(w: Iterable[int], cutoff: int | None = None) -> TruncatedTensor:
    w = tuple(w)
    if not is_lyndon(w):
        raise SemanticError(f"{w} is not a Lyndon word")
    return TruncatedTensor(len(w) if cutoff is None else cutoff, _expansion(w))


def bracketing_text(w: Monomial, names) -> str:
    if len(w) == 1:
        return names[w[0]]
    u, v = standard_factorization(w)
    return f"[{bracketing_text(u, names)},{bracketing_text(v, names)}]"


class LyndonBasis:
    """Lyndon basis of the free Lie algebra on ``m`` generators through weight ``cutoff``."""

    def __init__(self, m: int, cutoff: int):
        if m < 1 or cutoff < 1:
            raise ValueError("need m >= 1 and cutoff >= 1")
        self.m = m
        self.cutoff = cutoff
        self.by_weight: dict[int, list[Monomial]] = {n: [] for n in range(1, cutoff + 1)}
        for w in _duval(m, cutoff):
            self.by_weight[len(w)].append(w)
        self.words: list[Monomial] = [w for n in range(1, cutoff + 1) for w in self.by_weight[n]]
        self.index: dict[Monomial, int] = {w: i for i, w in enumerate(self.words)}
        self._offsets = {}
        start = 0
        for n in range(1, cutoff + 1):
            self._offsets[n] = (start, start + len(self.by_weight[n]))
            start += len(self.by_weight[n])

    def __len__(self) -> int:
        return len(self.words)

    def dimension(self, n: int | None = None) -> int:
        if n is None:
            return len(self.words)
        return len(self.by_weight.get(n, ()))

    def cumulative_dimension(self, n: int) -> int:
        return self._offsets[min(n, self.cutoff)][1] if n >= 1 else 0

    def weight_slice(self, n: int) -> slice:
        return slice(*self._offsets[n])

    def weight_of(self, i: int) -> int:
        return len(self.words[i])

    def expansion(self, w: Monomial) -> dict[Monomial, Fraction]:
        return _expansion(w)

    def bracket_structure(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        return _structure_constants(self.m, self.cutoff)


@lru_cache(maxsize=None)
def lyndon_basis(m: int, cutoff: int) -> LyndonBasis:
    return LyndonBasis(m, cutoff)


class LieElement:
    """Coordinates in the Lyndon basis, truncated at ``cutoff``."""

    __slots__ = ("m", "cutoff", "coords")

    def __init__(self, m: int, cutoff: int, coords: Mapping[Monomial, object] | None = None):
        self.m = m
        self.cutoff = cutoff
        self.coords: dict[Monomial, Fraction] = {}
        for w, c in (coords or {}).items():
            w = tuple(w)
            c = Fraction(c)
            if c and len(w) <= cutoff:
                self.coords[w] = self.coords.get(w, 0) + c
        self.coords = {w: c for w, c in self.coords.items() if c}

    @classmethod
    def generator(cls, i: int, m: int, cutoff: int) -> "LieElement":
        return cls(m, cutoff, {(i,): 1})

    @classmethod
    def from_vector(cls, vec, basis: LyndonBasis) -> "LieElement":
        return cls(basis.m, basis.cutoff, {basis.words[i]: c for i, c in enumerate(vec) if c})

    def vector(self, basis: LyndonBasis) -> list[Fraction]:
        out = [Fraction(0)] * len(basis)
        for w, c in self.coords.items():
            out[basis.index[w]] = c
        return out

    def __getitem__(self, w) -> Fraction:
        return self.coords.get(tuple(w), Fraction(0))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieElement)
            and self.cutoff == other.cutoff
            and self.coords == other.coords
        )

    def __bool__(self) -> bool:
        return bool(self.coords)

    def __add__(self, other: "LieElement") -> "LieElement":
        if self.cutoff != other.cutoff:
            raise DimensionError("cutoff mismatch")
        out = dict(self.coords)
        for w, c in other.coords.items():
            out[w] = out.get(w, 0) + c
        return LieElement(max(self.m, other.m), self.cutoff, out)

    def __neg__(self) -> "LieElement":
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LieElement":
        return LieElement(self.m, self.cutoff, {w: c * v for w, v in self.coords.items()})

    __mul__ = scale
    __rmul__ = scale

    def homogeneous(self, n: int) -> "LieElement":
        return LieElement(self.m, self.cutoff, {w: c for w, c in self.coords.items() if len(w) == n})

    def to_tensor(self, cutoff: int | None = None) -> TruncatedTensor:
        K = self.cutoff if cutoff is None else cutoff
        total: dict[Monomial, Fraction] = {}
        for w, c in self.coords.items():
            if len(w) > K:
                continue
            for mono, e in _expansion(w).items():
                total[mono] = total.get(mono, 0) + c * e
        return TruncatedTensor(K, total)

    def __repr__(self):
        body = ", ".join(f"{''.join(map(str, w))}: {c}" for w, c in sorted(self.coords.items(), key=lambda kv: (len(kv[0]), kv[0])))
        return f"LieElement(K={self.cutoff}, {{{body}}})"


def lie_coordinates(p: TruncatedTensor, m: int | None = None, check: bool = True) -> LieElement:
    """Coordinates of a Lie element given as a tensor.

    Raises NotPrimitiveError when ``p`` is not a Lie element (with ``check``
    the Dynkin criterion is applied first; the back substitution itself also
    detects leftovers).
    """
    if m is None:
        m = 1 + max((max(mono) for mono, _ in p.items() if mono), default=0)
    if check and not is_primitive(p):
        raise NotPrimitiveError("tensor is not a Lie element (Dynkin criterion fails)")
    if p.constant():
        raise NotPrimitiveError("Lie elements have no constant term")
    coords: dict[Monomial, Fraction] = {}
    for n in range(1, p.cutoff + 1):
        residual = dict(p.graded[n])
        if not residual:
            continue
        for w in lyndon_basis(m, n).by_weight[n]:
            c = residual.get(w)
            if not c:
                continue
            coords[w] = c
            for mono, e in _expansion(w).items():
                v = residual.get(mono, 0) - c * e
                if v:
                    residual[mono] = v
                else:
                    residual.pop(mono, None)
        if residual:
            raise NotPrimitiveError(f"weight {n} part is not in the span of the Lyndon basis")
    return LieElement(m, p.cutoff, coords)


def lie_bracket(u: LieElement, v: LieElement) -> LieElement:
    if u.cutoff != v.cutoff:
        raise DimensionError("cutoff mismatch")
    m = max(u.m, v.m)
    t = commutator(u.to_tensor(), v.to_tensor())
    return lie_coordinates(t, m=m, check=False)


@lru_cache(maxsize=None)
def _structure_constants(m: int, cutoff: int) -> dict[tuple[int, int], dict[int, Fraction]]:
    """``[b_i, b_j]`` in basis indices for every pair with total weight <= cutoff."""
    basis = lyndon_basis(m, cutoff)
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i, u in enumerate(basis.words):
        for j, v in enumerate(basis.words):
            if len(u) + len(v) > cutoff:
                continue
            if j < i and (j, i) in table:
                table[(i, j)] = {k: -c for k, c in table[(j, i)].items()}
                continue
            if i == j:
                table[(i, j)] = {}
                continue
            el = lie_bracket(LieElement(m, cutoff, {u: 1}), LieElement(m, cutoff, {v: 1}))
            table[(i, j)] = {basis.index[w]: c for w, c in el.coords.items()}
    return table
