"""Truncated free associative algebra over the rationals.

Elements are stored per weight: ``graded[n]`` maps monomials of length ``n``
(tuples of generator indices) to nonzero Fractions.  Everything above the
cutoff is discarded by every operation.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Mapping

from .errors import DimensionError, SemanticError
from .words import SignedLetter, Word

Monomial = tuple[int, ...]


class TruncatedTensor:
    __slots__ = ("cutoff", "graded")

    def __init__(self, cutoff: int, coefficients: Mapping[Monomial, object] | None = None):
        if cutoff < 0:
            raise ValueError("cutoff must be non-negative")
        self.cutoff = cutoff
        self.graded: list[dict[Monomial, Fraction]] = [{} for _ in range(cutoff + 1)]
        if coefficients:
            for mono, c in coefficients.items():
                mono = tuple(mono)
                if len(mono) > cutoff:
                    continue
                c = Fraction(c)
                if c:
                    level = self.graded[len(mono)]
                    total = level.get(mono, 0) + c
                    if total:
                        level[mono] = total
                    else:
                        level.pop(mono, None)

    @classmethod
    def _from_graded(cls, cutoff, graded) -> "TruncatedTensor":
        out = cls.__new__(cls)
        out.cutoff = cutoff
        out.graded = graded
        return out

    @classmethod
    def unit(cls, cutoff: int) -> "TruncatedTensor":
        return cls(cutoff, {(): 1})

    @classmethod
    def generator(cls, i: int, cutoff: int) -> "TruncatedTensor":
        return cls(cutoff, {(i,): 1})

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        for level in self.graded:
            yield from level.items()

    def coefficient(self, mono: Iterable[int]) -> Fraction:
        mono = tuple(mono)
        if len(mono) > self.cutoff:
            return Fraction(0)
        return self.graded[len(mono)].get(mono, Fraction(0))

    def __getitem__(self, mono) -> Fraction:
        return self.coefficient(mono)

    def homogeneous(self, n: int) -> "TruncatedTensor":
        graded = [{} for _ in range(self.cutoff + 1)]
        if n <= self.cutoff:
            graded[n] = dict(self.graded[n])
        return self._from_graded(self.cutoff, graded)

    def truncate(self, cutoff: int) -> "TruncatedTensor":
        graded = [dict(self.graded[n]) if n <= self.cutoff else {} for n in range(cutoff + 1)]
        return self._from_graded(cutoff, graded)

    def constant(self) -> Fraction:
        return self.graded[0].get((), Fraction(0))

    def __bool__(self) -> bool:
        return any(self.graded)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedTensor):
            return NotImplemented
        return self.cutoff == other.cutoff and self.graded == other.graded

    def _check(self, other: "TruncatedTensor") -> None:
        if self.cutoff != other.cutoff:
            raise DimensionError(f"cutoff mismatch: {self.cutoff} vs {other.cutoff}")

    def __add__(self, other: "TruncatedTensor") -> "TruncatedTensor":
        self._check(other)
        graded = []
        for a, b in zip(self.graded, other.graded):
            level = dict(a)
            for mono, c in b.items():
                total = level.get(mono, 0) + c
                if total:
                    level[mono] = total
                else:
                    level.pop(mono, None)
            graded.append(level)
        return self._from_graded(self.cutoff, graded)

    def __neg__(self) -> "TruncatedTensor":
        return self.scale(-1)

    def __sub__(self, other: "TruncatedTensor") -> "TruncatedTensor":
        return self + (-other)

    def scale(self, c) -> "TruncatedTensor":
        c = Fraction(c)
        if not c:
            return TruncatedTensor(self.cutoff)
        return self._from_graded(
            self.cutoff, [{m: c * v for m, v in level.items()} for level in self.graded]
        )

    def __mul__(self, other):
        if isinstance(other, TruncatedTensor):
            return truncated_product(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __repr__(self) -> str:
        terms = ", ".join(f"{''.join(map(str, m)) or '1'}: {c}" for m, c in self.items())
        return f"TruncatedTensor(K={self.cutoff}, {{{terms}}})"

    def format(self, names) -> dict[str, str]:
        """Monomials spelled with generator names, coefficients as ``p/q``."""
        return {
            "".join(names[i] for i in mono) or "1": f"{c.numerator}/{c.denominator}"
            for mono, c in sorted(self.items(), key=lambda kv: (len(kv[0]), kv[0]))
        }


def truncated_product(x: TruncatedTensor, y: TruncatedTensor) -> TruncatedTensor:
    x._check(y)
    K = x.cutoff
    graded: list[dict[Monomial, Fraction]] = [{} for _ in range(K + 1)]
    for p, xl in enumerate(x.graded):
        if not xl:
            continue
        for q in range(K - p + 1):
            yl = y.graded[q]
            if not yl:
                continue
            out = graded[p + q]
            for mx, cx in xl.items():
                for my, cy in yl.items():
                    m = mx + my
                    out[m] = out.get(m, 0) + cx * cy
    for level in graded:
        for m in [m for m, c in level.items() if not c]:
            del level[m]
    return TruncatedTensor._from_graded(K, graded)


def exp_letter(letter: SignedLetter, cutoff: int) -> TruncatedTensor:
    g, s = letter
    return TruncatedTensor(
        cutoff, {(g,) * j: Fraction(s**j, factorial(j)) for j in range(cutoff + 1)}
    )


def _times_exp_letter(x: TruncatedTensor, letter: SignedLetter) -> TruncatedTensor:
    # right multiplication by a single-letter exponential, kept sparse
    K = x.cutoff
    g, s = letter
    graded: list[dict[Monomial, Fraction]] = [{} for _ in range(K + 1)]
    for p, level in enumerate(x.graded):
        for mono, c in level.items():
            coef = c
            tail: Monomial = ()
            for j in range(K - p + 1):
                out = graded[p + j]
                m = mono + tail
                out[m] = out.get(m, 0) + coef
                coef = coef * s / (j + 1)
                tail = tail + (g,)
    for level in graded:
        for m in [m for m, c in level.items() if not c]:
            del level[m]
    return TruncatedTensor._from_graded(K, graded)


def log_grouplike(g: TruncatedTensor) -> TruncatedTensor:
    """Series logarithm of an element with constant term 1."""
    if g.constant() != 1:
        raise SemanticError(f"logarithm needs constant term 1, got {g.constant()}")
    K = g.cutoff
    x = g - TruncatedTensor.unit(K)
    result = TruncatedTensor(K)
    power = x
    for n in range(1, K + 1):
        if not power:
            break
        result = result + power.scale(Fraction((-1) ** (n + 1), n))
        power = truncated_product(power, x)
    return result


def exp_tensor(x: TruncatedTensor) -> TruncatedTensor:
    """Series exponential of an element with zero constant term."""
    if x.constant():
        raise SemanticError("exponential needs zero constant term")
    K = x.cutoff
    result = TruncatedTensor.unit(K)
    power = TruncatedTensor.unit(K)
    for n in range(1, K + 1):
        power = truncated_product(power, x)
        if not power:
            break
        result = result + power.scale(Fraction(1, factorial(n)))
    return result


def word_exponential(w: Word, cutoff: int) -> TruncatedTensor:
    """Ordered product of ``exp(±x_g)`` over the letters of ``w``."""
    out = TruncatedTensor.unit(cutoff)
    for letter in w:
        out = _times_exp_letter(out, letter)
    return out


def bch_of_word(w: Word, cutoff: int) -> TruncatedTensor:
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    return log_grouplike(word_exponential(w, cutoff))


def commutator(x: TruncatedTensor, y: TruncatedTensor) -> TruncatedTensor:
    return truncated_product(x, y) - truncated_product(y, x)


def dynkin(x: TruncatedTensor) -> TruncatedTensor:
    """Left-normed bracketing of every monomial, ``x1 x2 .. xn -> [..[x1,x2],..,xn]``."""
    K = x.cutoff
    graded: list[dict[Monomial, Fraction]] = [{} for _ in range(K + 1)]
    for n in range(1, K + 1):
        out = graded[n]
        for mono, c in x.graded[n].items():
            for m, s in _left_normed(mono).items():
                out[m] = out.get(m, 0) + c * s
        for m in [m for m, v in out.items() if not v]:
            del out[m]
    return TruncatedTensor._from_graded(K, graded)


_LEFT_NORMED_CACHE: dict[Monomial, dict[Monomial, int]] = {}


def _left_normed(mono: Monomial) -> dict[Monomial, int]:
    cached = _LEFT_NORMED_CACHE.get(mono)
    if cached is not None:
        return cached
    if len(mono) == 1:
        result = {mono: 1}
    else:
        head = _left_normed(mono[:-1])
        last = mono[-1:]
        result: dict[Monomial, int] = {}
        for m, c in head.items():
            result[m + last] = result.get(m + last, 0) + c
            result[last + m] = result.get(last + m, 0) - c
        result = {m: c for m, c in result.items() if c}
    if len(_LEFT_NORMED_CACHE) < 200_000:
        _LEFT_NORMED_CACHE[mono] = result
    return result


def is_primitive(x: TruncatedTensor) -> bool:
    """Dynkin criterion: a homogeneous part of weight n is Lie iff D(p) = n p."""
    if x.constant():
        return False
    d = dynkin(x)
    return all(
        {m: c for m, c in d.graded[n].items()} == {m: n * c for m, c in x.graded[n].items()}
        for n in range(1, x.cutoff + 1)
    )
