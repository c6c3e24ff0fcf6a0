"""Alphabets, signed letters, free group words and group presentations.

Words are kept exactly as written; free reduction is an explicit call.
Text grammar for words::

    word  := token (sep token)*          sep is whitespace or '*'
    token := NAME ('^' INTEGER)?         negative exponents are inverses

When every generator name is a single lowercase letter the compact mode is
also accepted: an uppercase letter is the inverse of its lowercase generator
and a token such as ``abAB`` is read letter by letter.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import ParseError

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TOKEN_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(.*))?\Z")
_INT_RE = re.compile(r"[+-]?\d+\Z")


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise ParseError("alphabet must contain at least one generator")
        for name in names:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise ParseError(f"invalid generator name {name!r}")
        if len(set(names)) != len(names):
            raise ParseError(f"duplicate generator names in {names}")
        object.__setattr__(self, "names", names)

    @classmethod
    def from_text(cls, text: str) -> "Alphabet":
        """Build from a comma or whitespace separated list, e.g. ``"a,b,c"``."""
        return cls(n for n in re.split(r"[\s,]+", text.strip()) if n)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ParseError(f"unknown generator {name!r}") from None

    @property
    def compact(self) -> bool:
        """True when compact uppercase-inverse notation is unambiguous."""
        return all(len(n) == 1 and n.islower() for n in self.names)

    def indicator_name(self, i: int) -> str:
        return self.names[i].upper()

    def indicator_index(self, name: str) -> int:
        for i, n in enumerate(self.names):
            if n.upper() == name:
                return i
        raise ParseError(f"unknown indicator {name!r}")


class SignedLetter(NamedTuple):
    generator: int
    sign: int

    def inverse(self) -> "SignedLetter":
        return SignedLetter(self.generator, -self.sign)


@dataclass(frozen=True)
class Word:
    """A finite sequence of signed generators, not necessarily reduced."""

    letters: tuple[SignedLetter, ...] = ()

    def __init__(self, letters: Iterable = ()):
        out = []
        for item in letters:
            g, s = item
            if s not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {s}")
            out.append(SignedLetter(int(g), int(s)))
        object.__setattr__(self, "letters", tuple(out))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[SignedLetter]:
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i])
        return self.letters[i]

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return invert_word(self) ** (-n)
        return Word(self.letters * n)

    def __invert__(self) -> "Word":
        return invert_word(self)

    @property
    def is_reduced(self) -> bool:
        return all(
            not (x.generator == y.generator and x.sign == -y.sign)
            for x, y in zip(self.letters, self.letters[1:])
        )

    def max_generator(self) -> int:
        return max((l.generator for l in self.letters), default=-1)


def free_reduce(w: Word) -> Word:
    """Cancel adjacent inverse pairs until none remain."""
    stack: list[SignedLetter] = []
    for letter in w.letters:
        if stack and stack[-1].generator == letter.generator and stack[-1].sign == -letter.sign:
            stack.pop()
        else:
            stack.append(letter)
    return Word(stack)


def invert_word(w: Word) -> Word:
    return Word(l.inverse() for l in reversed(w.letters))


def commutator(u: Word, v: Word) -> Word:
    """The word ``u v u^-1 v^-1``, unreduced."""
    return u * v * invert_word(u) * invert_word(v)


def _expand_token(name: str, exp: int, alphabet: Alphabet) -> list[SignedLetter]:
    if name in alphabet.names:
        base = [SignedLetter(alphabet.names.index(name), 1)]
    elif alphabet.compact and name.isalpha():
        base = []
        for ch in name:
            if ch in alphabet.names:
                base.append(SignedLetter(alphabet.names.index(ch), 1))
            elif ch.lower() in alphabet.names:
                base.append(SignedLetter(alphabet.names.index(ch.lower()), -1))
            else:
                raise ParseError(f"unknown generator {ch!r} in token {name!r}")
        if len(base) > 1 and exp != 1:
            raise ParseError(f"exponent on multi-letter compact token {name!r}")
    else:
        raise ParseError(f"unknown generator {name!r}")
    if exp < 0:
        base = [l.inverse() for l in reversed(base)]
    return base * abs(exp)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Tokenize ``text`` into a word over ``alphabet`` without reducing it.

    ``"1"`` and the empty string both denote the identity.
    """
    text = text.strip()
    if text in ("", "1"):
        return Word()
    letters: list[SignedLetter] = []
    for token in re.split(r"[\s*]+", text):
        if not token:
            raise ParseError(f"empty token in {text!r}")
        m = _TOKEN_RE.match(token)
        if m is None:
            raise ParseError(f"malformed token {token!r}")
        name, exp_text = m.groups()
        if exp_text is None:
            exp = 1
        elif _INT_RE.match(exp_text):
            exp = int(exp_text)
        else:
            raise ParseError(f"malformed exponent in {token!r}")
        letters.extend(_expand_token(name, exp, alphabet))
    return Word(letters)


def format_word(w: Word, alphabet: Alphabet) -> str:
    """Canonical text: runs of one signed generator collapse to ``x^n``."""
    if not w.letters:
        return "1"
    parts = []
    run_letter, run = w.letters[0], 1
    for letter in list(w.letters[1:]) + [None]:
        if letter == run_letter:
            run += 1
            continue
        name = alphabet.names[run_letter.generator]
        exp = run * run_letter.sign
        parts.append(name if exp == 1 else f"{name}^{exp}")
        run_letter, run = letter, 1
    return " ".join(parts)


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relations: tuple[Word, ...]

    def __init__(self, alphabet: Alphabet, relations: Sequence[Word] = ()):
        rels = []
        for r in relations:
            if r.max_generator() >= len(alphabet):
                raise ParseError("relation uses a generator outside the alphabet")
            rels.append(free_reduce(r))
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "relations", tuple(rels))

    @classmethod
    def free(cls, names: Iterable[str]) -> "Presentation":
        return cls(Alphabet(names), ())

    @property
    def rank(self) -> int:
        return len(self.alphabet)

    def to_json(self) -> dict:
        return {
            "generators": list(self.alphabet.names),
            "relations": [format_word(r, self.alphabet) for r in self.relations],
        }


def presentation_from_dict(data) -> Presentation:
    if not isinstance(data, dict):
        raise ParseError("presentation must be a JSON object")
    unknown = set(data) - {"generators", "relations", "name"}
    if unknown:
        raise ParseError(f"unexpected presentation keys {sorted(unknown)}")
    gens = data.get("generators")
    rels = data.get("relations", [])
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise ParseError("'generators' must be a list of strings")
    if not isinstance(rels, list) or not all(isinstance(r, str) for r in rels):
        raise ParseError("'relations' must be a list of strings")
    alphabet = Alphabet(gens)
    return Presentation(alphabet, [parse_word(r, alphabet) for r in rels])


def load_presentation(source) -> Presentation:
    """Load a presentation from a path, a JSON string, or an already decoded dict."""
    if isinstance(source, (dict, list)):
        return presentation_from_dict(source)
    if isinstance(source, os.PathLike) or (
        isinstance(source, str) and not source.lstrip().startswith("{")
    ):
        with open(source) as fh:
            text = fh.read()
    else:
        text = source
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid presentation JSON: {exc}") from None
    return presentation_from_dict(data)


@dataclass(frozen=True)
class Homomorphism:
    """A homomorphism from the free group to the rationals, one value per generator."""

    values: tuple[Fraction, ...]

    def __init__(self, values: Iterable):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in values))

    @classmethod
    def indicator(cls, i: int, m: int) -> "Homomorphism":
        return cls(1 if j == i else 0 for j in range(m))

    @classmethod
    def zero(cls, m: int) -> "Homomorphism":
        return cls([0] * m)

    def __len__(self) -> int:
        return len(self.values)

    def __call__(self, letter: SignedLetter) -> Fraction:
        return letter.sign * self.values[letter.generator]

    def evaluate(self, w: Word) -> Fraction:
        return sum((self(l) for l in w), Fraction(0))

    def __add__(self, other: "Homomorphism") -> "Homomorphism":
        return Homomorphism(a + b for a, b in zip(self.values, other.values))

    def __sub__(self, other: "Homomorphism") -> "Homomorphism":
        return Homomorphism(a - b for a, b in zip(self.values, other.values))

    def __mul__(self, c) -> "Homomorphism":
        return Homomorphism(c * a for a in self.values)

    __rmul__ = __mul__

    def __neg__(self) -> "Homomorphism":
        return self * -1

    def __bool__(self) -> bool:
        return any(self.values)

    def support(self) -> list[int]:
        return [i for i, v in enumerate(self.values) if v]
