"""Rooted tree symbols with homomorphism labels and their rational combinations.

Symbol grammar::

    sum    := ['+'|'-'] term (('+'|'-') term)*
    term   := [NUMBER ['*']] tree
    tree   := item+                    at most one atom per item sequence
    item   := '(' sum ['|' sum] ')' | atom
    atom   := [NUMBER ['*']] NAME (('+'|'-') [NUMBER ['*']] NAME)*

``(x|y)`` attaches the tree ``x`` to the root of ``y``.  In a sequence such as
``(x)(y)z`` every parenthesised group is a branch attached to the root
``z``.  A lone group ``(x)`` is just ``x``.  Sums inside groups expand
multilinearly.  An atom is a linear combination of indicator names, where
the indicator of generator ``a`` is written ``A`` (the bare generator name is
accepted too).  Atoms are greedy: ``(B)A-C`` has root label ``A-C``; write
``(B|A) - C`` for the difference of two trees.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator

from .errors import ParseError
from .words import Alphabet, Homomorphism


@dataclass(frozen=True, eq=False)
class TreeSymbol:
    """A rooted tree; each vertex carries a homomorphism, children are unordered."""

    label: Homomorphism
    children: tuple["TreeSymbol", ...] = ()

    def __post_init__(self):
        kids = tuple(sorted(self.children, key=lambda t: t.key))
        object.__setattr__(self, "children", kids)

    @cached_property
    def key(self):
        return (self.weight, self.label.values, tuple(c.key for c in self.children))

    def __eq__(self, other):
        return isinstance(other, TreeSymbol) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    @cached_property
    def weight(self) -> int:
        return 1 + sum(c.weight for c in self.children)

    @property
    def is_linear(self) -> bool:
        t = self
        while t.children:
            if len(t.children) > 1:
                return False
            t = t.children[0]
        return True

    def chain(self) -> tuple[Homomorphism, ...]:
        """Labels of a linear tree from the leaf down to the root."""
        if not self.is_linear:
            raise ValueError("chain() requires a linear tree")
        labels = []
        t = self
        while True:
            labels.append(t.label)
            if not t.children:
                break
            t = t.children[0]
        return tuple(reversed(labels))

    @classmethod
    def from_chain(cls, labels: Iterable[Homomorphism]) -> "TreeSymbol":
        tree = None
        for h in labels:
            tree = cls(h, () if tree is None else (tree,))
        if tree is None:
            raise ValueError("empty chain")
        return tree

    def attach(self, branch: "TreeSymbol") -> "TreeSymbol":
        """Attach ``branch`` by an edge to this tree's root."""
        return TreeSymbol(self.label, self.children + (branch,))

    def subtrees(self) -> Iterator["TreeSymbol"]:
        """Every vertex's subtree, root first."""
        yield self
        for c in self.children:
            yield from c.subtrees()

    def labels(self) -> Iterator[Homomorphism]:
        for t in self.subtrees():
            yield t.label

    def alphabet_size(self) -> int:
        return len(self.label)

    def format(self, alphabet: Alphabet) -> str:
        label = format_label(self.label, alphabet)
        if not self.children:
            return label
        if len(self.children) == 1:
            return f"({self.children[0].format(alphabet)}|{label})"
        kids = reversed(self.children)
        return "".join(f"({c.format(alphabet)})" for c in kids) + label


class SymbolSum:
    """A finite rational combination of tree symbols."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[TreeSymbol, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, dict) else terms
            for tree, c in items:
                c = Fraction(c)
                # a zero label anywhere makes the whole tree vanish
                if c and all(tree.labels()):
                    clean[tree] = clean.get(tree, Fraction(0)) + c
        self.terms = {t: c for t, c in clean.items() if c}

    @classmethod
    def of(cls, tree: TreeSymbol, coefficient=1) -> "SymbolSum":
        return cls({tree: coefficient})

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, SymbolSum) and self.terms == other.terms

    def __add__(self, other: "SymbolSum") -> "SymbolSum":
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, Fraction(0)) + c
        return SymbolSum(out)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return SymbolSum({t: c * v for t, v in self.terms.items()})

    __rmul__ = __mul__

    @property
    def weight(self) -> int:
        return max((t.weight for t in self.terms), default=0)

    def format(self, alphabet: Alphabet) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for tree, c in sorted(self.terms.items(), key=lambda kv: kv[0].key, reverse=True):
            body = tree.format(alphabet)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not tree.children and (len(tree.label.support()) > 1 or mag != 1 or body[0] == "-"):
                body = f"({body})"
            text = body if mag == 1 else f"{mag}*{body}"
            pieces.append((sign, text))
        first_sign, first = pieces[0]
        if first_sign == "-" and first[0] not in "(0123456789":
            # a bare leading "-A" would parse as the label -A
            first = f"({first})"
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"SymbolSum({len(self.terms)} terms, weight {self.weight})"


def format_label(h: Homomorphism, alphabet: Alphabet) -> str:
    parts = []
    for i, v in enumerate(h.values):
        if not v:
            continue
        name = alphabet.indicator_name(i)
        mag = abs(v)
        coef = "" if mag == 1 else str(mag)
        parts.append(("-" if v < 0 else "+", f"{coef}{name}"))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f"{sign}{body}"
    return text


def expand_multilinear(sigma: SymbolSum) -> SymbolSum:
    """Rewrite every label as a combination of indicators, expanding each tree."""
    out = SymbolSum()
    for tree, c in sigma:
        out = out + _expand_tree(tree) * c
    return out


def _expand_tree(tree: TreeSymbol) -> SymbolSum:
    m = len(tree.label)
    acc = SymbolSum(
        {TreeSymbol(Homomorphism.indicator(i, m)): v for i, v in enumerate(tree.label.values)}
    )
    for child in tree.children:
        acc = _attach_sums(_expand_tree(child), acc)
    return acc


def _attach_sums(branches: SymbolSum, roots: SymbolSum) -> SymbolSum:
    out: dict[TreeSymbol, Fraction] = {}
    for b, cb in branches:
        for r, cr in roots:
            t = r.attach(b)
            out[t] = out.get(t, Fraction(0)) + cb * cr
    return SymbolSum(out)


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[()|+\-*]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


class _SymbolParser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.tokens = _tokenize(text)
        self.pos = 0
        self.sign_hint = 1

    def peek(self, offset=0):
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, value):
        kind, tok = self.take()
        if tok != value:
            raise ParseError(f"expected {value!r} in {self.text!r}, got {tok!r}")

    def error(self, msg):
        raise ParseError(f"{msg} in {self.text!r}")

    def parse(self) -> SymbolSum:
        if not self.tokens:
            self.error("empty symbol")
        if self.tokens == [("num", "0")]:
            return SymbolSum()
        out = self.parse_sum()
        if self.pos != len(self.tokens):
            self.error(f"unexpected {self.peek()[1]!r}")
        return out

    def parse_sum(self) -> SymbolSum:
        total = SymbolSum()
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            if self._starts_atom():
                # a leading sign belongs to the first indicator of an atom
                self.sign_hint, sign = sign, 1
        while True:
            total = total + self.parse_term() * sign
            nxt = self.peek()[1]
            if nxt in ("+", "-"):
                self.take()
                sign = -1 if nxt == "-" else 1
                continue
            return total

    def parse_term(self) -> SymbolSum:
        kind, tok = self.peek()
        if kind == "num":
            # A number directly before a name belongs to the atom.
            if self._num_starts_tree(1):
                self.take()
                if self.peek()[1] == "*":
                    self.take()
                return self.parse_tree() * Fraction(tok)
        return self.parse_tree()

    def parse_tree(self) -> SymbolSum:
        groups: list[SymbolSum] = []
        root: SymbolSum | None = None
        while True:
            kind, tok = self.peek()
            if tok == "(":
                self.take()
                if self.peek()[1] == ")":
                    self.error("empty branch")
                inner = self.parse_sum()
                if self.peek()[1] == "|":
                    self.take()
                    rhs = self.parse_sum()
                    inner = _attach_sums(inner, rhs)
                if self.peek()[1] != ")":
                    self.error("unbalanced parentheses")
                self.take()
                groups.append(inner)
            elif tok in ("+", "-") and root is None and len(groups) > 1:
                # (x)(y)-A: with two or more branches a signed atom can only be the root
                self.take()
                if not self._starts_atom():
                    self.error("expected a root label")
                self.sign_hint = -1 if tok == "-" else 1
                root = self.parse_atom()
            elif kind in ("name", "num"):
                if root is not None:
                    self.error("more than one root label in a tree")
                root = self.parse_atom()
            else:
                break
        if root is None:
            if len(groups) != 1:
                self.error("missing root label" if groups else "expected a tree")
            return groups[0]
        acc = root
        for g in groups:
            acc = _attach_sums(g, acc)
        return acc

    def parse_atom(self) -> SymbolSum:
        m = len(self.alphabet)
        values = [Fraction(0)] * m
        sign, self.sign_hint = self.sign_hint, 1
        first = True
        while True:
            kind, tok = self.peek()
            coef = Fraction(1)
            if kind == "num":
                self.take()
                coef = Fraction(tok)
                if self.peek()[1] == "*":
                    self.take()
                kind, tok = self.peek()
            if kind != "name":
                if first:
                    self.error("expected an indicator name")
                self.error(f"expected an indicator name, got {tok!r}")
            self.take()
            values[self._indicator(tok)] += sign * coef
            first = False
            nxt = self.peek()
            after = self.peek(1)
            if nxt[1] in ("+", "-") and after[0] in ("name", "num") and not (
                after[0] == "num" and self._num_starts_tree(2)
            ):
                self.take()
                sign = -1 if nxt[1] == "-" else 1
                continue
            return SymbolSum.of(TreeSymbol(Homomorphism(values)))

    def _starts_atom(self) -> bool:
        kind = self.peek()[0]
        return kind == "name" or (kind == "num" and not self._num_starts_tree(1))

    def _num_starts_tree(self, offset) -> bool:
        t1 = self.peek(offset)[1]
        return t1 == "(" or (t1 == "*" and self.peek(offset + 1)[1] == "(")

    def _indicator(self, name: str) -> int:
        try:
            return self.alphabet.indicator_index(name)
        except ParseError:
            pass
        if name in self.alphabet.names:
            return self.alphabet.names.index(name)
        raise ParseError(f"unknown generator indicator {name!r} in {self.text!r}")


def parse_symbol(text: str, alphabet: Alphabet) -> SymbolSum:
    return _SymbolParser(text, alphabet).parse()


def indicator_tree(names: str | Iterable[str], alphabet: Alphabet) -> TreeSymbol:
    """Linear tree from indicator names listed leaf first, e.g. ``"ABC"``."""
    m = len(alphabet)
    labels = [Homomorphism.indicator(alphabet.indicator_index(n), m) for n in names]
    return TreeSymbol.from_chain(labels)
