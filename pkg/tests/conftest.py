import json
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from braidlink.symbols import TreeSymbol
from braidlink.words import Alphabet, Homomorphism, SignedLetter, Word, load_presentation, parse_word

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def frozen():
    return json.loads((HERE / "data" / "frozen.json").read_text())


@pytest.fixture
def rng():
    return random.Random(1729)


def ab():
    return Alphabet("ab")


def abc():
    return Alphabet("abc")


def word(text, alphabet=None):
    return parse_word(text, alphabet or Alphabet("abcd"))


def presentation(generators, *relations):
    return load_presentation({"generators": list(generators), "relations": list(relations)})


TORUS = presentation("ab", "a b a^-1 b^-1")
LITTLE = presentation("abc", "a b a^-1 c")
GENUS2 = presentation("abcd", "a b a^-1 b^-1 c d c^-1 d^-1")
TRIPLE = presentation("abc", "a b a^-1 b^-1 c b a b^-1 a^-1 c^-1")


def random_word(rng, m, length):
    return Word(SignedLetter(rng.randrange(m), rng.choice((1, -1))) for _ in range(length))


def random_tree(rng, m, n, indicator=True):
    if indicator:
        labels = [Homomorphism.indicator(rng.randrange(m), m) for _ in range(n)]
    else:
        labels = [Homomorphism(rng.randint(-2, 2) for _ in range(m)) for _ in range(n)]
    parent = [None] + [rng.randrange(i) for i in range(1, n)]

    def build(v):
        return TreeSymbol(labels[v], tuple(build(c) for c in range(n) if parent[c] == v))

    return build(0)


def to_oracle_tree(tree):
    return (list(tree.label.values), [to_oracle_tree(c) for c in tree.children])


def from_oracle_tree(data):
    label, children = data
    return TreeSymbol(Homomorphism(label), tuple(from_oracle_tree(c) for c in children))


def to_oracle_word(w):
    return [(l.generator, l.sign) for l in w]


def q(text):
    return Fraction(text)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
