from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from braidlink.errors import DimensionError, SemanticError
from braidlink.tensor import (
    TruncatedTensor,
    bch_of_word,
    commutator,
    dynkin,
    exp_tensor,
    is_primitive,
    log_grouplike,
    truncated_product,
    word_exponential,
)
from braidlink.words import Alphabet, free_reduce, parse_word

from conftest import random_word


def _coeffs(t, names):
    return {"".join(names[i] for i in mono): c for mono, c in t.items()}


def test_frozen_bch_against_sympy(frozen):
    for case in frozen["bch"]:
        names = "abc"[: case["m"]]
        w = parse_word(case["word"], Alphabet(names))
        t = bch_of_word(w, case["cutoff"])
        expected = {k: Fraction(v) for k, v in case["coefficients"].items()}
        assert _coeffs(t, names) == expected


def test_bch_two_letters_low_order():
    t = bch_of_word(parse_word("ab", Alphabet("ab")), 2)
    assert _coeffs(t, "ab") == {"a": 1, "b": 1, "ab": Fraction(1, 2), "ba": Fraction(-1, 2)}


def test_inverse_pair_has_zero_log():
    assert not bch_of_word(parse_word("a A", Alphabet("ab")), 5)


def test_commutator_log_starts_at_weight_two():
    t = bch_of_word(parse_word("abAB", Alphabet("ab")), 3)
    assert not t.homogeneous(1)
    assert _coeffs(t.homogeneous(2), "ab") == {"ab": 1, "ba": -1}


def test_exp_log_roundtrip(rng):
    for _ in range(20):
        g = word_exponential(random_word(rng, 2, rng.randint(0, 6)), 4)
        assert exp_tensor(log_grouplike(g)) == g


def test_log_needs_unit_constant():
    with pytest.raises(SemanticError):
        log_grouplike(TruncatedTensor(3, {(): 2}))
    with pytest.raises(SemanticError):
        exp_tensor(TruncatedTensor(3, {(): 1}))


def test_cutoff_mismatch():
    with pytest.raises(DimensionError):
        truncated_product(TruncatedTensor.unit(2), TruncatedTensor.unit(3))


def test_truncation_drops_high_terms():
    x = TruncatedTensor.generator(0, 2)
    assert truncated_product(truncated_product(x, x), x) == TruncatedTensor(2)


seeds = st.integers(0, 10**6)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_log_is_a_lie_element(seed):
    import random

    rng = random.Random(seed)
    w = random_word(rng, 3, rng.randint(0, 7))
    assert is_primitive(bch_of_word(w, 4))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_exponential_is_multiplicative(seed):
    import random

    rng = random.Random(seed)
    u, v = random_word(rng, 2, rng.randint(0, 5)), random_word(rng, 2, rng.randint(0, 5))
    assert word_exponential(u * v, 4) == truncated_product(word_exponential(u, 4), word_exponential(v, 4))


def test_reduction_invariance(rng):
    for _ in range(20):
        w = random_word(rng, 2, 6)
        assert bch_of_word(w, 4) == bch_of_word(free_reduce(w), 4)


def test_dynkin_on_brackets():
    x, y = TruncatedTensor.generator(0, 3), TruncatedTensor.generator(1, 3)
    p = commutator(commutator(x, y), y)
    assert dynkin(p) == p.scale(3)
    assert is_primitive(p)
    assert not is_primitive(truncated_product(x, y))
    assert not is_primitive(TruncatedTensor.unit(3))


def test_format_sorted_by_weight():
    t = bch_of_word(parse_word("ab", Alphabet("ab")), 2)
    assert list(t.format("ab")) == ["a", "b", "ab", "ba"]
    assert t.format("ab")["ba"] == "-1/2"
