#!/usr/bin/env python3
"""
Tests for the word grammar
"""

import numpy as np
import pytest

from services.shared.errors import WordSyntaxError
from services.words_service.parser import parse_word, parse_word_list
from services.words_service.words import Alphabet, FreeWord, reduce


def test_commutator_sugar():
    assert parse_word("[a,b]").text == "abAB"
    assert parse_word("[a^8, b^8]").text == "a" * 8 + "b" * 8 + "A" * 8 + "B" * 8


def test_exponents():
    assert parse_word("a^3 b^-2").text == "aaaBB"
    assert parse_word("(ab)^2").text == "abab"
    assert parse_word("(ab)^-1").text == "BA"
    assert parse_word("a^+2").text == "aa"


def test_reduction_after_expansion():
    assert parse_word("aA").letters == ()
    assert parse_word("ab (ab)^-1").letters == ()
    assert parse_word("[a,a]").letters == ()


def test_whitespace_ignored():
    assert parse_word("  a b\tA ") == parse_word("abA")


def test_nested_powers():
    assert len(parse_word("[a^8,b^8]^800")) == 32 * 800


@pytest.mark.parametrize("text, offset", [
    ("a^0", 2),
    ("a^", 2),
    ("ab)", 2),
    ("(ab", 3),
    ("[a b]", 4),
    ("a?", 1),
    ("", 0),
])
def test_syntax_errors_carry_offset(text, offset):
    with pytest.raises(WordSyntaxError) as info:
        parse_word(text)
    assert info.value.offset == offset


def test_exponent_zero_message():
    with pytest.raises(WordSyntaxError, match="exponent 0"):
        parse_word("b^0")


def test_letter_outside_rank():
    with pytest.raises(WordSyntaxError) as info:
        parse_word("abc")
    assert info.value.offset == 2
    assert parse_word("abc", rank=3).letters == (1, 2, 3)


def test_word_list():
    words = parse_word_list("aaa, bb,[a,b]")
    assert [u.text for u in words] == ["aaa", "bb", "abAB"]
    assert parse_word_list("  ") == []


def test_word_list_errors_are_offset_into_the_whole_text():
    with pytest.raises(WordSyntaxError) as info:
        parse_word_list("a,,b")
    assert info.value.offset == 2
    with pytest.raises(WordSyntaxError) as info:
        parse_word_list("aa,b^0")
    assert info.value.offset == 5


def test_round_trip_of_canonical_text():
    rng = np.random.default_rng(11)
    alphabet = Alphabet(2)
    for _ in range(200):
        raw = [int(x) for x in rng.choice([1, -1, 2, -2], size=int(rng.integers(1, 25)))]
        u = reduce(raw, alphabet)
        if not u.letters:
            continue
        assert parse_word(u.text) == u
        assert parse_word(u.compact()) == u


def test_parse_returns_free_word():
    assert isinstance(parse_word("a"), FreeWord)
