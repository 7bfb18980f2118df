#!/usr/bin/env python3
"""
Tests for the free-word algebra, cross-checked against sympy's free groups
"""

import numpy as np
import pytest
from sympy.combinatorics.free_groups import free_group

from services.shared.errors import AlphabetMismatchError, IdentityWordError, MalformedWordError
from services.words_service.parser import parse_word
from services.words_service.words import (
    Alphabet,
    CyclicWord,
    FreeWord,
    commutator,
    conjugacy_equal,
    conjugate,
    cyclic_reduce,
    exponent_sums,
    inverse,
    is_proper_power,
    multiply,
    power,
    power_exponent,
    reduce,
    substitute,
)

F2 = Alphabet(2)
SYMPY_F, SYMPY_A, SYMPY_B = free_group("a, b")


def w(text, rank=2):
    return parse_word(text, rank)


def to_sympy(letters):
    element = SYMPY_F.identity
    for x in letters:
        gen = SYMPY_A if abs(x) == 1 else SYMPY_B
        element = element * (gen if x > 0 else gen ** -1)
    return element


def random_raw(rng, length):
    return [int(x) for x in rng.choice([1, -1, 2, -2], size=length)]


def test_reduce_examples():
    assert reduce([1, -1], F2).letters == ()
    assert reduce([1, 2, -2, -1], F2).letters == ()
    assert reduce([1, 1, 2, 2], F2).text == "aabb"


def test_reduce_rejects_letters_outside_alphabet():
    with pytest.raises(MalformedWordError):
        reduce([1, 3], F2)
    with pytest.raises(MalformedWordError):
        reduce([0], F2)


def test_reduce_is_idempotent():
    rng = np.random.default_rng(1)
    for _ in range(200):
        once = reduce(random_raw(rng, 20), F2)
        assert reduce(once.letters, F2) == once


def test_reduce_matches_sympy():
    rng = np.random.default_rng(2)
    for _ in range(300):
        raw = random_raw(rng, int(rng.integers(0, 30)))
        ours = reduce(raw, F2)
        assert to_sympy(ours.letters) == to_sympy(raw)
        assert len(ours) == len(to_sympy(raw))


def test_multiply_matches_sympy():
    rng = np.random.default_rng(3)
    for _ in range(200):
        u = reduce(random_raw(rng, 12), F2)
        v = reduce(random_raw(rng, 12), F2)
        assert to_sympy(multiply(u, v).letters) == to_sympy(u.letters) * to_sympy(v.letters)


def test_group_operations():
    assert multiply(w("ab"), w("BA")).letters == ()
    assert inverse(w("ab")).text == "BA"
    assert conjugate(w("b"), w("a")).text == "abA"
    assert commutator(w("a"), w("b")).text == "abAB"
    assert (w("ab") * ~w("ab")).is_identity()


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatchError):
        multiply(w("a"), w("c", rank=3))


def test_long_cancellation():
    u = power(w("abAb"), 500)
    assert multiply(u, inverse(u)).letters == ()
    assert len(multiply(multiply(u, w("a")), inverse(u))) == 4001
    assert multiply(inverse(u), multiply(w("a"), u)) == conjugate(w("a"), inverse(u))
    assert multiply(multiply(inverse(u), u), w("a")).text == "a"


def test_cyclic_reduce_examples():
    core, conjugator = cyclic_reduce(w("Bab"))
    assert core.word().text == "a"
    assert conjugator.text == "B"

    core, conjugator = cyclic_reduce(w("abAB"))
    assert core.word().text == "abAB"
    assert conjugator.letters == ()


def test_cyclic_reduce_recomposes():
    rng = np.random.default_rng(4)
    for _ in range(200):
        u = reduce(random_raw(rng, 15), F2)
        core, conjugator = cyclic_reduce(u)
        assert conjugate(core.word(), conjugator) == u
        if len(core) > 1:
            assert core.letters[0] != -core.letters[-1]


def test_cyclic_word_equality_is_rotation():
    assert CyclicWord(F2, (1, 2, -1, -2)) == CyclicWord(F2, (2, -1, -2, 1))
    assert CyclicWord(F2, (1, 2, -1, -2)) != CyclicWord(F2, (2, 1, -2, -1))
    assert len({CyclicWord(F2, (1, 1, 2)), CyclicWord(F2, (1, 2, 1)), CyclicWord(F2, (2, 1, 1))}) == 1


def test_power():
    assert power(w("ab"), 3).text == "ababab"
    assert power(w("ab"), -2).text == "BABA"
    assert power(w("ab"), 0).letters == ()
    assert power(w("Bab"), 4).text == "Baaaab"


def test_is_proper_power():
    root, k = is_proper_power(w("abab"))
    assert (root.text, k) == ("ab", 2)
    root, k = is_proper_power(w("Baaab"))
    assert (root.text, k) == ("Bab", 3)
    assert is_proper_power(w("aab")) is None
    assert is_proper_power(w("abAB")) is None
    with pytest.raises(IdentityWordError):
        is_proper_power(F2.identity())


def test_power_exponent():
    assert power_exponent(w("Baaab"), w("Bab")) == 3
    assert power_exponent(w("BAAAb"), w("Bab")) == -3
    assert power_exponent(w("ab"), w("a")) is None
    assert power_exponent(F2.identity(), w("ab")) == 0


def test_exponent_sums():
    assert exponent_sums(w("abAB")) == (0, 0)
    assert exponent_sums(w("aaabB")) == (3, 0)
    assert exponent_sums(w("c", rank=3)) == (0, 0, 1)


def test_substitute_examples():
    assert substitute(w("abAB"), [w("a"), w("b")]).text == "abAB"
    assert substitute(w("abAB"), [w("cc", 3), w("ccccc", 3)]).letters == ()
    assert substitute(w("ab"), [w("b"), w("a")]).text == "ba"


def test_substitute_matches_sympy():
    rng = np.random.default_rng(5)
    for _ in range(100):
        u = reduce(random_raw(rng, 10), F2)
        images = [reduce(random_raw(rng, 6), F2) for _ in range(2)]
        product = SYMPY_F.identity
        for x in u.letters:
            image = to_sympy(images[abs(x) - 1].letters)
            product = product * (image if x > 0 else image ** -1)
        assert to_sympy(substitute(u, images).letters) == product


def test_substitute_with_shared_conjugator():
    g = w("abb")
    images = [conjugate(w("a"), g), conjugate(w("bab"), g)]
    u = w("aabAB")
    assert substitute(u, images) == conjugate(substitute(u, [w("a"), w("bab")]), g)


def test_substitute_rank_check():
    with pytest.raises(Exception):
        substitute(w("ab"), [w("a")])


def test_conjugacy_equal():
    assert conjugacy_equal(w("abAB"), w("bABa"))
    assert conjugacy_equal(w("Bab"), w("a"))
    assert not conjugacy_equal(w("ab"), w("ba") * w("a"))
    assert not conjugacy_equal(w("abAB"), w("baBA"))


def test_text_and_compact_rendering():
    u = w("a^3 B^2 a")
    assert u.text == "aaaBBa"
    assert u.compact() == "a^3B^2a"
    assert str(u) == "aaaBBa"
    assert FreeWord(F2, ()).text == ""
