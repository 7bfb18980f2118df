#!/usr/bin/env python3
"""
Tests for the Ivanov word, its block-wise evaluation and the verification suites
"""

import numpy as np
import pytest

from services.ivanov_service.ivanov import (
    DEFAULT_SPEC,
    IvanovSpec,
    conjugating_power,
    evaluate_word,
    ivanov_word,
)
from services.ivanov_service import suites
from services.ivanov_service.suites import (
    SUITES,
    ctest_conjugacy_detection,
    ctest_cyclic_null,
    ctest_noncyclic_nonnull,
    random_noncommuting_pair,
    random_word,
    run_suites,
    stabilizer_probe,
    word_properties,
)
from services.shared.errors import FreeGroupError
from services.whitehead_service.automorphisms import RANK_TWO
from services.words_service.parser import parse_word
from services.words_service.words import (
    commutator,
    conjugate,
    cyclic_reduce,
    exponent_sums,
    is_proper_power,
    power,
    substitute,
)

SMALL_SPEC = IvanovSpec(base_exponent=2, block_exponents=(1, 2, 3, 4, 5, 6, 7, 8))


def w(text):
    return parse_word(text)


class TestWord:
    def test_length_and_ends(self):
        u = ivanov_word()
        assert len(u) == 115200
        assert DEFAULT_SPEC.unreduced_length() == 115208
        assert u.text[0] == "a"
        assert u.text[-1] == "B"

    def test_structure(self):
        u = ivanov_word()
        assert exponent_sums(u) == (0, 0)
        assert is_proper_power(u) is None
        core, conjugator = cyclic_reduce(u)
        assert len(core) == len(u)
        assert not conjugator.letters

    def test_matches_the_grammar(self):
        text = "".join(f"[a^8,b^8]^{e} {s}" for e, s in zip(DEFAULT_SPEC.block_exponents, "aaAAbbBB"))
        assert parse_word(text) == ivanov_word()

    def test_word_properties_suite(self):
        report = word_properties()
        assert report.failures == 0
        assert report.samples == 4

    def test_spec_shape_is_checked(self):
        with pytest.raises(FreeGroupError):
            IvanovSpec(block_exponents=(1, 2))


class TestEvaluation:
    def test_blockwise_matches_substitution(self):
        rng = np.random.default_rng(31)
        u = SMALL_SPEC.word()
        for _ in range(20):
            pair = (random_word(rng, 4), random_word(rng, 4))
            assert SMALL_SPEC.evaluate(pair) == substitute(u, pair)

    def test_identity_images(self):
        assert evaluate_word(ivanov_word(), RANK_TWO.generators()) == ivanov_word()

    def test_swapped_images_differ(self):
        a, b = RANK_TWO.generators()
        assert evaluate_word(ivanov_word(), (b, a)) != ivanov_word()

    def test_commuting_images_vanish(self):
        c = w("abA")
        assert not DEFAULT_SPEC.evaluate((power(c, 2), power(c, -3))).letters

    def test_other_alphabets(self):
        images = (parse_word("c", 3), parse_word("a", 3))
        value = SMALL_SPEC.evaluate(images)
        assert value.alphabet.rank == 3
        assert value.letters

    def test_evaluate_word_falls_back_to_substitution(self):
        assert evaluate_word(w("abAB"), (w("aa"), w("b"))).text == "aabAAB"

    def test_image_count(self):
        with pytest.raises(FreeGroupError):
            DEFAULT_SPEC.evaluate((w("a"),))


class TestConjugatingPower:
    def test_recovers_power(self):
        base = w("abAB")
        source = (w("a"), w("b"))
        for k in (0, 1, -1, 3, -2):
            s = power(base, k)
            target = tuple(conjugate(u, s) for u in source)
            assert conjugating_power(source, target, base, 3) == k

    def test_outside_bound(self):
        base = w("ab")
        source = (w("a"), w("b"))
        target = tuple(conjugate(u, power(base, 4)) for u in source)
        assert conjugating_power(source, target, base, 3) is None

    def test_size_mismatch(self):
        with pytest.raises(FreeGroupError):
            conjugating_power((w("a"),), (w("a"), w("b")), w("ab"), 1)


class TestSuites:
    def test_random_words_are_reduced(self):
        rng = np.random.default_rng(32)
        for _ in range(100):
            u = random_word(rng, 6)
            assert 1 <= len(u) <= 6
            assert all(x != -y for x, y in zip(u.letters, u.letters[1:]))
        first, second = random_noncommuting_pair(rng, 3)
        assert commutator(first, second).letters

    def test_cyclic_null(self):
        report = ctest_cyclic_null(samples=5, seed=1, max_len=3)
        assert (report.suite, report.samples, report.failures) == ("cyclic", 5, 0)

    def test_noncyclic_nonnull(self):
        report = ctest_noncyclic_nonnull(samples=3, seed=2, max_len=2)
        assert report.failures == 0
        assert report.passed == 3

    def test_conjugacy_detection(self):
        constructed, independent = ctest_conjugacy_detection(samples=2, seed=3, max_len=1)
        assert constructed.suite == "ctest-constructed"
        assert independent.suite == "ctest-independent"
        assert constructed.failures == 0
        assert independent.failures == 0

    def test_stabilizer_probe(self):
        report = stabilizer_probe()
        assert report.samples == 20
        assert report.failures == 0

    def test_run_single_suite(self):
        report = run_suites("cyclic", samples=4, seed=5)
        assert [s.suite for s in report.suites] == ["cyclic"]
        assert report.failures == 0
        assert report.seed == 5

    def test_suites_are_seeded(self):
        first = ctest_cyclic_null(samples=3, seed=9, max_len=3)
        second = ctest_cyclic_null(samples=3, seed=9, max_len=3)
        assert first == second

    def test_suite_names(self):
        assert SUITES == ("word", "cyclic", "noncyclic", "ctest", "stabilizer")

    def test_max_len_reaches_every_sampled_suite(self, monkeypatch):
        seen = {}

        def recorder(name, result):
            def run(samples, seed, max_len=None):
                seen[name] = max_len
                return result
            return run

        report = ctest_cyclic_null(samples=1, seed=0, max_len=1)
        monkeypatch.setattr(suites, "ctest_cyclic_null", recorder("cyclic", report))
        monkeypatch.setattr(suites, "ctest_noncyclic_nonnull", recorder("noncyclic", report))
        monkeypatch.setattr(suites, "ctest_conjugacy_detection", recorder("ctest", (report, report)))
        run_suites("all", samples=1, seed=0, max_len=3)
        assert seen == {"cyclic": 3, "noncyclic": 3, "ctest": 3}

    def test_cyclic_null_at_full_scale(self):
        report = ctest_cyclic_null(samples=200, seed=11, max_len=4)
        assert report.samples == 200
        assert report.failures == 0
