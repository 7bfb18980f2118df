"""
Seeded verification suites for the Ivanov word.

Each suite draws from its own numpy Generator seeded with the requested
seed, so a suite gives the same report whether it runs alone or as part
of "all".
"""

from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from services.ivanov_service.ivanov import (
    DEFAULT_SPEC,
    conjugating_power,
    ivanov_word,
)
from services.shared.config import config
from services.shared.logs import get_logger
from services.shared.models import SuiteReport, VerifyReport
from services.whitehead_service.automorphisms import RANK_TWO, all_moves
from services.whitehead_service.orbits import in_proper_free_factor
from services.words_service.words import (
    Alphabet,
    FreeWord,
    commutator,
    conjugate,
    cyclic_reduce,
    exponent_sums,
    is_proper_power,
    power,
)

logger = get_logger(__name__)

SUITES = ("word", "cyclic", "noncyclic", "ctest", "stabilizer")

# failing samples listed in a report
_REPORTED = 10

# longest root c in the cyclic suite
_CYCLIC_MAX_LEN = 10

Pair = Tuple[FreeWord, FreeWord]


def random_word(rng: np.random.Generator, max_len: int,
                alphabet: Alphabet = RANK_TWO, min_len: int = 1) -> FreeWord:
    """Uniform length in [min_len, max_len], then a uniform reduced word of that length"""
    length = int(rng.integers(min_len, max_len + 1))
    letters = alphabet.letters()
    out: List[int] = []
    for _ in range(length):
        choices = [x for x in letters if not out or x != -out[-1]]
        out.append(int(choices[int(rng.integers(0, len(choices)))]))
    return FreeWord(alphabet, tuple(out))


def random_noncommuting_pair(rng: np.random.Generator, max_len: int) -> Pair:
    while True:
        first, second = random_word(rng, max_len), random_word(rng, max_len)
        if commutator(first, second).letters:
            return first, second


def _nonzero(rng: np.random.Generator, low: int, high: int) -> int:
    while True:
        value = int(rng.integers(low, high + 1))
        if value:
            return value


def _pair_text(pair: Pair) -> str:
    return f"({pair[0].text}, {pair[1].text})"


def _report(suite: str, samples: int, seed: int, failed: List[str]) -> SuiteReport:
    report = SuiteReport(
        suite=suite,
        samples=samples,
        seed=seed,
        passed=samples - len(failed),
        failures=len(failed),
        failed_samples=failed[:_REPORTED],
    )
    log = logger.warning if failed else logger.info
    log(f"{suite}: {report.passed}/{samples} passed (seed {seed})")
    return report


def word_properties(seed: int = 0) -> SuiteReport:
    """Exponent sums, root, cyclic reduction and free-factor checks on w itself"""
    w = ivanov_word()
    core, _ = cyclic_reduce(w)
    checks = {
        "exponent sums (0, 0)": exponent_sums(w) == (0, 0),
        "not a proper power": is_proper_power(w) is None,
        "cyclically reduced": len(core) == len(w),
        "in no proper free factor": not in_proper_free_factor(w),
    }
    failed = [name for name, ok in checks.items() if not ok]
    return _report("word", len(checks), seed, failed)


def ctest_cyclic_null(samples: int, seed: int, max_len: Optional[int] = None) -> SuiteReport:
    """Images c^p, c^q commute, so every commutator block and w itself vanish"""
    max_len = max_len or _CYCLIC_MAX_LEN
    rng = np.random.default_rng(seed)
    failed = []
    for _ in range(samples):
        c = random_word(rng, max_len)
        pair = (power(c, _nonzero(rng, -5, 5)), power(c, _nonzero(rng, -5, 5)))
        if DEFAULT_SPEC.evaluate(pair).letters:
            failed.append(_pair_text(pair))
    return _report("cyclic", samples, seed, failed)


def ctest_noncyclic_nonnull(samples: int, seed: int, max_len: Optional[int] = None) -> SuiteReport:
    max_len = max_len or config.IVANOV_MAX_LEN
    rng = np.random.default_rng(seed)
    failed = []
    for _ in range(samples):
        pair = random_noncommuting_pair(rng, max_len)
        if not DEFAULT_SPEC.evaluate(pair).letters:
            failed.append(_pair_text(pair))
    return _report("noncyclic", samples, seed, failed)


def ctest_conjugacy_detection(samples: int, seed: int,
                              max_len: Optional[int] = None) -> Tuple[SuiteReport, SuiteReport]:
    """
    Constructed pairs B = S A S^-1 with S = w(A)^k must give w(A) = w(B) and
    a recoverable power of w(A); independent pairs may only agree on w when
    such a conjugating power exists.
    """
    max_len = max_len or config.CONJUGACY_MAX_LEN
    rng = np.random.default_rng(seed)

    constructed_failed = []
    for _ in range(samples):
        first = random_noncommuting_pair(rng, max_len)
        value = DEFAULT_SPEC.evaluate(first)
        k = int(rng.integers(-2, 3))
        s = power(value, k)
        second = (conjugate(first[0], s), conjugate(first[1], s))
        equal = DEFAULT_SPEC.evaluate(second) == value
        recovered = conjugating_power(first, second, value, 2) if equal else None
        if recovered != k:
            constructed_failed.append(f"{_pair_text(first)} k={k}")

    independent_failed = []
    for _ in range(samples):
        first = random_noncommuting_pair(rng, max_len)
        second = random_noncommuting_pair(rng, max_len)
        value = DEFAULT_SPEC.evaluate(first)
        if DEFAULT_SPEC.evaluate(second) != value:
            continue
        if conjugating_power(first, second, value, config.MR_K_BOUND) is None:
            independent_failed.append(f"{_pair_text(first)} vs {_pair_text(second)}")

    return (_report("ctest-constructed", samples, seed, constructed_failed),
            _report("ctest-independent", samples, seed, independent_failed))


def stabilizer_probe(seed: int = 0) -> SuiteReport:
    """c_w fixes w; no single Whitehead move does"""
    w = ivanov_word()
    failed = []
    if conjugate(w, w) != w:
        failed.append("c_w")
    moves = all_moves()
    for move in moves:
        if move.apply(w) == w:
            failed.append(move.describe())
    return _report("stabilizer", len(moves) + 1, seed, failed)


def run_suites(suite: str, samples: int, seed: int, max_len: Optional[int] = None) -> VerifyReport:
    selected = SUITES if suite == "all" else (suite,)
    runners: Dict[str, Callable[[], List[SuiteReport]]] = {
        "word": lambda: [word_properties(seed)],
        "cyclic": lambda: [ctest_cyclic_null(samples, seed, max_len)],
        "noncyclic": lambda: [ctest_noncyclic_nonnull(samples, seed, max_len)],
        "ctest": lambda: list(ctest_conjugacy_detection(samples, seed, max_len)),
        "stabilizer": lambda: [stabilizer_probe(seed)],
    }
    reports: List[SuiteReport] = []
    for name in selected:
        reports.extend(runners[name]())
    return VerifyReport(seed=seed, suites=reports, failures=sum(r.failures for r in reports))
