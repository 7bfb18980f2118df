"""
The rank-2 Ivanov word

    w = C^100 a C^200 a C^300 A C^400 A C^500 b C^600 b C^700 B C^800 B,
    C = [a^8, b^8]

and its evaluation on pairs of images, done block by block so that the
expansion of w(images) is never formed letter by letter.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple

from services.shared.errors import FreeGroupError
from services.shared.logs import get_logger
from services.whitehead_service.automorphisms import RANK_TWO
from services.words_service.words import (
    FreeWord,
    common_conjugator,
    commutator,
    conjugate,
    power,
    push_reduced,
    substitute,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class IvanovSpec:
    base_exponent: int = 8
    block_exponents: Tuple[int, ...] = (100, 200, 300, 400, 500, 600, 700, 800)
    letters: Tuple[int, ...] = (1, 1, -1, -1, 2, 2, -2, -2)

    def __post_init__(self):
        if len(self.block_exponents) != len(self.letters):
            raise FreeGroupError("every commutator block needs an interleaved letter")

    def commutator_block(self, images: Sequence[FreeWord]) -> FreeWord:
        x, y = images
        return commutator(power(x, self.base_exponent), power(y, self.base_exponent))

    def evaluate(self, images: Sequence[FreeWord]) -> FreeWord:
        """w(images) for a pair of images over any alphabet"""
        if len(images) != 2:
            raise FreeGroupError(f"expected 2 images, got {len(images)}")
        alphabet = images[0].alphabet
        outer = common_conjugator(images)
        if outer:
            size = len(outer)
            inner = [FreeWord(alphabet, u.letters[size:len(u.letters) - size]) for u in images]
            return conjugate(self.evaluate(inner), FreeWord(alphabet, outer))
        block = self.commutator_block(images)
        inverses = [power(u, -1) for u in images]
        stack = []
        for exponent, letter in zip(self.block_exponents, self.letters):
            push_reduced(stack, power(block, exponent).letters)
            image = images[letter - 1] if letter > 0 else inverses[-letter - 1]
            push_reduced(stack, image.letters)
        return FreeWord(alphabet, tuple(stack))

    def unreduced_length(self) -> int:
        return sum(self.block_exponents) * 4 * self.base_exponent + len(self.letters)

    def word(self) -> FreeWord:
        return self.evaluate(RANK_TWO.generators())


DEFAULT_SPEC = IvanovSpec()


@lru_cache(maxsize=4)
def _cached_word(spec: IvanovSpec) -> FreeWord:
    w = spec.word()
    logger.debug(f"Ivanov word: {len(w)} letters ({spec.unreduced_length()} before reduction)")
    return w


def ivanov_word(spec: Optional[IvanovSpec] = None) -> FreeWord:
    return _cached_word(spec or DEFAULT_SPEC)


def evaluate_word(w: FreeWord, images: Sequence[FreeWord]) -> FreeWord:
    """w(images), block-wise when w is the default Ivanov word"""
    if len(w) == len(ivanov_word()) and w == ivanov_word():
        return DEFAULT_SPEC.evaluate(images)
    return substitute(w, images)


def conjugating_power(source: Sequence[FreeWord], target: Sequence[FreeWord],
                      base: FreeWord, bound: int) -> Optional[int]:
    """k with target_i = base^k source_i base^-k for every i, scanning 0, 1, -1, 2, ..."""
    if len(source) != len(target):
        raise FreeGroupError("source and target tuples differ in size")
    for step in range(2 * bound + 1):
        k = (step + 1) // 2 if step % 2 else -(step // 2)
        s = power(base, k)
        s_inv = power(s, -1)
        if all((s * u) * s_inv == v for u, v in zip(source, target)):
            return k
    return None
