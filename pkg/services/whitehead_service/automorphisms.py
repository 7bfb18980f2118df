"""
Whitehead automorphisms of F(a, b) and chains of them.

Type I moves permute the generators and possibly invert them. A type II
move has a multiplier m in {a, A, b, B}; it fixes m's own generator and
sends the other generator g to g (fix), g m (right), m^-1 g (left) or
m^-1 g m (conjugate). Leaving out the identity there are 7 + 12 = 19 moves,
always enumerated in the order of all_moves().
"""

from dataclasses import dataclass
from functools import cached_property
from typing import List, Tuple, Union

import numpy as np

from services.shared.errors import AlphabetMismatchError
from services.words_service.words import Alphabet, FreeWord, exponent_sums, substitute

RANK_TWO = Alphabet(2)

ACTIONS = ("right", "left", "conjugate")


@dataclass(frozen=True)
class WhiteheadAutomorphism:
    kind: str
    permutation: Tuple[int, int] = (1, 2)
    multiplier: int = 0
    action: str = "fix"

    @classmethod
    def type_one(cls, image_a: int, image_b: int) -> "WhiteheadAutomorphism":
        return cls("I", permutation=(image_a, image_b))

    @classmethod
    def type_two(cls, multiplier: int, action: str) -> "WhiteheadAutomorphism":
        return cls("II", multiplier=multiplier, action=action)

    @cached_property
    def images(self) -> Tuple[FreeWord, FreeWord]:
        if self.kind == "I":
            return tuple(FreeWord(RANK_TWO, (x,)) for x in self.permutation)
        m = self.multiplier
        other = 3 - abs(m)
        if self.action == "right":
            moved = (other, m)
        elif self.action == "left":
            moved = (-m, other)
        elif self.action == "conjugate":
            moved = (-m, other, m)
        else:
            moved = (other,)
        result = [None, None]
        result[abs(m) - 1] = FreeWord(RANK_TWO, (abs(m),))
        result[other - 1] = FreeWord(RANK_TWO, moved)
        return tuple(result)

    def inverse(self) -> "WhiteheadAutomorphism":
        if self.kind == "I":
            inv = [0, 0]
            for i, x in enumerate(self.permutation, start=1):
                inv[abs(x) - 1] = i if x > 0 else -i
            return WhiteheadAutomorphism.type_one(*inv)
        return WhiteheadAutomorphism.type_two(-self.multiplier, self.action)

    def apply(self, w: FreeWord) -> FreeWord:
        if w.alphabet != RANK_TWO:
            raise AlphabetMismatchError("Whitehead moves act on rank-2 words only")
        if self.kind == "I":
            table = {1: self.permutation[0], -1: -self.permutation[0],
                     2: self.permutation[1], -2: -self.permutation[1]}
            return FreeWord(RANK_TWO, tuple(map(table.__getitem__, w.letters)))
        return substitute(w, self.images)

    def describe(self) -> str:
        image_a, image_b = self.images
        return f"a->{image_a.text},b->{image_b.text}"

    def __str__(self) -> str:
        return self.describe()


def all_moves() -> List[WhiteheadAutomorphism]:
    return list(_ALL_MOVES)


def _enumerate() -> Tuple[WhiteheadAutomorphism, ...]:
    moves = []
    for image_a, image_b in ((1, -2), (-1, 2), (-1, -2),
                             (2, 1), (2, -1), (-2, 1), (-2, -1)):
        moves.append(WhiteheadAutomorphism.type_one(image_a, image_b))
    for multiplier in RANK_TWO.letters():
        for action in ACTIONS:
            moves.append(WhiteheadAutomorphism.type_two(multiplier, action))
    return tuple(moves)


_ALL_MOVES = _enumerate()


@dataclass(frozen=True)
class AutChain:
    """Moves applied left to right: the first move acts first"""
    moves: Tuple[WhiteheadAutomorphism, ...] = ()

    def __len__(self) -> int:
        return len(self.moves)

    def then(self, other: Union["AutChain", WhiteheadAutomorphism]) -> "AutChain":
        if isinstance(other, WhiteheadAutomorphism):
            return AutChain(self.moves + (other,))
        return AutChain(self.moves + other.moves)

    @cached_property
    def images(self) -> Tuple[FreeWord, FreeWord]:
        image_a, image_b = RANK_TWO.generators()
        for move in self.moves:
            image_a, image_b = move.apply(image_a), move.apply(image_b)
        return image_a, image_b

    def apply(self, w: FreeWord) -> FreeWord:
        if w.alphabet != RANK_TWO:
            raise AlphabetMismatchError("automorphism chains act on rank-2 words only")
        if not self.moves:
            return w
        return substitute(w, self.images)

    def inverse(self) -> "AutChain":
        return AutChain(tuple(move.inverse() for move in reversed(self.moves)))

    def abelianization(self) -> np.ndarray:
        """Integer matrix whose columns are the exponent vectors of the images of a and b"""
        return np.array([exponent_sums(image) for image in self.images], dtype=np.int64).T

    def describe(self) -> List[str]:
        return [move.describe() for move in self.moves]


def apply(aut: Union[WhiteheadAutomorphism, AutChain], w: FreeWord) -> FreeWord:
    return aut.apply(w)


def conjugation_chain(g: FreeWord) -> AutChain:
    """Chain realizing x -> g x g^-1"""
    # the conjugate move with multiplier m is x -> m^-1 x m, i.e. conjugation by m^-1
    return AutChain(tuple(WhiteheadAutomorphism.type_two(-letter, "conjugate")
                          for letter in reversed(g.letters)))


def random_chain(rng: np.random.Generator, length: int) -> AutChain:
    picks = rng.integers(0, len(_ALL_MOVES), size=length)
    return AutChain(tuple(_ALL_MOVES[int(i)] for i in picks))
