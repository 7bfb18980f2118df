"""
The double G_w = A *_C B of F(a, b) along <w>.

Both copies live in one rank-4 alphabet: the A side is spelled with a, b
and the B side with c, d, so w_A = w(a, b) and w_B = w(c, d).
"""

from dataclasses import dataclass

from services.shared.errors import AlphabetMismatchError, IdentityWordError
from services.words_service.words import (
    Alphabet,
    CyclicWord,
    FreeWord,
    cyclic_reduce,
    substitute,
)

DOUBLE_ALPHABET = Alphabet(4)

_SIDE_IMAGES = {
    "A": (FreeWord(DOUBLE_ALPHABET, (1,)), FreeWord(DOUBLE_ALPHABET, (2,))),
    "B": (FreeWord(DOUBLE_ALPHABET, (3,)), FreeWord(DOUBLE_ALPHABET, (4,))),
}


def side_word(u: FreeWord, side: str) -> FreeWord:
    """Copy of a rank-2 word into side A or side B"""
    return substitute(u, _SIDE_IMAGES[side])


@dataclass(frozen=True)
class DoubleGroup:
    w: FreeWord
    core: CyclicWord
    conjugator: FreeWord

    @classmethod
    def of(cls, w: FreeWord) -> "DoubleGroup":
        if w.alphabet.rank != 2:
            raise AlphabetMismatchError("doubles are built over rank-2 words")
        if not w.letters:
            raise IdentityWordError("the double along the identity is not defined")
        core, conjugator = cyclic_reduce(w)
        return cls(w, core, conjugator)

    @property
    def w_a(self) -> FreeWord:
        return side_word(self.w, "A")

    @property
    def w_b(self) -> FreeWord:
        return side_word(self.w, "B")

    def side_generators(self, side: str):
        return _SIDE_IMAGES[side]
