"""
Recursive-descent parser for the word grammar shared by every command:

    word := term+
    term := atom ('^' int)?
    atom := letter | '(' word ')' | '[' word ',' word ']'

Lowercase letters are generators, uppercase their inverses, '[u,v]' is
u v u^-1 v^-1 and whitespace is ignored. Exponents are applied to reduced
words, so "[a^8,b^8]^800" never materializes an unreduced expansion.
"""

from typing import List, Optional

from services.shared.errors import WordSyntaxError
from services.words_service.words import (
    SYMBOLS,
    Alphabet,
    FreeWord,
    commutator,
    power,
    push_reduced,
)


class WordParser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def parse(self) -> FreeWord:
        word = self._word()
        self._skip_ws()
        if self.pos < len(self.text):
            self._fail(f"unexpected {self.text[self.pos]!r}")
        return word

    def _fail(self, message: str, offset: Optional[int] = None):
        raise WordSyntaxError(message, self.pos if offset is None else offset)

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, char: str) -> None:
        if self._peek() != char:
            found = self._peek() or "end of input"
            self._fail(f"expected {char!r}, found {found!r}")
        self.pos += 1

    def _word(self) -> FreeWord:
        stack: List[int] = []
        terms = 0
        while True:
            char = self._peek()
            if not char or char in ")],":
                break
            push_reduced(stack, self._term().letters)
            terms += 1
        if not terms:
            self._fail("expected a word")
        return FreeWord(self.alphabet, tuple(stack))

    def _term(self) -> FreeWord:
        atom = self._atom()
        if self._peek() == "^":
            self.pos += 1
            atom = power(atom, self._int())
        return atom

    def _atom(self) -> FreeWord:
        char = self._peek()
        start = self.pos
        if char == "(":
            self.pos += 1
            inner = self._word()
            self._expect(")")
            return inner
        if char == "[":
            self.pos += 1
            left = self._word()
            self._expect(",")
            right = self._word()
            self._expect("]")
            return commutator(left, right)
        if char.isalpha() and char.lower() in SYMBOLS:
            index = SYMBOLS.index(char.lower()) + 1
            if index > self.alphabet.rank:
                self._fail(f"letter {char!r} outside rank-{self.alphabet.rank} alphabet", start)
            self.pos += 1
            return FreeWord(self.alphabet, (index if char.islower() else -index,))
        self._fail(f"unexpected {char!r}" if char else "unexpected end of input")

    def _int(self) -> int:
        self._skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self._fail("expected an integer exponent")
        value = int(self.text[start:self.pos])
        if value == 0:
            self._fail("exponent 0 is not allowed", start)
        return value


def parse_word(text: str, rank: int = 2) -> FreeWord:
    """Parse text over the rank-`rank` alphabet into a reduced FreeWord"""
    return WordParser(text, Alphabet(rank)).parse()


def parse_word_list(text: str, rank: int = 2) -> List[FreeWord]:
    """Comma-separated words at top level, e.g. "aa,b,[a,b]" """
    parts, depth, start = [], 0, 0
    for i, char in enumerate(text):
        if char in "([":
            depth += 1
        elif char in ")]":
            depth -= 1
        elif char == "," and depth == 0:
            parts.append((start, text[start:i]))
            start = i + 1
    parts.append((start, text[start:]))
    if len(parts) == 1 and not text.strip():
        return []
    words = []
    for offset, chunk in parts:
        if not chunk.strip():
            raise WordSyntaxError("empty generator", offset)
        try:
            words.append(parse_word(chunk, rank))
        except WordSyntaxError as e:
            raise WordSyntaxError(e.detail, offset + e.offset) from e
    return words
