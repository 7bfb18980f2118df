"""
Free-word algebra over a free group of fixed finite rank.

Letters are small signed integers: generator i is +i, its inverse is -i.
Words are immutable tuples that are always freely reduced; build them with
reduce() (or the parser) rather than calling the constructor directly.
"""

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from services.shared.errors import (
    AlphabetMismatchError,
    FreeGroupError,
    IdentityWordError,
    MalformedWordError,
)

SYMBOLS = "abcdefghijklmnopqrstuvwxyz"

# below this many letters a plain Python scan beats building numpy arrays
_SCAN_CHUNK = 64


@dataclass(frozen=True)
class Alphabet:
    """Generators x_1..x_rank, printed a, b, c, ... and A, B, C, ... for inverses"""
    rank: int

    def __post_init__(self):
        if not 1 <= self.rank <= len(SYMBOLS):
            raise MalformedWordError(f"rank must lie in 1..{len(SYMBOLS)}, got {self.rank}")

    def letters(self) -> Tuple[int, ...]:
        """All signed letters in enumeration order a, A, b, B, ..."""
        return tuple(itertools.chain.from_iterable((i, -i) for i in range(1, self.rank + 1)))

    def symbol(self, letter: int) -> str:
        if letter == 0 or abs(letter) > self.rank:
            raise MalformedWordError(f"letter {letter} outside rank-{self.rank} alphabet")
        char = SYMBOLS[abs(letter) - 1]
        return char if letter > 0 else char.upper()

    def letter(self, symbol: str) -> int:
        index = SYMBOLS.find(symbol.lower()) + 1
        if index == 0 or index > self.rank:
            raise MalformedWordError(f"symbol {symbol!r} outside rank-{self.rank} alphabet")
        return index if symbol.islower() else -index

    def identity(self) -> "FreeWord":
        return FreeWord(self, ())

    def generators(self) -> List["FreeWord"]:
        return [FreeWord(self, (i,)) for i in range(1, self.rank + 1)]


_SYMBOL_TABLE: Dict[int, str] = {}
for _i, _c in enumerate(SYMBOLS, start=1):
    _SYMBOL_TABLE[_i] = _c
    _SYMBOL_TABLE[-_i] = _c.upper()


def letter_order(letter: int) -> int:
    """Total order a < A < b < B < ... used for every lexicographic choice"""
    return 2 * abs(letter) - (1 if letter > 0 else 0)


def render(letters: Iterable[int]) -> str:
    return "".join(map(_SYMBOL_TABLE.__getitem__, letters))


def render_compact(letters: Sequence[int]) -> str:
    parts = []
    for letter, run in itertools.groupby(letters):
        count = sum(1 for _ in run)
        symbol = _SYMBOL_TABLE[letter]
        parts.append(symbol if count == 1 else f"{symbol}^{count}")
    return "".join(parts)


@dataclass(frozen=True)
class FreeWord:
    alphabet: Alphabet
    letters: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        shown = self.text if len(self.letters) <= 40 else self.text[:37] + "..."
        return f"FreeWord({shown!r}, rank={self.alphabet.rank})"

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return multiply(self, other)

    def __invert__(self) -> "FreeWord":
        return inverse(self)

    def __pow__(self, k: int) -> "FreeWord":
        return power(self, k)

    @property
    def text(self) -> str:
        return render(self.letters)

    def compact(self) -> str:
        return render_compact(self.letters)

    def is_identity(self) -> bool:
        return not self.letters


@dataclass(frozen=True, eq=False)
class CyclicWord:
    """A cyclically reduced word considered up to rotation"""
    alphabet: Alphabet
    letters: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return self.alphabet == other.alphabet and self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash((self.alphabet, self.canonical))

    def __str__(self) -> str:
        return render(self.letters)

    @cached_property
    def canonical(self) -> Tuple[int, ...]:
        """Least rotation under letter_order"""
        start = least_rotation(self.letters)
        return self.letters[start:] + self.letters[:start]

    def word(self) -> FreeWord:
        return FreeWord(self.alphabet, self.letters)

    def inverse(self) -> "CyclicWord":
        return CyclicWord(self.alphabet, _negate_reversed(self.letters))


def least_rotation(letters: Sequence[int]) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation"""
    keys = [letter_order(x) for x in letters]
    n = len(keys)
    if n == 0:
        return 0
    doubled = keys + keys
    failure = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        current = doubled[j]
        i = failure[j - k - 1]
        while i != -1 and current != doubled[k + i + 1]:
            if current < doubled[k + i + 1]:
                k = j - i - 1
            i = failure[i]
        if current != doubled[k + i + 1]:
            if current < doubled[k]:
                k = j
            failure[j - k] = -1
        else:
            failure[j - k] = i + 1
    return k % n


def _negate_reversed(letters: Tuple[int, ...]) -> Tuple[int, ...]:
    if len(letters) > _SCAN_CHUNK:
        return tuple((-np.asarray(letters[::-1], dtype=np.int64)).tolist())
    return tuple(-x for x in reversed(letters))


def _cancellation_length(u: Sequence[int], v: Sequence[int]) -> int:
    """Number of letters that cancel when u is followed by v"""
    limit = min(len(u), len(v))
    n = len(u)
    k = 0
    stop = min(limit, _SCAN_CHUNK)
    while k < stop:
        if u[n - 1 - k] != -v[k]:
            return k
        k += 1
    chunk = _SCAN_CHUNK
    while k < limit:
        end = min(limit, k + chunk)
        tail = np.asarray(u[n - end:n - k][::-1], dtype=np.int64)
        head = np.asarray(v[k:end], dtype=np.int64)
        mismatch = np.flatnonzero(tail + head)
        if mismatch.size:
            return k + int(mismatch[0])
        k = end
        chunk *= 2
    return k


def common_prefix_length(u: Sequence[int], v: Sequence[int]) -> int:
    limit = min(len(u), len(v))
    k = 0
    stop = min(limit, _SCAN_CHUNK)
    while k < stop:
        if u[k] != v[k]:
            return k
        k += 1
    if k < limit:
        mismatch = np.flatnonzero(np.asarray(u[k:limit]) != np.asarray(v[k:limit]))
        return k + int(mismatch[0]) if mismatch.size else limit
    return k


def join(u: Tuple[int, ...], v: Tuple[int, ...]) -> Tuple[int, ...]:
    """Concatenate two reduced letter tuples and cancel at the junction"""
    k = _cancellation_length(u, v)
    if k == 0:
        return u + v
    return u[:len(u) - k] + v[k:]


def push_reduced(stack: List[int], piece: Sequence[int]) -> None:
    k = 0
    size = len(piece)
    while k < size and stack and stack[-1] == -piece[k]:
        stack.pop()
        k += 1
    if k:
        stack.extend(piece[k:])
    else:
        stack.extend(piece)


def _check_alphabet(*words: FreeWord) -> Alphabet:
    alphabet = words[0].alphabet
    for other in words[1:]:
        if other.alphabet != alphabet:
            raise AlphabetMismatchError(
                f"rank-{alphabet.rank} and rank-{other.alphabet.rank} words cannot be combined")
    return alphabet


def reduce(raw: Iterable[int], alphabet: Alphabet) -> FreeWord:
    """Unique freely reduced form of a letter sequence"""
    stack: List[int] = []
    rank = alphabet.rank
    for letter in raw:
        if letter == 0 or not -rank <= letter <= rank:
            raise MalformedWordError(f"letter {letter} outside rank-{rank} alphabet")
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return FreeWord(alphabet, tuple(stack))


def multiply(u: FreeWord, v: FreeWord) -> FreeWord:
    alphabet = _check_alphabet(u, v)
    return FreeWord(alphabet, join(u.letters, v.letters))


def inverse(u: FreeWord) -> FreeWord:
    return FreeWord(u.alphabet, _negate_reversed(u.letters))


def conjugate(u: FreeWord, g: FreeWord) -> FreeWord:
    """g u g^-1"""
    alphabet = _check_alphabet(u, g)
    return FreeWord(alphabet, join(join(g.letters, u.letters), _negate_reversed(g.letters)))


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    """[u, v] = u v u^-1 v^-1"""
    return multiply(multiply(u, v), multiply(inverse(u), inverse(v)))


def _split_cyclic(letters: Tuple[int, ...]) -> int:
    if not letters:
        return 0
    return min(_cancellation_length(letters, letters), len(letters) // 2)


def cyclic_reduce(w: FreeWord) -> Tuple[CyclicWord, FreeWord]:
    """Return (core, conjugator) with w = conjugator . core . conjugator^-1"""
    k = _split_cyclic(w.letters)
    core = w.letters[k:len(w.letters) - k]
    return CyclicWord(w.alphabet, core), FreeWord(w.alphabet, w.letters[:k])


def power(u: FreeWord, k: int) -> FreeWord:
    if k == 0 or not u.letters:
        return u.alphabet.identity()
    if k < 0:
        u, k = inverse(u), -k
    if k == 1:
        return u
    split = _split_cyclic(u.letters)
    n = len(u.letters)
    core = u.letters[split:n - split]
    return FreeWord(u.alphabet, u.letters[:split] + core * k + u.letters[n - split:])


def _minimal_period(letters: Sequence[int]) -> int:
    n = len(letters)
    failure = [0] * n
    k = 0
    for i in range(1, n):
        while k and letters[i] != letters[k]:
            k = failure[k - 1]
        if letters[i] == letters[k]:
            k += 1
        failure[i] = k
    return n - failure[-1]


def is_proper_power(w: FreeWord) -> Optional[Tuple[FreeWord, int]]:
    """(root, k) with w = root^k and k >= 2 maximal, or None"""
    if not w.letters:
        raise IdentityWordError("the identity has no well-defined root")
    core, conjugator = cyclic_reduce(w)
    n = len(core.letters)
    period = _minimal_period(core.letters)
    if period == n or n % period:
        return None
    root_core = FreeWord(w.alphabet, core.letters[:period])
    return conjugate(root_core, conjugator), n // period


def power_exponent(image: FreeWord, generator: FreeWord) -> Optional[int]:
    """k with image = generator^k, or None"""
    core, conjugator = cyclic_reduce(generator)
    if not core.letters:
        return None
    if not image.letters:
        return 0
    extra = len(image) - 2 * len(conjugator)
    if extra <= 0 or extra % len(core):
        return None
    k = extra // len(core)
    for candidate in (k, -k):
        if power(generator, candidate) == image:
            return candidate
    return None


def exponent_sums(w: FreeWord) -> Tuple[int, ...]:
    counts = np.zeros(w.alphabet.rank + 1, dtype=np.int64)
    if w.letters:
        arr = np.asarray(w.letters, dtype=np.int64)
        np.add.at(counts, np.abs(arr), np.sign(arr))
    return tuple(int(c) for c in counts[1:])


def common_conjugator(images: Sequence[FreeWord]) -> Tuple[int, ...]:
    """Longest g with every nontrivial image of the form g u g^-1, u reduced"""
    prefix: Optional[Tuple[int, ...]] = None
    for image in images:
        if not image.letters:
            continue
        k = _split_cyclic(image.letters)
        conj = image.letters[:k]
        if prefix is None:
            prefix = conj
        else:
            prefix = prefix[:common_prefix_length(prefix, conj)]
        if not prefix:
            return ()
    return prefix or ()


def substitute(w: FreeWord, images: Sequence[FreeWord]) -> FreeWord:
    """Image of w under the homomorphism x_i -> images[i-1]"""
    if len(images) != w.alphabet.rank:
        raise FreeGroupError(
            f"expected {w.alphabet.rank} images, got {len(images)}")
    if not images:
        return w
    target = _check_alphabet(*images)
    outer = common_conjugator(images)
    if outer:
        size = len(outer)
        images = [FreeWord(target, im.letters[size:len(im.letters) - size]) for im in images]
    cache: Dict[Tuple[int, int], Tuple[int, ...]] = {}
    stack: List[int] = []
    for letter, run in itertools.groupby(w.letters):
        count = sum(1 for _ in run)
        key = (letter, count)
        piece = cache.get(key)
        if piece is None:
            base = images[abs(letter) - 1]
            piece = power(base, count if letter > 0 else -count).letters
            cache[key] = piece
        push_reduced(stack, piece)
    inner = tuple(stack)
    if outer:
        return FreeWord(target, join(join(outer, inner), _negate_reversed(outer)))
    return FreeWord(target, inner)


def _core_text(w: FreeWord) -> str:
    core, _ = cyclic_reduce(w)
    return render(core.letters)


def conjugacy_equal(u: FreeWord, v: FreeWord) -> bool:
    _check_alphabet(u, v)
    left, right = _core_text(u), _core_text(v)
    if len(left) != len(right):
        return False
    return right in left + left
