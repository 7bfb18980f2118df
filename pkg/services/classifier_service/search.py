"""
Bounded search for a basis in which w lies in <x^n, y> (amalgam condition)
or in <y^m, x y^n x^-1> (HNN condition).

The search starts from the whole minimal Aut-orbit of w and widens it by
Whitehead moves: type II moves count toward the depth bound, type I moves
are free, and words longer than length_factor times the minimal length are
dropped. The visited set depends only on the orbit, so every parameter the
search reports is the same for w and for any automorphic image of w.

Membership of a cyclic word is read off its generator blocks; the chosen
candidate is then rotated and conjugated into literal membership and
certified with a Stallings graph.
"""

import math
from collections import deque
from dataclasses import dataclass, field
from functools import reduce as fold
from typing import Dict, List, Optional, Tuple

from services.shared.config import config
from services.shared.errors import SearchExhaustedError
from services.shared.logs import get_logger
from services.subgroup_service.stallings import build
from services.whitehead_service.automorphisms import (
    RANK_TWO,
    AutChain,
    all_moves,
    conjugation_chain,
)
from services.whitehead_service.orbits import (
    NormalForm,
    Orbit,
    core_of,
    normal_form,
    normal_form_key,
)
from services.words_service.words import (
    FreeWord,
    cyclic_reduce,
    inverse,
    multiply,
    power,
)

logger = get_logger(__name__)

A, B = 1, 2


@dataclass(frozen=True)
class SearchBound:
    depth: int = field(default_factory=lambda: config.JSJ_SEARCH_DEPTH)
    node_cap: int = field(default_factory=lambda: config.JSJ_NODE_CAP)
    length_factor: int = field(default_factory=lambda: config.JSJ_LENGTH_FACTOR)


@dataclass(frozen=True)
class AmalgamWitness:
    """chain(w) lies in <a^n, b^m>; m is None when only <a^n, b> holds"""
    chain: AutChain
    n: int
    m: Optional[int]
    transformed: FreeWord
    conjugate_form: bool

    @property
    def basis(self) -> Tuple[FreeWord, FreeWord]:
        return self.chain.inverse().images


@dataclass(frozen=True)
class HnnWitness:
    """chain(w) lies in <b^m, a b^n a^-1> with m <= n"""
    chain: AutChain
    m: int
    n: int
    transformed: FreeWord
    conjugate_form: bool

    @property
    def basis(self) -> Tuple[FreeWord, FreeWord]:
        return self.chain.inverse().images

    @property
    def k(self) -> int:
        return math.gcd(self.m, self.n)


def cyclic_blocks(letters: Tuple[int, ...]) -> List[Tuple[int, int, int]]:
    """Maximal runs (start, letter, length) of a cyclic word, in cyclic order"""
    size = len(letters)
    if not size:
        return []
    start = next((i for i in range(size) if letters[i - 1] != letters[i]), None)
    if start is None:
        return [(0, letters[0], size)]
    blocks = []
    i = start
    while True:
        letter, j = letters[i % size], i
        while letters[j % size] == letter and j - i < size:
            j += 1
        blocks.append((i % size, letter, j - i))
        i = j
        if i - start >= size:
            return blocks


def _gcd(values) -> int:
    return fold(math.gcd, values, 0)


def amalgam_profile(letters: Tuple[int, ...]) -> Optional[Tuple[int, int, int, bool]]:
    """(n, m, rotation start, two blocks) when every a-block length is divisible by n >= 2"""
    blocks = cyclic_blocks(letters)
    a_blocks = [b for b in blocks if abs(b[1]) == A]
    b_blocks = [b for b in blocks if abs(b[1]) == B]
    if not a_blocks or not b_blocks:
        return None
    n = _gcd(length for _, _, length in a_blocks)
    if n < 2:
        return None
    m = _gcd(length for _, _, length in b_blocks)
    # every block boundary returns to the basepoint of the <a^n, b^m> graph
    return n, m, blocks[0][0], len(blocks) == 2


def hnn_profile(letters: Tuple[int, ...]) -> Optional[Tuple[int, int, int, bool]]:
    """(m, n, rotation start, conjugate form) for words y^e0 x y^e1 x^-1 ... read cyclically"""
    blocks = cyclic_blocks(letters)
    a_blocks = [b for b in blocks if abs(b[1]) == A]
    if not a_blocks or len(a_blocks) % 2 or any(length != 1 for _, _, length in a_blocks):
        return None
    signs = [letter for _, letter, _ in a_blocks]
    if any(signs[i] == signs[i - 1] for i in range(len(signs))):
        return None
    outside, inside = [], []
    for i, (_, letter, length) in enumerate(blocks):
        if abs(letter) == B:
            # blocks alternate generators, so the previous block is an a-letter
            (inside if blocks[i - 1][1] == A else outside).append(length)
    m, n = _gcd(outside), _gcd(inside)
    # reading may start at an a-letter or at a b-block that follows A
    start = next(s for i, (s, letter, _) in enumerate(blocks)
                 if letter == A or (abs(letter) == B and blocks[i - 1][1] == -A))
    return m, n, start, len(a_blocks) == 2


@dataclass
class SearchNode:
    word: FreeWord
    chain: AutChain
    depth: int


class BasisSearch:
    def __init__(self, w: FreeWord, bound: Optional[SearchBound] = None,
                 orbit: Optional[Orbit] = None):
        self.w = w
        self.bound = bound or SearchBound()
        self.orbit = orbit or Orbit(w, self.bound.node_cap)
        self.limit = self.bound.length_factor * self.orbit.length
        self.nodes: Dict[NormalForm, SearchNode] = {}
        self.max_depth = 0
        self._explore()
        self._amalgam: Optional[AmalgamWitness] = None
        self._hnn: Optional[HnnWitness] = None

    def _explore(self) -> None:
        queue = deque()
        for form in self.orbit.forms():
            node = self.orbit.nodes[form]
            self.nodes[form] = SearchNode(node.word, node.chain, 0)
            queue.append((form, 0))
        moves = all_moves()
        while queue:
            form, depth = queue.popleft()
            node = self.nodes[form]
            if depth > node.depth:
                continue
            for move in moves:
                step = 1 if move.kind == "II" else 0
                child_depth = depth + step
                if child_depth > self.bound.depth:
                    continue
                image = core_of(move.apply(node.word))
                if len(image) > self.limit:
                    continue
                child_form = normal_form(image.letters)
                known = self.nodes.get(child_form)
                if known is not None and known.depth <= child_depth:
                    continue
                self.nodes[child_form] = SearchNode(image, node.chain.then(move), child_depth)
                if len(self.nodes) > self.bound.node_cap:
                    raise SearchExhaustedError(len(self.nodes))
                self.max_depth = max(self.max_depth, child_depth)
                if step:
                    queue.append((child_form, child_depth))
                else:
                    queue.appendleft((child_form, child_depth))
        logger.info(f"basis search visited {len(self.nodes)} words, depth reached {self.max_depth}")

    @property
    def consumed(self) -> int:
        return len(self.nodes)

    def _ordered(self, profile, key):
        found = []
        for form, node in self.nodes.items():
            result = profile(node.word.letters)
            if result is not None:
                found.append((key(result, form), form, node))
        found.sort(key=lambda item: item[0])
        return found

    def _rotation_witness(self, node: SearchNode, profile) -> Tuple[AutChain, FreeWord, tuple]:
        """Append conjugation moves so that chain(w) is the block-aligned rotation of the core"""
        image = node.chain.apply(self.w)
        core, conjugator = cyclic_reduce(image)
        params = profile(core.letters)
        start = params[2]
        prefix = FreeWord(RANK_TWO, core.letters[:start])
        g = inverse(multiply(conjugator, prefix))
        chain = node.chain.then(conjugation_chain(g))
        return chain, chain.apply(self.w), params

    def amalgam(self) -> Optional[AmalgamWitness]:
        if self._amalgam is None:
            self._amalgam = self._find_amalgam()
        return self._amalgam

    def hnn(self) -> Optional[HnnWitness]:
        if self._hnn is None:
            self._hnn = self._find_hnn()
        return self._hnn

    def _find_amalgam(self) -> Optional[AmalgamWitness]:
        candidates = self._ordered(
            amalgam_profile,
            lambda p, form: (not p[3], -p[0], -p[1], normal_form_key(form)))
        logger.info(f"amalgam candidates: {len(candidates)}")
        a, b = RANK_TWO.generators()
        for _, form, node in candidates:
            chain, transformed, (n, m, _, _) = self._rotation_witness(node, amalgam_profile)
            y = power(b, m) if m >= 2 else b
            graph = build([power(a, n), y])
            if not graph.contains(transformed):
                logger.warning(f"amalgam candidate {FreeWord(RANK_TWO, form)} failed certification")
                continue
            rewritten = graph.rewrite(transformed)
            conjugate_form = m >= 2 and _two_letter_core(rewritten)
            return AmalgamWitness(chain, n, m if m >= 2 else None, transformed, conjugate_form)
        return None

    def _find_hnn(self) -> Optional[HnnWitness]:
        candidates = self._ordered(
            hnn_profile,
            lambda p, form: (p[0] > p[1], not p[3], -math.gcd(p[0], p[1]),
                             -min(p[0], p[1]), -max(p[0], p[1]), normal_form_key(form)))
        logger.info(f"HNN candidates: {len(candidates)}")
        a, b = RANK_TWO.generators()
        for _, form, node in candidates:
            chain, transformed, (m, n, _, _) = self._rotation_witness(node, hnn_profile)
            if m > n:
                continue
            graph = build([power(b, m), multiply(multiply(a, power(b, n)), inverse(a))])
            if not graph.contains(transformed):
                logger.warning(f"HNN candidate {FreeWord(RANK_TWO, form)} failed certification")
                continue
            conjugate_form = _two_letter_core(graph.rewrite(transformed))
            return HnnWitness(chain, m, n, transformed, conjugate_form)
        return None


def _two_letter_core(rewritten: Optional[FreeWord]) -> bool:
    """Conjugate, inside the subgroup, to (u^+-1 v^+-1)^+-1"""
    if rewritten is None:
        return False
    core, _ = cyclic_reduce(rewritten)
    return len(core) == 2 and {abs(x) for x in core.letters} == {1, 2}


def search_condition_amalgam(w: FreeWord, bound: Optional[SearchBound] = None) -> Optional[AmalgamWitness]:
    return BasisSearch(w, bound).amalgam()


def search_condition_hnn(w: FreeWord, bound: Optional[SearchBound] = None) -> Optional[HnnWitness]:
    return BasisSearch(w, bound).hnn()
