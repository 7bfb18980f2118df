"""
Whitehead's algorithm for rank 2: greedy minimization of cyclic length,
the minimal-length part of an Aut(F2)-orbit and the decisions built on it.

Orbit members are cyclic words keyed by their normal form (least rotation
of the word or its inverse), so w and w^-1 land on the same node.
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Tuple

from services.shared.config import config
from services.shared.errors import IdentityWordError, SearchExhaustedError
from services.shared.logs import get_logger
from services.whitehead_service.automorphisms import (
    RANK_TWO,
    AutChain,
    all_moves,
)
from services.words_service.words import (
    CyclicWord,
    FreeWord,
    cyclic_reduce,
    is_proper_power,
    letter_order,
)

logger = get_logger(__name__)

NormalForm = Tuple[int, ...]


def normal_form(letters: Tuple[int, ...]) -> NormalForm:
    """Least rotation of the cyclic word or of its inverse"""
    if not letters:
        return ()
    forward = CyclicWord(RANK_TWO, letters).canonical
    backward = CyclicWord(RANK_TWO, tuple(-x for x in reversed(letters))).canonical
    return min(forward, backward, key=normal_form_key)


def normal_form_key(form: NormalForm):
    return [letter_order(x) for x in form]


def core_of(w: FreeWord) -> FreeWord:
    core, _ = cyclic_reduce(w)
    return core.word()


def cyclic_length(w: FreeWord) -> int:
    return len(cyclic_reduce(w)[0])


def minimize(w: FreeWord) -> Tuple[CyclicWord, AutChain]:
    """Greedy Whitehead descent; chain(w) is conjugate to the returned word"""
    if not w.letters:
        raise IdentityWordError("the identity has no Aut-orbit to minimize")
    current = core_of(w)
    chain = AutChain()
    moves = all_moves()
    while True:
        best, best_move = None, None
        for move in moves:
            image = core_of(move.apply(current))
            if len(image) < len(current if best is None else best):
                best, best_move = image, move
        if best is None:
            break
        current = best
        chain = chain.then(best_move)
    logger.debug(f"minimized length {len(w)} -> {len(current)} in {len(chain)} moves")
    return CyclicWord(RANK_TWO, current.letters), chain


@dataclass(frozen=True)
class OrbitNode:
    word: FreeWord
    chain: AutChain


class Orbit:
    """All minimal-length cyclic words in the Aut-orbit of w, each with a chain reaching it"""

    def __init__(self, w: FreeWord, node_cap: Optional[int] = None):
        if not w.letters:
            raise IdentityWordError("the identity has no Aut-orbit")
        cap = config.JSJ_NODE_CAP if node_cap is None else node_cap
        start, chain = minimize(w)
        self.length = len(start)
        first = OrbitNode(start.word(), chain)
        self.nodes: Dict[NormalForm, OrbitNode] = {normal_form(start.letters): first}
        queue = deque([first])
        moves = all_moves()
        while queue:
            node = queue.popleft()
            for move in moves:
                image = core_of(move.apply(node.word))
                if len(image) != self.length:
                    continue
                form = normal_form(image.letters)
                if form in self.nodes:
                    continue
                child = OrbitNode(image, node.chain.then(move))
                self.nodes[form] = child
                if len(self.nodes) > cap:
                    raise SearchExhaustedError(len(self.nodes))
                queue.append(child)
        logger.debug(f"minimal orbit: {len(self.nodes)} words of length {self.length}")

    def __contains__(self, form: NormalForm) -> bool:
        return form in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def forms(self):
        return sorted(self.nodes, key=normal_form_key)

    def words(self) -> FrozenSet[CyclicWord]:
        return frozenset(CyclicWord(RANK_TWO, form) for form in self.nodes)


def minimal_orbit(w: FreeWord, node_cap: Optional[int] = None) -> FrozenSet[CyclicWord]:
    return Orbit(w, node_cap).words()


def is_primitive(w: FreeWord) -> bool:
    minimal, _ = minimize(w)
    return len(minimal) == 1


def in_proper_free_factor(w: FreeWord) -> bool:
    root = is_proper_power(w)
    return is_primitive(root[0] if root else w)


@dataclass(frozen=True)
class AutEquivalence:
    chain: AutChain
    inverted: bool


def aut_conjugacy_equivalent(u: FreeWord, v: FreeWord,
                             node_cap: Optional[int] = None) -> Optional[AutEquivalence]:
    """A chain carrying u into the conjugacy class of v or of v^-1"""
    if not u.letters or not v.letters:
        raise IdentityWordError("Aut-equivalence is undefined for the identity")
    target, chain_v = minimize(v)
    orbit = Orbit(u, node_cap)
    if len(target) != orbit.length:
        return None
    node = orbit.nodes.get(normal_form(target.letters))
    if node is None:
        return None
    inverted = CyclicWord(RANK_TWO, node.word.letters) != target
    return AutEquivalence(node.chain.then(chain_v.inverse()), inverted)
