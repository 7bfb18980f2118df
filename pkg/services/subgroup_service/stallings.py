"""
Stallings folded graphs for finitely generated subgroups of a free group.

build() glues one petal per generator at the basepoint, folds with a
union-find worklist, trims hanging trees and renumbers the vertices in
breadth-first order (labels visited a, A, b, B, ...). The renumbering makes
the graph independent of generator order, and the breadth-first tree fixes
the free basis used by rewrite().
"""

from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

from services.shared.errors import AlphabetMismatchError, MalformedWordError
from services.shared.logs import get_logger
from services.words_service.words import (
    SYMBOLS,
    Alphabet,
    FreeWord,
    cyclic_reduce,
    inverse,
    join,
    reduce,
)

logger = get_logger(__name__)

Edge = Tuple[int, int, int]


class _Folder:
    """Union-find over vertices with lazily resolved adjacency"""

    def __init__(self):
        self.parent: List[int] = [0]
        self.adj: List[Dict[int, int]] = [{}]
        self.pending: List[Tuple[int, int]] = []
        self.folds = 0

    def new_vertex(self) -> int:
        self.parent.append(len(self.parent))
        self.adj.append({})
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def _attach(self, u: int, label: int, v: int) -> None:
        existing = self.adj[u].get(label)
        if existing is None:
            self.adj[u][label] = v
        else:
            self.pending.append((existing, v))

    def add_edge(self, u: int, label: int, v: int) -> None:
        u, v = self.find(u), self.find(v)
        self._attach(u, label, v)
        self._attach(v, -label, u)
        self.drain()

    def drain(self) -> None:
        while self.pending:
            x, y = self.pending.pop()
            x, y = self.find(x), self.find(y)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            self.parent[y] = x
            self.folds += 1
            moved, self.adj[y] = self.adj[y], {}
            for label, t in moved.items():
                self._attach(x, label, t)

    def resolved(self) -> Dict[int, Dict[int, int]]:
        graph: Dict[int, Dict[int, int]] = {}
        for v in range(len(self.parent)):
            if self.find(v) != v:
                continue
            graph[v] = {label: self.find(t) for label, t in self.adj[v].items()}
        return graph


def _trim(graph: Dict[int, Dict[int, int]], base: int) -> None:
    stack = [v for v, out in graph.items() if v != base and len(out) <= 1]
    while stack:
        v = stack.pop()
        if v not in graph or v == base or len(graph[v]) > 1:
            continue
        for label, t in graph.pop(v).items():
            if t in graph:
                graph[t].pop(-label, None)
                if t != base and len(graph[t]) <= 1:
                    stack.append(t)


class SubgroupGraph:
    """Folded core graph of a subgroup; immutable once built"""

    def __init__(self, alphabet: Alphabet, generators: Sequence[FreeWord],
                 adjacency: List[Dict[int, int]]):
        self.alphabet = alphabet
        self.generators = tuple(generators)
        self._adj = adjacency
        self.basepoint = 0
        self._paths, self._tree = self._spanning_tree()
        self._basis_edges = sorted(
            (
                (u, label, v)
                for u, out in enumerate(self._adj)
                for label, v in out.items()
                if label > 0 and (u, label) not in self._tree
            ),
            key=lambda e: (e[1], e[0], e[2]),
        )
        self._basis_index = {edge: i for i, edge in enumerate(self._basis_edges, start=1)}

    def _spanning_tree(self):
        paths: List[Optional[Tuple[int, ...]]] = [None] * len(self._adj)
        paths[0] = ()
        tree = set()
        queue = deque([0])
        order = self.alphabet.letters()
        while queue:
            u = queue.popleft()
            for label in order:
                v = self._adj[u].get(label)
                if v is None or paths[v] is not None:
                    continue
                paths[v] = paths[u] + (label,)
                tree.add((u, label))
                tree.add((v, -label))
                queue.append(v)
        return paths, tree

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    def edges(self) -> List[Edge]:
        """Positive-label edges (source, label, target) in canonical order"""
        return [(u, label, v) for u, out in enumerate(self._adj)
                for label, v in sorted(out.items()) if label > 0]

    def neighbour(self, vertex: int, label: int) -> Optional[int]:
        return self._adj[vertex].get(label)

    def path_to(self, vertex: int) -> FreeWord:
        return FreeWord(self.alphabet, self._paths[vertex])

    def canonical_form(self) -> Tuple[int, Tuple[Edge, ...]]:
        return self.vertex_count, tuple(self.edges())

    def basis(self) -> List[FreeWord]:
        """Free basis read off the non-tree edges; index i is letter i+1 of rewrite()"""
        words = []
        for u, label, v in self._basis_edges:
            head = join(self._paths[u], (label,))
            words.append(FreeWord(self.alphabet, join(head, inverse(self.path_to(v)).letters)))
        return words

    def _check(self, w: FreeWord) -> None:
        if w.alphabet != self.alphabet:
            raise AlphabetMismatchError(
                f"word over rank {w.alphabet.rank}, subgroup over rank {self.alphabet.rank}")

    def _read(self, letters: Sequence[int], start: int) -> Optional[int]:
        v = start
        adj = self._adj
        for letter in letters:
            v = adj[v].get(letter)
            if v is None:
                return None
        return v

    def contains(self, w: FreeWord) -> bool:
        self._check(w)
        return self._read(w.letters, self.basepoint) == self.basepoint

    def rewrite(self, w: FreeWord) -> Optional[FreeWord]:
        self._check(w)
        rank = self.rank()
        if rank > len(SYMBOLS):
            raise MalformedWordError(f"subgroup rank {rank} exceeds the printable alphabet")
        target = Alphabet(max(rank, 1))
        raw = []
        v = self.basepoint
        for letter in w.letters:
            u = self._adj[v].get(letter)
            if u is None:
                return None
            if (v, letter) not in self._tree:
                if letter > 0:
                    raw.append(self._basis_index[(v, letter, u)])
                else:
                    raw.append(-self._basis_index[(u, -letter, v)])
            v = u
        if v != self.basepoint:
            return None
        return reduce(raw, target)

    def conjugate_into(self, w: FreeWord) -> Optional[FreeWord]:
        """Some g with g w g^-1 in the subgroup, or None when no conjugate of w is a member"""
        self._check(w)
        core, conjugator = cyclic_reduce(w)
        for vertex in range(self.vertex_count):
            if self._read(core.letters, vertex) == vertex:
                g = join(self._paths[vertex], inverse(conjugator).letters)
                return FreeWord(self.alphabet, g)
        return None

    def rank(self) -> int:
        edge_count = sum(1 for out in self._adj for label in out if label > 0)
        return edge_count - self.vertex_count + 1

    def index(self) -> Optional[int]:
        full = 2 * self.alphabet.rank
        if all(len(out) == full for out in self._adj):
            return self.vertex_count
        return None


def build(generators: Sequence[FreeWord], alphabet: Optional[Alphabet] = None) -> SubgroupGraph:
    """Fold the generators into the core graph of the subgroup they generate"""
    if alphabet is None:
        alphabet = generators[0].alphabet if generators else Alphabet(2)
    for g in generators:
        if g.alphabet != alphabet:
            raise AlphabetMismatchError("subgroup generators must share one alphabet")

    folder = _Folder()
    for g in generators:
        letters = g.letters
        if not letters:
            continue
        v = 0
        for letter in letters[:-1]:
            u = folder.new_vertex()
            folder.add_edge(v, letter, u)
            v = u
        folder.add_edge(v, letters[-1], 0)

    graph = folder.resolved()
    _trim(graph, 0)

    numbering = {0: 0}
    queue = deque([0])
    order = alphabet.letters()
    while queue:
        u = queue.popleft()
        for label in order:
            v = graph[u].get(label)
            if v is not None and v not in numbering:
                numbering[v] = len(numbering)
                queue.append(v)
    adjacency: List[Dict[int, int]] = [{} for _ in numbering]
    for old, new in numbering.items():
        adjacency[new] = {label: numbering[t] for label, t in graph[old].items()}

    logger.debug(f"folded {len(generators)} generators: {folder.folds} folds, "
                 f"{len(adjacency)} vertices")
    return SubgroupGraph(alphabet, generators, adjacency)


def contains(g: SubgroupGraph, w: FreeWord) -> bool:
    return g.contains(w)


def rewrite(g: SubgroupGraph, w: FreeWord) -> Optional[FreeWord]:
    return g.rewrite(w)


def subgroup_rank(g: SubgroupGraph) -> int:
    return g.rank()


def index(g: SubgroupGraph) -> Optional[int]:
    return g.index()
