"""
Graphs of groups for G_w and the fixed shapes the classifier emits.

Vertex kinds:
    rigid   words = free basis of the vertex group
    qh      words = boundary words of the surface
    cyclic  words = (generator,)

Shape builders take the witness basis (x, y) as rank-2 words and spell
every group element in the rank-4 alphabet of the double.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from services.classifier_service.double import DoubleGroup, side_word
from services.shared.errors import FreeGroupError
from services.subgroup_service.stallings import build
from services.words_service.words import (
    FreeWord,
    conjugate,
    power,
    power_exponent,
)

SIDES = ("A", "B")


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: str
    words: Tuple[FreeWord, ...] = ()
    orientable: Optional[bool] = None
    genus: Optional[int] = None

    @property
    def boundary_count(self) -> Optional[int]:
        return len(self.words) if self.kind == "qh" else None

    def euler_characteristic(self) -> int:
        if self.orientable:
            return 2 - 2 * self.genus - len(self.words)
        return 2 - self.genus - len(self.words)


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    image_source: FreeWord
    image_target: FreeWord

    @property
    def loop(self) -> bool:
        return self.source == self.target


@dataclass
class GraphOfGroups:
    vertices: List[Vertex] = field(default_factory=list)
    edges: List[Edge] = field(default_factory=list)

    def vertex(self, vertex_id: str) -> Vertex:
        for v in self.vertices:
            if v.id == vertex_id:
                return v
        raise KeyError(vertex_id)

    def side_betti_number(self, side: str) -> int:
        """First Betti number of the subgraph spanned by one side's vertices"""
        ids = {v.id for v in self.vertices if v.id.endswith("_" + side)}
        if not ids:
            return 0
        edges = [e for e in self.edges if e.source in ids and e.target in ids]
        parent = {i: i for i in ids}

        def find(i):
            while parent[i] != i:
                i = parent[i]
            return i

        for e in edges:
            parent[find(e.source)] = find(e.target)
        components = len({find(i) for i in ids})
        return len(edges) - len(ids) + components

    def problems(self) -> List[str]:
        found = []
        rigid = {v.id: build(list(v.words)) for v in self.vertices if v.kind == "rigid"}
        for v in self.vertices:
            if v.kind == "qh" and v.euler_characteristic() >= 0:
                found.append(f"QH vertex {v.id} has Euler characteristic {v.euler_characteristic()}")
        for e in self.edges:
            for end, image in ((e.source, e.image_source), (e.target, e.image_target)):
                if not image.letters:
                    found.append(f"edge {e.source}-{e.target} has a trivial image at {end}")
                    continue
                v = self.vertex(end)
                if v.kind == "qh" and image not in v.words:
                    found.append(f"image {image} at {end} is not a boundary word")
                if v.kind == "cyclic" and power_exponent(image, v.words[0]) is None:
                    found.append(f"image {image} at {end} is not a power of {v.words[0]}")
                if v.kind == "rigid" and not rigid[end].contains(image):
                    found.append(f"image {image} at {end} lies outside the vertex group")
        return found

    def validate(self) -> "GraphOfGroups":
        found = self.problems()
        if found:
            raise FreeGroupError("; ".join(found))
        return self


def _x_conj(x: FreeWord, y: FreeWord, n: int) -> FreeWord:
    return conjugate(power(y, n), x)


def _cyclic(vertex_id: str, generator: FreeWord) -> Vertex:
    return Vertex(vertex_id, "cyclic", (generator,))


def _edge(source: str, target: str, image_source: FreeWord, image_target: FreeWord) -> Edge:
    return Edge(source, target, image_source, image_target)


def double_edge(double: DoubleGroup) -> GraphOfGroups:
    return GraphOfGroups(
        vertices=[Vertex("A", "rigid", double.side_generators("A")),
                  Vertex("B", "rigid", double.side_generators("B"))],
        edges=[_edge("A", "B", double.w_a, double.w_b)],
    )


def surface(orientable: bool, genus: int) -> GraphOfGroups:
    return GraphOfGroups(vertices=[Vertex("S", "qh", (), orientable, genus)])


def free_decomposition(x: FreeWord, y: FreeWord, k: int) -> GraphOfGroups:
    """<y_A> * <x_A> *_{x^k} <x_B> * <y_B>; the y vertices are free factors"""
    graph = GraphOfGroups()
    for side in SIDES:
        graph.vertices.append(_cyclic(f"X_{side}", side_word(x, side)))
    for side in SIDES:
        graph.vertices.append(_cyclic(f"Y_{side}", side_word(y, side)))
    xk = power(x, k)
    graph.edges.append(_edge("X_A", "X_B", side_word(xk, "A"), side_word(xk, "B")))
    return graph


def _rigid_pair(graph: GraphOfGroups, basis: Tuple[FreeWord, ...], w: FreeWord) -> None:
    for side in SIDES:
        graph.vertices.append(Vertex(f"R_{side}", "rigid", tuple(side_word(u, side) for u in basis)))
    graph.edges.append(_edge("R_A", "R_B", side_word(w, "A"), side_word(w, "B")))


def qh3(x: FreeWord, y: FreeWord, n: int, m: int) -> GraphOfGroups:
    """Four-punctured sphere with the cyclic groups <x>, <y> of both sides on its boundary"""
    xn, ym = power(x, n), power(y, m)
    boundaries = tuple(side_word(u, side) for side in SIDES for u in (xn, ym))
    graph = GraphOfGroups(vertices=[Vertex("S", "qh", boundaries, True, 0)])
    for side in SIDES:
        for name, generator, image in (("X", x, xn), ("Y", y, ym)):
            vertex_id = f"{name}_{side}"
            graph.vertices.append(_cyclic(vertex_id, side_word(generator, side)))
            boundary = side_word(image, side)
            graph.edges.append(_edge("S", vertex_id, boundary, boundary))
    return graph


def moebius(x: FreeWord, y: FreeWord, n: int, m: int) -> GraphOfGroups:
    """Twice-punctured Klein bottle; the cyclic vertices with exponent 2 became Moebius bands"""
    if m == 2:
        name, generator, exponent = "X", x, n
    else:
        name, generator, exponent = "Y", y, m
    image = power(generator, exponent)
    boundaries = tuple(side_word(image, side) for side in SIDES)
    graph = GraphOfGroups(vertices=[Vertex("S", "qh", boundaries, False, 2)])
    for side in SIDES:
        vertex_id = f"{name}_{side}"
        graph.vertices.append(_cyclic(vertex_id, side_word(generator, side)))
        graph.edges.append(_edge("S", vertex_id, side_word(image, side), side_word(image, side)))
    return graph


def amalgam_rigid(x: FreeWord, y: FreeWord, n: int, m: Optional[int], w: FreeWord) -> GraphOfGroups:
    """<x^n, y> *_{x^n} <x>, or <y> *_{y^m} <x^n, y^m> *_{x^n} <x> when m >= 2, on both sides"""
    xn = power(x, n)
    ym = power(y, m) if m else y
    graph = GraphOfGroups()
    _rigid_pair(graph, (xn, ym), w)
    for side in SIDES:
        graph.vertices.append(_cyclic(f"X_{side}", side_word(x, side)))
        graph.edges.append(_edge(f"R_{side}", f"X_{side}", side_word(xn, side), side_word(xn, side)))
        if m:
            graph.vertices.append(_cyclic(f"Y_{side}", side_word(y, side)))
            graph.edges.append(_edge(f"R_{side}", f"Y_{side}", side_word(ym, side), side_word(ym, side)))
    return graph


def hnn_rigid(x: FreeWord, y: FreeWord, m: int, n: int, w: FreeWord) -> GraphOfGroups:
    """HNN shapes for m <= n: a loop at <y, x y^n x^-1> when m == 1, two edges to <y> otherwise"""
    if m > n:
        raise ValueError("HNN exponents must be oriented so that m <= n")
    graph = GraphOfGroups()
    xynx = _x_conj(x, y, n)
    if m == 1:
        _rigid_pair(graph, (y, xynx), w)
        for side in SIDES:
            rid = f"R_{side}"
            graph.edges.append(_edge(rid, rid, side_word(power(y, n), side), side_word(xynx, side)))
        return graph
    ym = power(y, m)
    _rigid_pair(graph, (ym, xynx), w)
    for side in SIDES:
        rid, yid = f"R_{side}", f"Y_{side}"
        graph.vertices.append(_cyclic(yid, side_word(y, side)))
        graph.edges.append(_edge(rid, yid, side_word(ym, side), side_word(ym, side)))
        graph.edges.append(_edge(rid, yid, side_word(xynx, side), side_word(power(y, n), side)))
    return graph


def _hnn_boundaries(x: FreeWord, y: FreeWord, m: int, n: int) -> Tuple[FreeWord, ...]:
    ym, xynx = power(y, m), _x_conj(x, y, n)
    return tuple(side_word(u, side) for side in SIDES for u in (ym, xynx))


def qh4(x: FreeWord, y: FreeWord, m: int, n: int) -> GraphOfGroups:
    """Four-punctured sphere; <y> of each side meets it along y^m and x y^n x^-1"""
    graph = GraphOfGroups(vertices=[Vertex("S", "qh", _hnn_boundaries(x, y, m, n), True, 0)])
    ym, xynx = power(y, m), _x_conj(x, y, n)
    for side in SIDES:
        yid = f"Y_{side}"
        graph.vertices.append(_cyclic(yid, side_word(y, side)))
        graph.edges.append(_edge("S", yid, side_word(ym, side), side_word(ym, side)))
        graph.edges.append(_edge("S", yid, side_word(xynx, side), side_word(power(y, n), side)))
    return graph


def qh5(x: FreeWord, y: FreeWord, m: int, n: int, k: int) -> GraphOfGroups:
    """As qh4, with the root <y^k> pulled out between the surface and <y>"""
    graph = GraphOfGroups(vertices=[Vertex("S", "qh", _hnn_boundaries(x, y, m, n), True, 0)])
    ym, xynx, yk = power(y, m), _x_conj(x, y, n), power(y, k)
    for side in SIDES:
        kid, yid = f"K_{side}", f"Y_{side}"
        graph.vertices.append(_cyclic(kid, side_word(yk, side)))
        graph.vertices.append(_cyclic(yid, side_word(y, side)))
        graph.edges.append(_edge("S", kid, side_word(ym, side), side_word(ym, side)))
        graph.edges.append(_edge("S", kid, side_word(xynx, side), side_word(power(y, n), side)))
        graph.edges.append(_edge(kid, yid, side_word(yk, side), side_word(yk, side)))
    return graph


def root_loop(x: FreeWord, y: FreeWord, m: int, n: int, w: FreeWord) -> GraphOfGroups:
    """<y> *_{y^m} <y^m, x y^n x^-1> with the loop y^n = x y^n x^-1; needs m | n"""
    ym, xynx = power(y, m), _x_conj(x, y, n)
    graph = GraphOfGroups()
    _rigid_pair(graph, (ym, xynx), w)
    for side in SIDES:
        rid, yid = f"R_{side}", f"Y_{side}"
        graph.vertices.append(_cyclic(yid, side_word(y, side)))
        graph.edges.append(_edge(rid, rid, side_word(power(y, n), side), side_word(xynx, side)))
        graph.edges.append(_edge(rid, yid, side_word(ym, side), side_word(ym, side)))
    return graph


def root_pulled(x: FreeWord, y: FreeWord, m: int, n: int, k: int, w: FreeWord) -> GraphOfGroups:
    """<y^m, x y^n x^-1> joined twice to <y^k>, which is joined to <y> along y^k"""
    ym, xynx, yk = power(y, m), _x_conj(x, y, n), power(y, k)
    graph = GraphOfGroups()
    _rigid_pair(graph, (ym, xynx), w)
    for side in SIDES:
        rid, kid, yid = f"R_{side}", f"K_{side}", f"Y_{side}"
        graph.vertices.append(_cyclic(kid, side_word(yk, side)))
        graph.vertices.append(_cyclic(yid, side_word(y, side)))
        graph.edges.append(_edge(rid, kid, side_word(ym, side), side_word(ym, side)))
        graph.edges.append(_edge(rid, kid, side_word(xynx, side), side_word(power(y, n), side)))
        graph.edges.append(_edge(kid, yid, side_word(yk, side), side_word(yk, side)))
    return graph
