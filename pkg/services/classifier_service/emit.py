"""
Serialization of classifier results: the JSON classification record and
a DOT digraph of the graph of groups.
"""

from typing import Optional

from services.classifier_service.classifier import JsjClassification
from services.classifier_service.graph_of_groups import GraphOfGroups, Vertex
from services.shared.errors import FreeGroupError
from services.shared.models import (
    ClassificationRecord,
    EdgeRecord,
    GraphRecord,
    ParamsRecord,
    VertexRecord,
    WitnessRecord,
)

FORMATS = ("json", "dot")

_DOT_SHAPES = {"rigid": "box", "qh": "ellipse", "cyclic": "circle"}


def graph_record(graph: GraphOfGroups) -> GraphRecord:
    vertices = [
        VertexRecord(
            id=v.id,
            kind=v.kind,
            orientable=v.orientable,
            genus=v.genus,
            boundaries=v.boundary_count,
            basis=[u.text for u in v.words],
        )
        for v in graph.vertices
    ]
    edges = [
        EdgeRecord(
            from_=e.source,
            to=e.target,
            loop=e.loop,
            image_from=e.image_source.text,
            image_to=e.image_target.text,
        )
        for e in graph.edges
    ]
    return GraphRecord(vertices=vertices, edges=edges)


def to_record(text: str, result: JsjClassification,
              graph: Optional[GraphOfGroups]) -> ClassificationRecord:
    witness = None
    if result.chain is not None:
        witness = WitnessRecord(
            chain=result.chain.describe(),
            basis=[u.text for u in result.basis] if result.basis else [],
        )
    return ClassificationRecord(
        input=text,
        verdict=result.verdict,
        params=ParamsRecord(n=result.n, m=result.m, k=result.k),
        witness=witness,
        bounded=result.bounded,
        graph=graph_record(graph) if graph is not None else None,
    )


def emit_json(text: str, result: JsjClassification, graph: Optional[GraphOfGroups]) -> str:
    return to_record(text, result, graph).model_dump_json(indent=2, by_alias=True)


def _vertex_label(v: Vertex) -> str:
    if v.kind == "qh":
        orientation = "orientable" if v.orientable else "non-orientable"
        return f"{v.id}\\n{orientation}, genus {v.genus}, {v.boundary_count} boundaries"
    if v.kind == "cyclic":
        return f"{v.id}\\n<{v.words[0].text}>"
    return f"{v.id}\\n<{', '.join(u.text for u in v.words)}>"


def emit_dot(text: str, result: JsjClassification, graph: Optional[GraphOfGroups]) -> str:
    if graph is None:
        raise FreeGroupError(f"verdict {result.verdict} carries no graph of groups")
    title = result.verdict
    if result.variant:
        title += f" ({result.variant})"
    lines = [
        "digraph G {",
        f'  label="{text}: {title}";',
    ]
    for v in graph.vertices:
        lines.append(f'  "{v.id}" [shape={_DOT_SHAPES[v.kind]}, label="{_vertex_label(v)}"];')
    for e in graph.edges:
        lines.append(f'  "{e.source}" -> "{e.target}" '
                     f'[label="{e.image_source.text} = {e.image_target.text}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_graph(text: str, result: JsjClassification, graph: Optional[GraphOfGroups],
               fmt: str = "json") -> str:
    if fmt == "json":
        return emit_json(text, result, graph) + "\n"
    if fmt == "dot":
        return emit_dot(text, result, graph)
    raise FreeGroupError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
