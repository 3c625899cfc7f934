"""The line-based graph format and its JSON mirror.

    # comment
    graph NAME
    vertex ID
    edge ID SOURCE RANGE
"""

import re
from pathlib import Path as FilePath
from typing import Dict, List, Tuple, Union

from models.model import GraphDocumentModel, GraphEdgeDocument
from services.digraph import Digraph
from utils.errors import InputError

_TOKEN = re.compile(r"\S+")


def parse_graph(text: str) -> Digraph:
    name = ""
    vertices: List[str] = []
    edges: List[Tuple[str, str, str]] = []
    seen: Dict[str, int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(raw.split("#", 1)[0])]
        if not tokens:
            continue
        (keyword, column), args = tokens[0], tokens[1:]
        if keyword == "graph":
            if len(args) != 1:
                raise InputError("expected 'graph NAME'", number, column)
            name = args[0][0]
        elif keyword in ("vertex", "edge"):
            arity = 1 if keyword == "vertex" else 3
            if len(args) != arity:
                usage = "vertex ID" if keyword == "vertex" else "edge ID SOURCE RANGE"
                raise InputError(f"expected '{usage}'", number, column)
            ident, ident_column = args[0]
            if ident in seen:
                raise InputError(f"duplicate id {ident!r} (first declared on line {seen[ident]})", number, ident_column)
            if keyword == "edge":
                for endpoint, endpoint_column in args[1:]:
                    if endpoint not in vertices:
                        raise InputError(f"unknown endpoint {endpoint!r}; declare it with 'vertex'",
                                         number, endpoint_column)
                edges.append((ident, args[1][0], args[2][0]))
            else:
                vertices.append(ident)
            seen[ident] = number
        else:
            raise InputError(f"unknown keyword {keyword!r}", number, column)
    if not vertices:
        raise InputError("a graph needs at least one vertex")
    return Digraph.build(vertices, edges, name=name)


def load_graph(path: Union[str, FilePath]) -> Digraph:
    try:
        text = FilePath(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read graph file {path}: {e.strerror}")
    return parse_graph(text)


def print_graph(graph: Digraph) -> str:
    lines = [f"graph {graph.name}"] if graph.name else []
    lines += [f"vertex {v}" for v in graph.vertices]
    lines += [f"edge {e.id} {e.source} {e.range}" for e in graph.edges]
    return "\n".join(lines) + "\n"


def graph_document(graph: Digraph) -> GraphDocumentModel:
    return GraphDocumentModel(
        name=graph.name,
        vertices=list(graph.vertices),
        edges=[GraphEdgeDocument(id=e.id, source=e.source, range=e.range) for e in graph.edges],
    )


def graph_from_document(document: GraphDocumentModel) -> Digraph:
    return Digraph.build(document.vertices, [(e.id, e.source, e.range) for e in document.edges], name=document.name)
