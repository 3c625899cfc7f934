"""Finite digraphs E = (E^0, E^1, s, r) and their paths."""

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import networkx as nx

from utils.errors import InputError


class VertexKind(str, Enum):
    REGULAR = "regular"
    SINK = "sink"


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    range: str


@dataclass(frozen=True, order=True)
class Path:
    """A vertex (length 0) or a composable edge sequence.

    Ordering is lexicographic on (source vertex id, edge-id sequence).
    """
    source: str
    edges: Tuple[str, ...]
    target: str = field(compare=False)  # r(path); determined by source and edges

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    def is_head_of(self, other: "Path") -> bool:
        """True when other = self · t for some path t."""
        n = len(self.edges)
        return self.source == other.source and other.edges[:n] == self.edges

    def __str__(self) -> str:
        return self.source if self.is_vertex else ".".join(self.edges)


@dataclass(frozen=True)
class Digraph:
    """Immutable, validated finite digraph."""
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.vertices:
            raise InputError("a digraph needs at least one vertex")
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise InputError(f"duplicate vertex id {v!r}")
            seen.add(v)
        edge_ids = set()
        for e in self.edges:
            if e.id in seen or e.id in edge_ids:
                raise InputError(f"duplicate id {e.id!r}")
            edge_ids.add(e.id)
            for endpoint in (e.source, e.range):
                if endpoint not in seen:
                    raise InputError(f"edge {e.id!r} uses unknown vertex {endpoint!r}")

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[Tuple[str, str, str]], name: str = "") -> "Digraph":
        return cls(tuple(vertices), tuple(Edge(*e) for e in edges), name)

    # -- lookups -----------------------------------------------------------

    @cached_property
    def _edge_index(self) -> Dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _emitted(self) -> Dict[str, Tuple[Edge, ...]]:
        out: Dict[str, List[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.source].append(e)
        return {v: tuple(sorted(es, key=lambda e: e.id)) for v, es in out.items()}

    def has_vertex(self, v: str) -> bool:
        return v in self._emitted

    def has_edge(self, e: str) -> bool:
        return e in self._edge_index

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edge_index[edge_id]
        except KeyError:
            raise InputError(f"unknown edge {edge_id!r}")

    def emitted(self, v: str) -> Tuple[Edge, ...]:
        """s^{-1}(v), sorted by edge id."""
        try:
            return self._emitted[v]
        except KeyError:
            raise InputError(f"unknown vertex {v!r}")

    @property
    def sorted_edge_ids(self) -> List[str]:
        return sorted(self._edge_index)

    # -- classification ----------------------------------------------------

    def classify_vertex(self, v: str) -> VertexKind:
        return VertexKind.REGULAR if self.emitted(v) else VertexKind.SINK

    def is_sink(self, v: str) -> bool:
        return self.classify_vertex(v) is VertexKind.SINK

    @property
    def sinks(self) -> List[str]:
        return [v for v in self.vertices if not self._emitted[v]]

    @property
    def regular_vertices(self) -> List[str]:
        return [v for v in self.vertices if self._emitted[v]]

    @property
    def is_loop_graph(self) -> bool:
        """One vertex with n >= 1 loops: the base graph of L(1, n)."""
        return len(self.vertices) == 1 and len(self.edges) >= 1

    # -- paths -------------------------------------------------------------

    def vertex_path(self, v: str) -> Path:
        if not self.has_vertex(v):
            raise InputError(f"unknown vertex {v!r}")
        return Path(v, (), v)

    def path(self, *edge_ids: str) -> Path:
        """The path with the given edges; raises if they do not compose."""
        if not edge_ids:
            raise InputError("an edge path needs at least one edge")
        first = self.edge(edge_ids[0])
        current = first.range
        for eid in edge_ids[1:]:
            e = self.edge(eid)
            if e.source != current:
                raise InputError(f"edges do not compose at {eid!r}: {current!r} != {e.source!r}")
            current = e.range
        return Path(first.source, tuple(edge_ids), current)

    def parse_path(self, token: str) -> Path:
        """A vertex id or dot-separated edge ids."""
        if self.has_vertex(token):
            return self.vertex_path(token)
        return self.path(*[t.strip() for t in token.split(".")])

    def compose(self, p: Path, q: Path) -> Optional[Path]:
        """p·q when r(p) = s(q), else None."""
        if p.target != q.source:
            return None
        if p.is_vertex:
            return q
        if q.is_vertex:
            return p
        return Path(p.source, p.edges + q.edges, q.target)

    def extend(self, p: Path, edge_id: str) -> Optional[Path]:
        e = self.edge(edge_id)
        if e.source != p.target:
            return None
        return Path(p.source, p.edges + (edge_id,), e.range)

    def head(self, p: Path, i: int) -> Path:
        """First i edges; head(p, 0) = s(p)."""
        if not 0 <= i <= len(p):
            raise InputError(f"head index {i} out of range for a path of length {len(p)}")
        if i == 0:
            return Path(p.source, (), p.source)
        return Path(p.source, p.edges[:i], self.edge(p.edges[i - 1]).range)

    def tail(self, p: Path, i: int) -> Path:
        """Remaining edges after the first i; tail(p, |p|) = r(p)."""
        if not 0 <= i <= len(p):
            raise InputError(f"tail index {i} out of range for a path of length {len(p)}")
        if i == len(p):
            return Path(p.target, (), p.target)
        return Path(self.edge(p.edges[i]).source, p.edges[i:], p.target)

    def enumerate_paths(self, d: int) -> List[Path]:
        """All paths of length exactly d, sorted."""
        if d < 0:
            raise InputError("path length must be non-negative")
        layer = [self.vertex_path(v) for v in self.vertices]
        for _ in range(d):
            layer = [self.extend(p, e.id) for p in layer for e in self.emitted(p.target)]
        return sorted(layer)

    def iter_paths_upto(self, d: int) -> Iterator[Path]:
        for k in range(d + 1):
            yield from self.enumerate_paths(k)

    def adic_generators(self, level: int) -> List[Path]:
        """Generators of I^level: paths of length level and shorter paths ending in sinks."""
        gens = []
        for k in range(level):
            gens.extend(p for p in self.enumerate_paths(k) if self.is_sink(p.target))
        gens.extend(self.enumerate_paths(level))
        return gens

    # -- graph-theoretic queries -------------------------------------------

    @cached_property
    def nx_graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            g.add_edge(e.source, e.range, key=e.id)
        return g

    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.nx_graph)

    def longest_path_length(self) -> Optional[int]:
        if not self.is_acyclic():
            return None
        return nx.dag_longest_path_length(self.nx_graph)

    @cached_property
    def cyclic_vertices(self) -> frozenset:
        """Vertices lying on a closed path."""
        on_cycle = set()
        for component in nx.strongly_connected_components(self.nx_graph):
            if len(component) > 1:
                on_cycle.update(component)
        for e in self.edges:
            if e.source == e.range:
                on_cycle.add(e.source)
        return frozenset(on_cycle)

    def path_algebra_dimension(self) -> Optional[int]:
        """dim_K KE: the number of all paths, or None when E has a cycle."""
        if not self.is_acyclic():
            return None
        total = 0
        for d in range(self.longest_path_length() + 1):
            total += len(self.enumerate_paths(d))
        return total

    def adic_is_hausdorff(self) -> bool:
        """The I-adic topology is Hausdorff iff there are no sinks."""
        return not self.sinks


def one_vertex_graph(n: int, vertex: str = "v", prefix: str = "a") -> Digraph:
    """The base graph of L(1, n): one vertex with loops a1..an."""
    return Digraph.build([vertex], [(f"{prefix}{i}", vertex, vertex) for i in range(1, n + 1)],
                         name=f"L(1,{n})")


def dynkin_graph(n: int) -> Digraph:
    """A_n: v1 -> v2 -> ... -> vn with edges a1..a(n-1)."""
    vertices = [f"v{i}" for i in range(1, n + 1)]
    edges = [(f"a{i}", f"v{i}", f"v{i + 1}") for i in range(1, n)]
    return Digraph.build(vertices, edges, name=f"A{n}")
