"""The quiver algebra KE: finite K-combinations of paths."""

from typing import Dict, Iterable, Mapping, Optional, Tuple

from services.digraph import Digraph, Path
from services.scalars import Scalar, ScalarField
from utils.errors import InputError


class QuiverElement:
    """An element of KE with finite support and no stored zero coefficients."""

    __slots__ = ("graph", "field", "terms")

    def __init__(self, graph: Digraph, field: ScalarField, terms: Optional[Mapping[Path, Scalar]] = None):
        self.graph = graph
        self.field = field
        clean: Dict[Path, Scalar] = {}
        for path, coeff in (terms or {}).items():
            if coeff:
                clean[path] = coeff
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, graph: Digraph, field: ScalarField) -> "QuiverElement":
        return cls(graph, field)

    @classmethod
    def from_path(cls, graph: Digraph, field: ScalarField, path: Path, coeff: Scalar = None) -> "QuiverElement":
        return cls(graph, field, {path: field.one if coeff is None else coeff})

    @classmethod
    def unit(cls, graph: Digraph, field: ScalarField) -> "QuiverElement":
        """Sum of all vertices, the identity of KE."""
        return cls(graph, field, {graph.vertex_path(v): field.one for v in graph.vertices})

    @classmethod
    def from_pairs(cls, graph: Digraph, field: ScalarField, pairs: Iterable[Tuple[Path, Scalar]]) -> "QuiverElement":
        acc: Dict[Path, Scalar] = {}
        for path, coeff in pairs:
            acc[path] = acc.get(path, field.zero) + coeff
        return cls(graph, field, acc)

    # -- structure ---------------------------------------------------------

    def _check(self, other: "QuiverElement"):
        if not isinstance(other, QuiverElement):
            raise InputError(f"expected a quiver element, got {type(other).__name__}")
        if other.graph != self.graph:
            raise InputError("quiver elements over different graphs")
        if other.field != self.field:
            raise InputError("quiver elements over different fields")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, QuiverElement):
            return NotImplemented
        return self.graph == other.graph and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def coefficient(self, path: Path) -> Scalar:
        return self.terms.get(path, self.field.zero)

    def __repr__(self):
        body = " + ".join(f"{self.field.format(c)}*{p}" for p, c in self.sorted_terms()) or "0"
        return f"QuiverElement({body})"

    # -- linear structure --------------------------------------------------

    def __add__(self, other: "QuiverElement") -> "QuiverElement":
        self._check(other)
        acc = dict(self.terms)
        for path, coeff in other.terms.items():
            acc[path] = acc.get(path, self.field.zero) + coeff
        return QuiverElement(self.graph, self.field, acc)

    def __neg__(self) -> "QuiverElement":
        return QuiverElement(self.graph, self.field, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "QuiverElement") -> "QuiverElement":
        return self + (-other)

    def scale(self, k: Scalar) -> "QuiverElement":
        k = self.field.convert(k)
        return QuiverElement(self.graph, self.field, {p: k * c for p, c in self.terms.items()})

    def __rmul__(self, k) -> "QuiverElement":
        return self.scale(k)

    # -- multiplication ----------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, QuiverElement):
            return self.scale(other)
        self._check(other)
        acc: Dict[Path, Scalar] = {}
        zero = self.field.zero
        for p, c in self.terms.items():
            for q, d in other.terms.items():
                pq = self.graph.compose(p, q)
                if pq is not None:
                    acc[pq] = acc.get(pq, zero) + c * d
        return QuiverElement(self.graph, self.field, acc)

    # -- filtration --------------------------------------------------------

    def degree(self) -> Optional[int]:
        """Max path length in the support; None for 0."""
        if not self.terms:
            return None
        return max(len(p) for p in self.terms)

    def truncate(self, d: int) -> "QuiverElement":
        return QuiverElement(self.graph, self.field, {p: c for p, c in self.terms.items() if len(p) <= d})

    def right_vertex_component(self, v: str) -> "QuiverElement":
        """x·v."""
        return QuiverElement(self.graph, self.field, {p: c for p, c in self.terms.items() if p.target == v})
