"""Right ideals of the quiver algebra KE.

A right ideal R = sum g_i·KE is handled through its quotient module KE/R, enumerated as a
coset table: one coset per vertex, generator relations imposed by elimination, then closure
under the right action of the edges. From the table come membership, codimension, a strong
Schreier basis B with the projection pi onto span(B), and the free generators
u_{mu,a} = mu·a - pi(mu·a) of R.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from config.lab_config import SchreierConfig
from services.digraph import Digraph, Path
from services.linalg import EchelonBasis, Vector, add_into
from services.quiver import QuiverElement
from services.scalars import Scalar, ScalarField
from utils.errors import BoundExhausted, InputError, InvariantViolation

logger = logging.getLogger("leavitt-lab")

CosetKey = Tuple[int, Tuple[str, ...]]


class TableStatus(str, Enum):
    FINITE_CODIM = "finite-codim"
    EXCEEDED_BOUND = "exceeded-bound"


class _CosetOverflow(Exception):
    pass


@dataclass(frozen=True)
class RightIdealPresentation:
    """R = sum of g·KE over the generators g."""
    graph: Digraph
    field: ScalarField
    generators: Tuple[QuiverElement, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.graph != self.graph or g.field != self.field:
                raise InputError("ideal generators must live over the presentation's graph and field")
            if not g:
                raise InputError("ideal generators must be nonzero")

    @classmethod
    def arrow_ideal(cls, graph: Digraph, field: ScalarField) -> "RightIdealPresentation":
        """The ideal generated by all edges."""
        return cls(graph, field, tuple(QuiverElement.from_path(graph, field, graph.path(e.id)) for e in graph.edges))


@dataclass
class Coset:
    index: int
    representative: Path

    @property
    def vertex(self) -> str:
        return self.representative.target


class QuotientTable:
    """Coset enumeration of KE/R over the ground field.

    Cosets are eliminated by linear relations; a replaced coset points to a combination of
    earlier cosets. The relation phase imposes g·w = 0 for every generator g and vertex w;
    the closure phase defines edge actions breadth-first up to the degree bound.
    """

    def __init__(self, presentation: RightIdealPresentation, degree_bound: int = 32, max_cosets: int = 4096):
        if degree_bound < 1:
            raise InputError("degree bound must be at least 1")
        self.presentation = presentation
        self.graph = presentation.graph
        self.field = presentation.field
        self.degree_bound = degree_bound
        self.max_cosets = max_cosets
        self._cosets: List[Coset] = []
        self._live: set = set()
        self._replaced: Dict[int, Dict[int, Scalar]] = {}
        self._actions: Dict[Tuple[int, str], Dict[int, Scalar]] = {}
        self._vertex_coset: Dict[str, int] = {}
        self.relations_complete = False
        self.closed = False
        self._build()

    # -- construction ------------------------------------------------------

    def _new_coset(self, representative: Path) -> int:
        if len(self._cosets) >= self.max_cosets:
            raise _CosetOverflow()
        index = len(self._cosets)
        self._cosets.append(Coset(index, representative))
        self._live.add(index)
        return index

    def _canon(self, vector: Dict[int, Scalar]) -> Dict[int, Scalar]:
        out: Dict[int, Scalar] = {}
        stack = list(vector.items())
        while stack:
            i, c = stack.pop()
            replacement = self._replaced.get(i)
            if replacement is None:
                out[i] = out[i] + c if i in out else c
            else:
                stack.extend((j, c * d) for j, d in replacement.items())
        return {i: c for i, c in out.items() if c}

    def _act_coset(self, i: int, edge_id: str, define: bool) -> Optional[Dict[int, Scalar]]:
        key = (i, edge_id)
        if key in self._actions:
            return self._canon(self._actions[key])
        if not define:
            return None
        j = self._new_coset(self.graph.extend(self._cosets[i].representative, edge_id))
        self._actions[key] = {j: self.field.one}
        return {j: self.field.one}

    def _act(self, vector: Dict[int, Scalar], edge_id: str) -> Dict[int, Scalar]:
        source = self.graph.edge(edge_id).source
        out: Dict[int, Scalar] = {}
        for i, c in self._canon(vector).items():
            if self._cosets[i].vertex == source:
                add_into(out, self._act_coset(i, edge_id, define=True), c)
        return out

    def _element_vector(self, x: QuiverElement) -> Dict[int, Scalar]:
        out: Dict[int, Scalar] = {}
        for path, c in x.terms.items():
            vector = {self._vertex_coset[path.source]: self.field.one}
            for edge_id in path.edges:
                vector = self._act(vector, edge_id)
            add_into(out, self._canon(vector), c)
        return out

    def _eliminate(self, relation: Dict[int, Scalar]):
        queue = deque([relation])
        while queue:
            vector = self._canon(queue.popleft())
            if not vector:
                continue
            p = max(vector)
            inverse = -self.field.one / vector.pop(p)
            replacement = {j: inverse * d for j, d in vector.items()}
            self._replaced[p] = replacement
            self._live.discard(p)
            logger.debug(f"coset {p} ({self._cosets[p].representative}) eliminated")
            for e in self.graph.emitted(self._cosets[p].vertex):
                image = self._actions.pop((p, e.id), None)
                if image is not None:
                    consequence = self._act(replacement, e.id)
                    add_into(consequence, image, -self.field.one)
                    queue.append(consequence)

    def _close(self):
        i = 0
        while i < len(self._cosets):
            coset = self._cosets[i]
            if i in self._live and len(coset.representative) < self.degree_bound:
                for e in self.graph.emitted(coset.vertex):
                    self._act_coset(i, e.id, define=True)
            i += 1
        self.closed = all((i, e.id) in self._actions
                          for i in self._live for e in self.graph.emitted(self._cosets[i].vertex))

    def _build(self):
        for v in self.graph.vertices:
            self._vertex_coset[v] = self._new_coset(self.graph.vertex_path(v))
        try:
            for g in self.presentation.generators:
                for w in self.graph.vertices:
                    part = g.right_vertex_component(w)
                    if part:
                        self._eliminate(self._element_vector(part))
            self.relations_complete = True
            self._close()
        except _CosetOverflow:
            logger.warning(f"quotient table stopped at {self.max_cosets} cosets")
        for g in self.presentation.generators if self.relations_complete else ():
            if self.image(g):
                raise InvariantViolation(f"generator {g!r} does not vanish in the quotient table")
        logger.info(f"quotient table: {len(self._live)} live cosets, status {self.status.value}")

    # -- queries -----------------------------------------------------------

    @property
    def status(self) -> TableStatus:
        return TableStatus.FINITE_CODIM if self.closed else TableStatus.EXCEEDED_BOUND

    @property
    def basis(self) -> List[int]:
        return sorted(self._live)

    @property
    def coset_count(self) -> int:
        return len(self._cosets)

    def codimension(self) -> Optional[int]:
        return len(self._live) if self.closed else None

    def coset(self, i: int) -> Coset:
        return self._cosets[i]

    def action(self, i: int, edge_id: str) -> Optional[Dict[int, Scalar]]:
        """Image of the live coset i under the edge, in live-coset coordinates."""
        if self._cosets[i].vertex != self.graph.edge(edge_id).source:
            return {}
        return self._act_coset(i, edge_id, define=False)

    def path_image(self, path: Path) -> Vector:
        """Coordinates of path + R. Undefined actions stay symbolic as (coset, remaining word)."""
        if not self.relations_complete:
            raise BoundExhausted("the relation phase did not finish; membership is undecided")
        out: Vector = {}
        vector = self._canon({self._vertex_coset[path.source]: self.field.one})
        for position, edge_id in enumerate(path.edges):
            source = self.graph.edge(edge_id).source
            following: Dict[int, Scalar] = {}
            for i, c in vector.items():
                if self._cosets[i].vertex != source:
                    continue
                image = self._act_coset(i, edge_id, define=False)
                if image is None:
                    add_into(out, {(i, path.edges[position:]): c}, self.field.one)
                else:
                    add_into(following, image, c)
            vector = following
        add_into(out, {(i, ()): c for i, c in vector.items()}, self.field.one)
        return out

    def image(self, x: QuiverElement) -> Vector:
        out: Vector = {}
        for path, c in x.terms.items():
            add_into(out, self.path_image(path), c)
        return out

    def contains(self, x: QuiverElement) -> bool:
        """x in R."""
        return not self.image(x)


@dataclass
class SchreierBasis:
    """Head-closed path basis of a complement of R, level n holding paths of length n."""
    levels: List[List[Path]]
    partial: bool = False

    @property
    def paths(self) -> List[Path]:
        return [p for level in self.levels for p in level]

    def __len__(self) -> int:
        return sum(len(level) for level in self.levels)

    def __contains__(self, path: Path) -> bool:
        return len(path) < len(self.levels) and path in self.levels[len(path)]


@dataclass(frozen=True)
class FreeGenerator:
    """u = mu·a - pi(mu·a); edge is None for a vertex generator u = v - pi(v)."""
    mu: Path
    edge: Optional[str]
    element: QuiverElement
    vertex: str  # u = u·vertex

    @property
    def label(self) -> str:
        return f"u[{self.mu},{self.edge}]" if self.edge else f"u[{self.mu}]"


@dataclass
class FreeExpression:
    """x = sum of generators[i]·coefficients[i]."""
    generators: List[FreeGenerator]
    coefficients: Dict[int, QuiverElement] = field(default_factory=dict)

    def recompose(self) -> Optional[QuiverElement]:
        total = None
        for i, c in self.coefficients.items():
            term = self.generators[i].element * c
            total = term if total is None else total + term
        return total

    def by_label(self) -> Dict[str, QuiverElement]:
        return {self.generators[i].label: c for i, c in sorted(self.coefficients.items())}


class SchreierEngine:
    """Schreier bases and free generating sets of one right ideal."""

    def __init__(self, presentation: RightIdealPresentation, config: Optional[SchreierConfig] = None):
        self.presentation = presentation
        self.config = config or SchreierConfig()
        self.graph = presentation.graph
        self.field = presentation.field
        self._projection_cache: Dict[Path, QuiverElement] = {}

    @cached_property
    def table(self) -> QuotientTable:
        return QuotientTable(self.presentation, self.config.degree_bound, self.config.max_cosets)

    def _quiver(self, path: Path) -> QuiverElement:
        return QuiverElement.from_path(self.graph, self.field, path)

    def contains(self, x: QuiverElement) -> bool:
        return self.table.contains(x)

    def codimension(self) -> Optional[int]:
        return self.table.codimension()

    def is_finite_codimensional(self) -> bool:
        return self.table.closed

    def _require_closed(self):
        if not self.table.closed:
            raise BoundExhausted(
                f"R is not finite-codimensional within degree bound {self.table.degree_bound}")

    # -- Schreier basis ------------------------------------------------------

    def _build_basis(self, cap: Optional[int]) -> Tuple[SchreierBasis, EchelonBasis]:
        table = self.table
        echelon = EchelonBasis(self.field)
        levels: List[List[Path]] = []
        level = [p for p in sorted(self.graph.vertex_path(v) for v in self.graph.vertices)
                 if echelon.add(table.path_image(p), p)]
        while level:
            levels.append(level)
            logger.debug(f"Schreier level {len(levels) - 1}: {[str(p) for p in level]}")
            if cap is not None and len(levels) > cap:
                break
            candidates = sorted(self.graph.extend(b, e.id) for b in level for e in self.graph.emitted(b.target))
            level = [c for c in candidates if echelon.add(table.path_image(c), c)]
        basis = SchreierBasis(levels, partial=not table.closed)
        if table.closed and len(basis) != table.codimension():
            raise InvariantViolation(f"Schreier basis has {len(basis)} paths, codimension is {table.codimension()}")
        return basis, echelon

    @cached_property
    def _closed_basis(self) -> Tuple[SchreierBasis, EchelonBasis]:
        self._require_closed()
        basis, echelon = self._build_basis(None)
        logger.info(f"Schreier basis with {len(basis)} paths over {len(basis.levels)} levels")
        return basis, echelon

    def schreier_basis(self, cap: Optional[int] = None) -> SchreierBasis:
        """The strong Schreier basis; a non-closed table needs a level cap and gives a partial basis."""
        if self.table.closed:
            return self._closed_basis[0]
        cap = cap if cap is not None else self.config.basis_cap
        if cap is None:
            raise BoundExhausted(
                f"R is not finite-codimensional within degree bound {self.table.degree_bound}; "
                "pass a level cap for a partial basis")
        return self._build_basis(cap)[0]

    # -- projection ----------------------------------------------------------

    def project(self, x: QuiverElement) -> QuiverElement:
        """pi(x): the unique element of span(B) with x - pi(x) in R."""
        _, echelon = self._closed_basis
        coefficients = echelon.express(self.table.image(x))
        if coefficients is None:
            raise InvariantViolation("the Schreier basis does not span the quotient")
        return QuiverElement(self.graph, self.field, coefficients)

    def _project_path(self, path: Path) -> QuiverElement:
        if path not in self._projection_cache:
            self._projection_cache[path] = self.project(self._quiver(path))
        return self._projection_cache[path]

    # -- free generators -----------------------------------------------------

    @cached_property
    def _free_generators(self) -> List[FreeGenerator]:
        basis, _ = self._closed_basis
        generators = []
        ground = set(basis.levels[0]) if basis.levels else set()
        for v in self.graph.vertices:
            vp = self.graph.vertex_path(v)
            if vp not in ground:
                u = self._quiver(vp) - self._project_path(vp)
                generators.append(FreeGenerator(vp, None, u, v))
        for mu in basis.paths:
            for e in self.graph.emitted(mu.target):
                mu_a = self.graph.extend(mu, e.id)
                if mu_a in basis:
                    continue
                u = self._quiver(mu_a) - self._project_path(mu_a)
                if u:
                    generators.append(FreeGenerator(mu, e.id, u, e.range))
        logger.info(f"{len(generators)} free generators")
        return generators

    def free_generators(self) -> List[FreeGenerator]:
        return list(self._free_generators)

    @cached_property
    def _generator_index(self) -> Dict[Tuple[Path, Optional[str]], int]:
        return {(g.mu, g.edge): i for i, g in enumerate(self._free_generators)}

    def express(self, x: QuiverElement) -> FreeExpression:
        """Coefficients c_u with x = sum u·c_u, by telescoping each path of x."""
        if x.graph != self.graph or x.field != self.field:
            raise InputError("element and ideal live over different graphs or fields")
        self._require_closed()
        if not self.contains(x):
            raise InputError(f"{x!r} is not in the ideal")
        basis, _ = self._closed_basis
        generators = self._free_generators
        index = self._generator_index
        expression = FreeExpression(generators)
        coefficients: Dict[int, QuiverElement] = {}

        def add(i: int, coefficient: QuiverElement):
            total = coefficients[i] + coefficient if i in coefficients else coefficient
            if total:
                coefficients[i] = total
            else:
                coefficients.pop(i, None)

        for beta, c in x.terms.items():
            start = self.graph.vertex_path(beta.source)
            if start not in basis:
                add(index[(start, None)], self._quiver(beta).scale(c))
            for j, edge_id in enumerate(beta.edges):
                rest = self._quiver(self.graph.tail(beta, j + 1))
                for gamma, k in self._project_path(self.graph.head(beta, j)).terms.items():
                    extended = self.graph.extend(gamma, edge_id)
                    if extended is None or extended in basis:
                        continue
                    add(index[(gamma, edge_id)], rest.scale(c * k))
        expression.coefficients = coefficients
        recomposed = expression.recompose() or QuiverElement.zero(self.graph, self.field)
        if recomposed != x:
            raise InvariantViolation("free-basis expression does not recompose to the element")
        return expression

    def rank(self) -> int:
        return len(self._free_generators)

    def schreier_lewin_check(self) -> bool:
        """rank = codim·(n - 1) + 1 on the one-vertex n-loop graph."""
        if not self.graph.is_loop_graph:
            raise InputError("the Schreier-Lewin formula applies to the one-vertex loop graph")
        n = len(self.graph.edges)
        return self.rank() == self.codimension() * (n - 1) + 1

    # -- topology and sidedness ----------------------------------------------

    def open_adic_degree(self, l_max: int) -> Optional[int]:
        """Least l <= l_max with I^l contained in R, else None."""
        for level in range(l_max + 1):
            if all(self.contains(self._quiver(p)) for p in self.graph.adic_generators(level)):
                logger.info(f"I^{level} is contained in R")
                return level
        return None

    def is_two_sided(self) -> bool:
        """Left multiplication by every vertex and edge keeps a generating set inside R."""
        if self.table.closed:
            generators = [g.element for g in self._free_generators]
        else:
            generators = list(self.presentation.generators)
        left = [self._quiver(self.graph.vertex_path(v)) for v in self.graph.vertices]
        left += [self._quiver(self.graph.path(e.id)) for e in self.graph.edges]
        for g in generators:
            for a in left:
                product = a * g
                if product and not self.contains(product):
                    logger.info(f"{a!r}·{g!r} leaves the ideal")
                    return False
        return True
