"""Localization witnesses for L_K(E) as a ring of quotients of KE.

Flat-epimorphism certificates (finitely many s_i in KE and b_i in L_K(E) with r·s_i in KE and
sum s_i·b_i = 1), vertex expansions, domains of definition, Utumi denseness witnesses, dual
systems of free bases, scalar extraction and the Gabriel-membership search.
"""

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from itertools import groupby
from typing import FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from config.lab_config import SchreierConfig, SearchConfig
from services.digraph import Digraph, Path
from services.leavitt import LeavittElement, ReductionConfig, basis_monomials
from services.linalg import EchelonBasis
from services.quiver import QuiverElement
from services.scalars import Scalar
from services.schreier import FreeExpression, RightIdealPresentation, SchreierEngine
from utils.errors import BoundExhausted, InputError, InvariantViolation
from utils.logger import log_warning

logger = logging.getLogger("leavitt-lab")

EXCEPTIONAL_SINK_READING = "no path from v to the sink passes through a vertex on a closed path"


class SearchStatus(str, Enum):
    FOUND = "found"
    NOT_FOUND = "not-found"  # the bounded search finished without a witness
    UNKNOWN = "unknown"


@dataclass
class CertificatePair:
    s: QuiverElement
    b: LeavittElement


@dataclass
class Certificate:
    """Pairs (s_i, b_i) with sum s_i·b_i = 1 and, given a subject r, every r·s_i in KE."""
    config: ReductionConfig
    pairs: List[CertificatePair]
    subject: Optional[LeavittElement] = None
    ghost_free: bool = False
    sums_to_one: bool = False

    def verify(self) -> "Certificate":
        total = LeavittElement.zero(self.config)
        self.ghost_free = True
        for pair in self.pairs:
            s = LeavittElement.embed_quiver(pair.s, self.config)
            if self.subject is not None and not (self.subject * s).is_ghost_free():
                self.ghost_free = False
            total = total + s * pair.b
        self.sums_to_one = (total - LeavittElement.unit(self.config)).is_zero()
        return self

    @property
    def valid(self) -> bool:
        return self.ghost_free and self.sums_to_one


@dataclass
class ExpansionReport:
    """v = sum mu_i·nu_i* with nu_i = mu_i, plus the sink invariants of v."""
    vertex: str
    pairs: List[Tuple[Path, Path]]
    exceptional_sinks: List[str]
    bound: int
    reading: str = EXCEPTIONAL_SINK_READING


@dataclass
class DualSystem:
    basis: List[QuiverElement]
    duals: List[LeavittElement]
    coordinates: List[List[QuiverElement]]  # a_j = sum_i s_i·coordinates[i][j]
    basis_coordinates: List[List[QuiverElement]]  # s_i = sum_j a_j·basis_coordinates[j][i]
    orthogonal: bool = False
    complete: bool = False


@dataclass
class Codim1Presentation:
    constants: List[Scalar]
    generators: List[QuiverElement]  # r_i = a_i - k_i
    witnesses: List[FreeExpression]
    two_sided: bool


@dataclass
class ExtractionResult:
    status: SearchStatus
    mu: Optional[Path] = None
    nu: Optional[Path] = None
    scalar: Optional[Scalar] = None
    bound: int = 0


@dataclass
class GabrielResult:
    status: SearchStatus
    bound: int
    level: Optional[int] = None  # L with I^L inside R
    certificate: Optional[Certificate] = None
    length: Optional[int] = None  # greatest total length in the witness support


def sink_invariants(graph: Digraph, v: str) -> Tuple[List[str], int]:
    """(E^v_ex, N(v)): sinks reached from v only through vertices off closed paths, and the
    longest such path (0 when there is none)."""
    if not graph.has_vertex(v):
        raise InputError(f"unknown vertex {v!r}")
    g = graph.nx_graph
    reachable = {v} | nx.descendants(g, v)
    tainted = set()
    for c in graph.cyclic_vertices & reachable:
        tainted.add(c)
        tainted |= nx.descendants(g, c)
    exceptional = [u for u in graph.vertices if u in reachable and u not in tainted and graph.is_sink(u)]
    if not exceptional:
        return [], 0
    clean = g.subgraph(reachable - tainted)
    distance = {v: 0}
    for u in nx.topological_sort(clean):
        if u not in distance:
            continue
        for _, w in clean.out_edges(u):
            distance[w] = max(distance.get(w, 0), distance[u] + 1)
    return exceptional, max(distance[u] for u in exceptional)


def _support_length(certificate: Certificate) -> int:
    return max((m.total_length for pair in certificate.pairs for m in pair.b.terms), default=0)


class LocalizationLab:
    """Witness constructions over one Leavitt reduction config."""

    def __init__(self, config: ReductionConfig, search: Optional[SearchConfig] = None,
                 schreier: Optional[SchreierConfig] = None):
        self.config = config
        self.graph = config.graph
        self.field = config.field
        self.search = search or SearchConfig()
        self.schreier = schreier or SchreierConfig()

    def _require_leavitt(self):
        if not self.config.is_leavitt:
            raise InputError("this construction needs (CK2); use Leavitt mode")

    def _path(self, path: Path) -> LeavittElement:
        return LeavittElement.path(self.config, path)

    def _quiver(self, path: Path) -> QuiverElement:
        return QuiverElement.from_path(self.graph, self.field, path)

    def _require_loop_graph(self) -> int:
        if not self.graph.is_loop_graph:
            raise InputError("this construction is defined on the one-vertex loop graph L(1, n)")
        return len(self.graph.edges)

    # -- flat epimorphism --------------------------------------------------

    def vertex_expansion(self, r: LeavittElement, v: str) -> ExpansionReport:
        """Expand v by (CK2) until every path either ends in a sink or carries r into KE."""
        self._require_leavitt()
        subject = r.normal_form()
        limit = subject.ghost_degree()
        if limit > self.search.expansion_guard:
            raise BoundExhausted(f"ghost degree {limit} exceeds the expansion guard {self.search.expansion_guard}")
        frontier = deque([self.graph.vertex_path(v)])
        kept: List[Path] = []
        while frontier:
            mu = frontier.popleft()
            if self.graph.is_sink(mu.target) or (subject * self._path(mu)).is_ghost_free():
                kept.append(mu)
                continue
            if len(mu) >= limit:
                raise InvariantViolation(f"expansion path {mu} reached the ghost degree {limit} without clearing r")
            frontier.extend(self.graph.extend(mu, e.id) for e in self.graph.emitted(mu.target))
        total = LeavittElement.zero(self.config)
        for mu in kept:
            total = total + self._path(mu) * LeavittElement.ghost_path(self.config, mu)
        if not (total - LeavittElement.vertex(self.config, v)).is_zero():
            raise InvariantViolation(f"expansion of {v} does not sum to {v}")
        exceptional, bound = sink_invariants(self.graph, v)
        logger.info(f"expansion of {v}: {len(kept)} paths, E_ex={exceptional}, N={bound}")
        return ExpansionReport(v, [(mu, mu) for mu in kept], exceptional, bound)

    def flat_certificate(self, r: LeavittElement) -> Certificate:
        """s_i in KE, b_i in L_K(E) with r·s_i in KE and sum s_i·b_i = 1."""
        self._require_leavitt()
        subject = r.normal_form()
        if self.graph.is_loop_graph:
            paths = self.graph.enumerate_paths(subject.ghost_degree())
        else:
            paths = []
            for v in self.graph.vertices:
                paths.extend(mu for mu, _ in self.vertex_expansion(subject, v).pairs)
        pairs = [CertificatePair(self._quiver(mu), LeavittElement.ghost_path(self.config, mu)) for mu in paths]
        certificate = Certificate(self.config, pairs, subject).verify()
        if not certificate.valid:
            raise InvariantViolation("flat certificate failed verification")
        return certificate

    # -- domains ------------------------------------------------------------

    def dom_contains(self, q: LeavittElement, x: QuiverElement) -> bool:
        """q·x lies in KE."""
        return (q * LeavittElement.embed_quiver(x, self.config)).is_ghost_free()

    def dom_degree(self, q: LeavittElement) -> int:
        """Least l with q·I^l inside KE."""
        subject = q.normal_form()
        level = 0
        while True:
            if all((subject * self._path(m)).is_ghost_free() for m in self.graph.adic_generators(level)):
                return level
            if level > subject.ghost_degree():
                raise InvariantViolation(f"q·I^{level} still leaves KE")
            level += 1

    # -- denseness ------------------------------------------------------------

    @staticmethod
    def _ghost_heads(x: LeavittElement) -> FrozenSet[str]:
        """First edges of the ghost paths of x."""
        return frozenset(m.ghost.edges[0] for m in x.terms if m.ghost.edges)

    def _ordered_edges(self, vertex: str, heads: FrozenSet[str]) -> List[str]:
        edges = [e.id for e in self.graph.emitted(vertex)]
        return [e for e in edges if e in heads] + [e for e in edges if e not in heads]

    def shrink_to_quiver(self, r: LeavittElement) -> Path:
        """A path a with r·a nonzero and in KE."""
        current = r.normal_form()
        if not current:
            raise InputError("shrink_to_quiver needs a nonzero element")
        for v in self.graph.vertices:
            product = (current * LeavittElement.vertex(self.config, v)).normal_form()
            if product:
                mu, current = self.graph.vertex_path(v), product
                break
        while not current.is_ghost_free():
            heads = self._ghost_heads(current)
            edges = [e.id for e in self.graph.emitted(mu.target)]
            for e in edges:
                if e in heads:
                    continue
                product = (current * LeavittElement.edge(self.config, e)).normal_form()
                if product and product.is_ghost_free():
                    return self.graph.extend(mu, e)
            for e in self._ordered_edges(mu.target, heads):
                product = (current * LeavittElement.edge(self.config, e)).normal_form()
                if product:
                    mu, current = self.graph.extend(mu, e), product
                    break
            else:
                raise InvariantViolation(f"{current!r} vanishes on every edge out of {mu.target}")
        return mu

    def common_shrink(self, q1: LeavittElement, q2: LeavittElement) -> Path:
        """A path b with q1·b nonzero and q2·b in KE."""
        beta = self.shrink_to_quiver(q1)
        first = (q1 * self._path(beta)).normal_form()
        second = (q2 * self._path(beta)).normal_form()
        while not second.is_ghost_free():
            for e in self._ordered_edges(beta.target, self._ghost_heads(second)):
                step = LeavittElement.edge(self.config, e)
                product = (first * step).normal_form()
                if product:
                    beta, first = self.graph.extend(beta, e), product
                    second = (second * step).normal_form()
                    break
            else:
                raise InvariantViolation(f"q1·{beta} vanishes on every edge out of {beta.target}")
        return beta

    # -- L(1, n) -------------------------------------------------------------

    def dual_system(self, basis: Sequence[QuiverElement]) -> DualSystem:
        """Duals s_i* with s_j*·s_i = delta_ij and sum s_i·s_i* = 1 for a free basis of the arrow ideal."""
        self._require_leavitt()
        n = self._require_loop_graph()
        basis = list(basis)
        if len(basis) != n:
            raise InputError(f"a free basis of the arrow ideal has {n} elements, got {len(basis)}")
        arrows = RightIdealPresentation.arrow_ideal(self.graph, self.field)
        engine = SchreierEngine(arrows, self.schreier)
        for s in basis:
            if s.graph != self.graph or s.field != self.field:
                raise InputError("basis elements live over a different graph or field")
        arrow_ids = [e.id for e in self.graph.emitted(self.graph.vertices[0])]
        expressions = [engine.express(s).coefficients for s in basis]
        # s_i = sum_j a_j·basis_coordinates[j][i]
        basis_coordinates = [[expressions[i].get(j, QuiverElement.zero(self.graph, self.field)) for i in range(n)]
                             for j in range(n)]
        degree = self.search.dual_degree_bound
        echelon = EchelonBasis(self.field)
        unique = True
        for i, s in enumerate(basis):
            for eta in self.graph.iter_paths_upto(degree):
                if not echelon.add((s * self._quiver(eta)).terms, (i, eta)):
                    unique = False
        if not unique:
            raise InputError("the elements are linearly dependent over KE; not a free basis")
        coordinates = [[QuiverElement.zero(self.graph, self.field) for _ in range(n)] for _ in range(n)]
        for j, edge_id in enumerate(arrow_ids):
            solution = echelon.express(self._quiver(self.graph.path(edge_id)).terms)
            if solution is None:
                raise InputError(f"{edge_id} is not a combination of the elements "
                                 f"with coefficients of degree <= {degree}; not a basis")
            for (i, eta), c in solution.items():
                coordinates[i][j] = coordinates[i][j] + self._quiver(eta).scale(c)
        duals = []
        for i in range(n):
            dual = LeavittElement.zero(self.config)
            for j, edge_id in enumerate(arrow_ids):
                p = LeavittElement.embed_quiver(coordinates[i][j], self.config)
                dual = dual + p * LeavittElement.ghost_path(self.config, self.graph.path(edge_id))
            duals.append(dual.normal_form())
        system = DualSystem(basis, duals, coordinates, basis_coordinates)
        unit = LeavittElement.unit(self.config)
        embedded = [LeavittElement.embed_quiver(s, self.config) for s in basis]
        system.orthogonal = all(
            (duals[j] * embedded[i] - (unit if i == j else LeavittElement.zero(self.config))).is_zero()
            for i in range(n) for j in range(n))
        completeness = LeavittElement.zero(self.config)
        for s, dual in zip(embedded, duals):
            completeness = completeness + s * dual
        system.complete = (completeness - unit).is_zero()
        if not (system.orthogonal and system.complete):
            raise InvariantViolation("dual system identities failed")
        return system

    def codim1_presentation(self, presentation: RightIdealPresentation) -> Codim1Presentation:
        """Constants k_i = pi(a_i) and the free generators r_i = a_i - k_i of a codimension-1 ideal."""
        self._require_loop_graph()
        engine = SchreierEngine(presentation, self.schreier)
        codim = engine.codimension()
        if codim != 1:
            raise InputError(f"codimension is {codim if codim is not None else 'not finite'}, expected 1")
        vertex = self.graph.vertex_path(self.graph.vertices[0])
        constants, generators = [], []
        for e in self.graph.emitted(vertex.source):
            a = self._quiver(self.graph.path(e.id))
            k = engine.project(a).coefficient(vertex)
            constants.append(k)
            generators.append(a - QuiverElement.from_path(self.graph, self.field, vertex, k))
        free = [g.element for g in engine.free_generators()]
        if free != generators:
            raise InvariantViolation("the elements a_i - k_i are not the free generators of R")
        witnesses = [engine.express(r) for r in generators]
        return Codim1Presentation(constants, generators, witnesses, engine.is_two_sided())

    def scalar_extraction(self, a: LeavittElement, slack: Optional[int] = None) -> ExtractionResult:
        """Paths mu, nu with mu*·a·nu = k·1, k nonzero."""
        self._require_leavitt()
        self._require_loop_graph()
        subject = a.normal_form()
        if not subject:
            raise InputError("scalar extraction needs a nonzero element")
        if not subject.is_ghost_free():
            raise InputError("scalar extraction takes an element of KE")
        slack = self.search.extraction_slack if slack is None else slack
        bound = max(len(m.real) for m in subject.terms) + slack
        for nu in self.graph.iter_paths_upto(bound):
            right = (subject * self._path(nu)).normal_form()
            for m, _ in right.sorted_terms():
                if len(m.real) > bound:
                    continue
                k = (LeavittElement.ghost_path(self.config, m.real) * right).is_scalar_unit()
                if k is not None:
                    logger.info(f"extracted scalar with mu={m.real}, nu={nu}")
                    return ExtractionResult(SearchStatus.FOUND, m.real, nu, k, bound)
        return ExtractionResult(SearchStatus.NOT_FOUND, bound=bound)

    # -- Gabriel topology -------------------------------------------------------

    def _adic_witness(self, generators: Sequence[QuiverElement], bound: int) -> Optional[GabrielResult]:
        """b_i = sum_gamma y_i,gamma·gamma* from I^L inside R, with deg y <= bound - L."""
        for level in range(bound + 1):
            echelon = EchelonBasis(self.field)
            for i, g in enumerate(generators):
                for eta in self.graph.iter_paths_upto(bound - level):
                    echelon.add((g * self._quiver(eta)).terms, (i, eta))
            targets = self.graph.adic_generators(level)
            solutions = [echelon.express(self._quiver(gamma).terms) for gamma in targets]
            if any(s is None for s in solutions):
                continue
            witnesses = [LeavittElement.zero(self.config) for _ in generators]
            for gamma, solution in zip(targets, solutions):
                star = LeavittElement.ghost_path(self.config, gamma)
                for (i, eta), c in solution.items():
                    witnesses[i] = witnesses[i] + (self._path(eta) * star).scale(c)
            certificate = self._gabriel_certificate(generators, witnesses)
            logger.info(f"Gabriel witness from I^{level} inside R")
            return GabrielResult(SearchStatus.FOUND, bound, level, certificate, _support_length(certificate))
        return None

    def _gabriel_certificate(self, generators: Sequence[QuiverElement],
                             witnesses: Sequence[LeavittElement]) -> Certificate:
        pairs = [CertificatePair(g, b.normal_form()) for g, b in zip(generators, witnesses)]
        certificate = Certificate(self.config, pairs).verify()
        if not certificate.valid:
            raise InvariantViolation("Gabriel witness failed verification")
        return certificate

    def gabriel_membership(self, presentation: RightIdealPresentation, bound: Optional[int] = None) -> GabrielResult:
        """Search b_i with sum g_i·b_i = 1, each b_i supported on normal-form monomials of total length <= bound.

        Witnesses coming from a power of I inside R are tried first. Otherwise the linear system
        sum_i g_i·b_i = 1 is solved over all basis monomials, one total length at a time.
        """
        self._require_leavitt()
        if presentation.graph != self.graph or presentation.field != self.field:
            raise InputError("ideal and lab live over different graphs or fields")
        bound = self.search.gabriel_bound if bound is None else bound
        if bound < 0:
            raise InputError("the Gabriel bound must be non-negative")
        generators = list(presentation.generators)
        found = self._adic_witness(generators, bound)
        if found is not None:
            return found
        embedded = [LeavittElement.embed_quiver(g, self.config) for g in generators]
        unit = LeavittElement.unit(self.config).normal_form().terms
        echelon = EchelonBasis(self.field)
        for length, group in groupby(basis_monomials(self.config, bound), key=lambda m: m.total_length):
            for m in group:
                monomial = LeavittElement.from_monomial(self.config, m)
                for i, g in enumerate(embedded):
                    echelon.add((g * monomial).normal_form().terms, (i, m))
            solution = echelon.express(unit)
            if solution is None:
                continue
            witnesses = [LeavittElement.zero(self.config) for _ in generators]
            for (i, m), c in solution.items():
                witnesses[i] = witnesses[i] + LeavittElement.from_monomial(self.config, m, c)
            certificate = self._gabriel_certificate(generators, witnesses)
            logger.info(f"Gabriel witness on monomials of total length <= {length}")
            return GabrielResult(SearchStatus.FOUND, bound, None, certificate, _support_length(certificate))
        log_warning(f"no Gabriel witness within total length {bound}")
        return GabrielResult(SearchStatus.UNKNOWN, bound)
