"""Elements of the Leavitt path algebra L_K(E) and the Cohn path algebra C_K(E).

Every element is a finite combination of monomials alpha·beta* with r(alpha) = r(beta).
Multiplication applies (CK1). In Leavitt mode the normal form applies (CK2) as the rewrite

    e·e*  ->  v - sum_{f in s^-1(v), f != e} f·f*

at the junction of every monomial whose real and ghost paths both end in the designated
edge e of the regular vertex v = s(e). The designated edge of v is the lexicographically
greatest edge id in s^-1(v).
"""

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Optional, Tuple

from services.digraph import Digraph, Path
from services.quiver import QuiverElement
from services.scalars import Scalar, ScalarField
from utils.errors import InputError

logger = logging.getLogger("leavitt-lab")


class ReductionMode(str, Enum):
    LEAVITT = "leavitt"
    COHN = "cohn"


@dataclass(frozen=True)
class ReductionConfig:
    graph: Digraph
    field: ScalarField
    mode: ReductionMode = ReductionMode.LEAVITT
    designated: Tuple[Tuple[str, str], ...] = None  # (regular vertex, edge) pairs

    def __post_init__(self):
        if self.designated is None:
            chosen = tuple((v, self.graph.emitted(v)[-1].id) for v in self.graph.regular_vertices)
            object.__setattr__(self, "designated", chosen)
        else:
            chosen = tuple(sorted(dict(self.designated).items()))
            for v, e in chosen:
                if self.graph.edge(e).source != v:
                    raise InputError(f"designated edge {e!r} is not emitted by {v!r}")
            missing = set(self.graph.regular_vertices) - {v for v, _ in chosen}
            if missing:
                raise InputError(f"no designated edge for regular vertices {sorted(missing)}")
            object.__setattr__(self, "designated", chosen)
        object.__setattr__(self, "_designated_map", dict(self.designated))

    def designated_edge(self, v: str) -> Optional[str]:
        return self._designated_map.get(v)

    @property
    def is_leavitt(self) -> bool:
        return self.mode is ReductionMode.LEAVITT


@dataclass(frozen=True, order=True)
class LeavittMonomial:
    """alpha·beta* with r(alpha) = r(beta)."""
    real: Path
    ghost: Path

    def __post_init__(self):
        if self.real.target != self.ghost.target:
            raise InputError(f"r({self.real}) != r({self.ghost}): the monomial is zero")

    @property
    def source(self) -> str:
        """Left unit: s(alpha)."""
        return self.real.source

    @property
    def end(self) -> str:
        """Right unit: s(beta)."""
        return self.ghost.source

    @property
    def degree(self) -> int:
        return len(self.real) - len(self.ghost)

    @property
    def total_length(self) -> int:
        return len(self.real) + len(self.ghost)

    def sort_key(self):
        return (self.total_length, self.real, self.ghost)

    def star(self) -> "LeavittMonomial":
        return LeavittMonomial(self.ghost, self.real)


def vertex_monomial(graph: Digraph, v: str) -> LeavittMonomial:
    p = graph.vertex_path(v)
    return LeavittMonomial(p, p)


def real_monomial(graph: Digraph, path: Path) -> LeavittMonomial:
    return LeavittMonomial(path, graph.vertex_path(path.target))


def multiply_monomials(graph: Digraph, m: LeavittMonomial, n: LeavittMonomial) -> Optional[LeavittMonomial]:
    """(alpha beta*)(gamma delta*) under (CK1); None when the product is 0."""
    alpha, beta = m.real, m.ghost
    gamma, delta = n.real, n.ghost
    if beta.is_head_of(gamma):
        rest = graph.tail(gamma, len(beta))
        return LeavittMonomial(graph.compose(alpha, rest), delta)
    if gamma.is_head_of(beta):
        rest = graph.tail(beta, len(gamma))
        return LeavittMonomial(alpha, graph.compose(delta, rest))
    return None


class LeavittElement:
    """A finite K-combination of monomials over a reduction configuration."""

    __slots__ = ("config", "terms", "reduced")

    def __init__(self, config: ReductionConfig, terms: Optional[Mapping[LeavittMonomial, Scalar]] = None,
                 reduced: bool = False):
        self.config = config
        self.terms: Dict[LeavittMonomial, Scalar] = {m: c for m, c in (terms or {}).items() if c}
        self.reduced = reduced

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, config: ReductionConfig) -> "LeavittElement":
        return cls(config, reduced=True)

    @classmethod
    def from_monomial(cls, config: ReductionConfig, monomial: LeavittMonomial, coeff: Scalar = None) -> "LeavittElement":
        coeff = config.field.one if coeff is None else config.field.convert(coeff)
        return cls(config, {monomial: coeff})

    @classmethod
    def vertex(cls, config: ReductionConfig, v: str) -> "LeavittElement":
        return cls.from_monomial(config, vertex_monomial(config.graph, v))

    @classmethod
    def path(cls, config: ReductionConfig, path: Path) -> "LeavittElement":
        return cls.from_monomial(config, real_monomial(config.graph, path))

    @classmethod
    def edge(cls, config: ReductionConfig, edge_id: str) -> "LeavittElement":
        return cls.path(config, config.graph.path(edge_id))

    @classmethod
    def ghost_path(cls, config: ReductionConfig, path: Path) -> "LeavittElement":
        """path*."""
        return cls.from_monomial(config, real_monomial(config.graph, path).star())

    @classmethod
    def unit(cls, config: ReductionConfig) -> "LeavittElement":
        one = config.field.one
        return cls(config, {vertex_monomial(config.graph, v): one for v in config.graph.vertices}, reduced=True)

    @classmethod
    def scalar(cls, config: ReductionConfig, k) -> "LeavittElement":
        return cls.unit(config).scale(k)

    @classmethod
    def embed_quiver(cls, x: QuiverElement, config: ReductionConfig) -> "LeavittElement":
        """KE -> L_K(E): alpha |-> alpha·r(alpha)*."""
        if x.graph != config.graph or x.field != config.field:
            raise InputError("quiver element and reduction config disagree on graph or field")
        return cls(config, {real_monomial(config.graph, p): c for p, c in x.terms.items()}, reduced=True)

    # -- structure ---------------------------------------------------------

    @property
    def graph(self) -> Digraph:
        return self.config.graph

    @property
    def field(self) -> ScalarField:
        return self.config.field

    def _check(self, other: "LeavittElement"):
        if not isinstance(other, LeavittElement):
            raise InputError(f"expected a Leavitt element, got {type(other).__name__}")
        if other.config != self.config:
            raise InputError("Leavitt elements over different reduction configs")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LeavittElement):
            return NotImplemented
        return self.config == other.config and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> List[Tuple[LeavittMonomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __repr__(self):
        body = " + ".join(f"{self.field.format(c)}*({m.real},{m.ghost}*)" for m, c in self.sorted_terms()) or "0"
        return f"LeavittElement({body})"

    # -- linear structure --------------------------------------------------

    def __add__(self, other: "LeavittElement") -> "LeavittElement":
        self._check(other)
        acc = dict(self.terms)
        zero = self.field.zero
        for m, c in other.terms.items():
            acc[m] = acc.get(m, zero) + c
        return LeavittElement(self.config, acc)

    def __neg__(self) -> "LeavittElement":
        return LeavittElement(self.config, {m: -c for m, c in self.terms.items()}, self.reduced)

    def __sub__(self, other: "LeavittElement") -> "LeavittElement":
        return self + (-other)

    def scale(self, k) -> "LeavittElement":
        k = self.field.convert(k)
        return LeavittElement(self.config, {m: k * c for m, c in self.terms.items()}, self.reduced)

    def __rmul__(self, k) -> "LeavittElement":
        return self.scale(k)

    # -- multiplication (CK1) ------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, LeavittElement):
            return self.scale(other)
        self._check(other)
        graph = self.graph
        zero = self.field.zero
        acc: Dict[LeavittMonomial, Scalar] = {}
        for m, c in self.terms.items():
            for n, d in other.terms.items():
                mn = multiply_monomials(graph, m, n)
                if mn is not None:
                    acc[mn] = acc.get(mn, zero) + c * d
        reduced = not self.config.is_leavitt
        return LeavittElement(self.config, acc, reduced)

    # -- normal form (CK2) -------------------------------------------------

    def junction_edge(self, m: LeavittMonomial) -> Optional[str]:
        """The designated edge e when m = alpha' e (beta' e)*, else None."""
        if not (m.real.edges and m.ghost.edges):
            return None
        e = m.real.edges[-1]
        if e != m.ghost.edges[-1]:
            return None
        if self.config.designated_edge(self.graph.edge(e).source) != e:
            return None
        return e

    def normal_form(self, rng: Optional[random.Random] = None) -> "LeavittElement":
        """Exhaustive (CK2) rewriting; the identity in Cohn mode.

        With rng the rewrite site is picked at random; the result does not depend on it.
        """
        if self.reduced or not self.config.is_leavitt:
            return LeavittElement(self.config, self.terms, reduced=True)
        graph = self.graph
        zero = self.field.zero
        acc: Dict[LeavittMonomial, Scalar] = {}
        redexes = set()

        def add(m: LeavittMonomial, c: Scalar):
            value = acc.get(m, zero) + c
            if value:
                acc[m] = value
                if self.junction_edge(m) is not None:
                    redexes.add(m)
            else:
                acc.pop(m, None)
                redexes.discard(m)

        for m, c in self.terms.items():
            add(m, c)
        steps = 0
        while redexes:
            if rng is None:
                m = max(redexes, key=LeavittMonomial.sort_key)
            else:
                m = rng.choice(sorted(redexes, key=LeavittMonomial.sort_key))
            c = acc.pop(m)
            redexes.discard(m)
            e = m.real.edges[-1]
            v = graph.edge(e).source
            alpha = graph.head(m.real, len(m.real) - 1)
            beta = graph.head(m.ghost, len(m.ghost) - 1)
            add(LeavittMonomial(alpha, beta), c)
            for f in graph.emitted(v):
                if f.id != e:
                    add(LeavittMonomial(graph.extend(alpha, f.id), graph.extend(beta, f.id)), -c)
            steps += 1
        if steps:
            logger.debug(f"normal form reached after {steps} rewrite steps")
        return LeavittElement(self.config, acc, reduced=True)

    def is_zero(self) -> bool:
        return not self.normal_form().terms

    # -- involution and grading --------------------------------------------

    def involution(self) -> "LeavittElement":
        """Swap real and ghost paths; K is commutative so coefficients are kept."""
        return LeavittElement(self.config, {m.star(): c for m, c in self.terms.items()})

    def ghost_degree(self) -> int:
        return max((len(m.ghost) for m in self.terms), default=0)

    def graded_component(self, d: int) -> "LeavittElement":
        return LeavittElement(self.config, {m: c for m, c in self.terms.items() if m.degree == d}, self.reduced)

    def degrees(self) -> List[int]:
        return sorted({m.degree for m in self.terms})

    def is_ghost_free(self) -> bool:
        """True iff the normal form lies in KE."""
        return all(m.ghost.is_vertex for m in self.normal_form().terms)

    def to_quiver(self) -> QuiverElement:
        """The KE element of a ghost-free element."""
        nf = self.normal_form()
        terms = {}
        for m, c in nf.terms.items():
            if not m.ghost.is_vertex:
                raise InputError("element is not ghost-free")
            terms[m.real] = c
        return QuiverElement(self.graph, self.field, terms)

    def is_scalar_unit(self) -> Optional[Scalar]:
        """k when the normal form equals k·1 with k != 0, else None."""
        nf = self.normal_form()
        if not nf.terms:
            return None
        values = set()
        for v in self.graph.vertices:
            values.add(nf.terms.get(vertex_monomial(self.graph, v), self.field.zero))
        if len(values) != 1 or len(nf.terms) != len(self.graph.vertices):
            return None
        k = values.pop()
        return k if k else None


@dataclass
class BasisReport:
    """Normal-form basis monomials with |alpha| + |beta| <= bound."""
    bound: int
    monomials: List[LeavittMonomial]
    dimension: Optional[int] = None  # total dimension for acyclic graphs
    by_total_length: Dict[int, int] = field(default_factory=dict)


def basis_monomials(config: ReductionConfig, bound: int) -> List[LeavittMonomial]:
    if bound < 0:
        raise InputError("bound must be non-negative")
    graph = config.graph
    by_target: Dict[str, List[Path]] = {v: [] for v in graph.vertices}
    for p in graph.iter_paths_upto(bound):
        by_target[p.target].append(p)
    zero = LeavittElement.zero(config)
    monomials = []
    for paths in by_target.values():
        for alpha in paths:
            for beta in paths:
                if len(alpha) + len(beta) > bound:
                    continue
                m = LeavittMonomial(alpha, beta)
                if config.is_leavitt and zero.junction_edge(m) is not None:
                    continue
                monomials.append(m)
    return sorted(monomials, key=LeavittMonomial.sort_key)


def basis_enumerate(config: ReductionConfig, bound: int) -> BasisReport:
    monomials = basis_monomials(config, bound)
    report = BasisReport(bound=bound, monomials=monomials)
    for m in monomials:
        report.by_total_length[m.total_length] = report.by_total_length.get(m.total_length, 0) + 1
    longest = config.graph.longest_path_length()
    if longest is not None:
        full = 2 * longest
        report.dimension = len(monomials) if bound >= full else len(basis_monomials(config, full))
    logger.info(f"basis enumeration on {config.graph.name or 'graph'}: {len(monomials)} monomials up to {bound}")
    return report
