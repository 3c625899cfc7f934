"""Element expressions: parsing, canonical printing and the JSON element codec.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := coeff ['·'] [chain] | chain
    chain  := factor ('.' factor)*
    factor := (id | '(' expr ')') ['^*']
    coeff  := integer | integer '/' integer

A bare coefficient k stands for k·1.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple, Union

import pyparsing as pp

from models.model import ElementDocument, ElementTerm
from services.digraph import Digraph, Path
from services.leavitt import LeavittElement, LeavittMonomial, ReductionConfig, ReductionMode
from services.quiver import QuiverElement
from services.scalars import ScalarField
from utils.errors import InputError


@dataclass
class _Identifier:
    name: str
    loc: int


@dataclass
class _Factor:
    base: Union[_Identifier, "_Sum"]
    starred: bool


@dataclass
class _Term:
    coeff: Optional[str]
    factors: List[_Factor]


@dataclass
class _Sum:
    terms: List[Tuple[str, _Term]]


def _make_term(tokens):
    coeff = tokens[0] if isinstance(tokens[0], str) else None
    return _Term(coeff, [t for t in tokens if isinstance(t, _Factor)])


def _make_sum(tokens):
    items = list(tokens)
    if not isinstance(items[0], str):
        items.insert(0, "+")
    return _Sum([(items[i], items[i + 1]) for i in range(0, len(items), 2)])


@lru_cache(maxsize=1)
def _grammar() -> pp.ParserElement:
    expr = pp.Forward()
    identifier = pp.Regex(r"[A-Za-z_][A-Za-z0-9_']*").set_parse_action(lambda s, loc, t: _Identifier(t[0], loc))
    group = pp.Suppress("(") + expr + pp.Suppress(")")
    factor = (identifier | group) + pp.Optional(pp.Literal("^*"))
    factor.set_parse_action(lambda t: _Factor(t[0], len(t) > 1))
    chain = factor + pp.ZeroOrMore(pp.Suppress(".") + factor)
    coeff = pp.Regex(r"\d+(?:\s*/\s*\d+)?")
    term = (coeff + pp.Optional(pp.Suppress("·")) + pp.Optional(chain)) | chain
    term.set_parse_action(_make_term)
    sign = pp.one_of("+ - −")
    expr <<= pp.Optional(sign) + term + pp.ZeroOrMore(sign + term)
    expr.set_parse_action(_make_sum)
    return expr


def _evaluate(node, config: ReductionConfig, text: str) -> LeavittElement:
    if isinstance(node, _Sum):
        total = LeavittElement.zero(config)
        for sign, term in node.terms:
            value = _evaluate(term, config, text)
            total = total - value if sign in ("-", "−") else total + value
        return total
    if isinstance(node, _Term):
        value = None
        for factor in node.factors:
            current = _evaluate(factor, config, text)
            value = current if value is None else value * current
        if value is None:
            value = LeavittElement.unit(config)
        if node.coeff is not None:
            value = value.scale(config.field.parse(node.coeff))
        return value
    if isinstance(node, _Factor):
        value = _evaluate(node.base, config, text)
        return value.involution() if node.starred else value
    graph = config.graph
    if graph.has_vertex(node.name):
        return LeavittElement.vertex(config, node.name)
    if graph.has_edge(node.name):
        return LeavittElement.edge(config, node.name)
    raise InputError(f"unknown identifier {node.name!r}", pp.lineno(node.loc, text), pp.col(node.loc, text))


def parse_element(text: str, config: ReductionConfig) -> LeavittElement:
    """Evaluate an expression left to right with (CK1) products; the result is not normalized."""
    try:
        tree = _grammar().parse_string(text, parse_all=True)[0]
    except pp.ParseException as e:
        raise InputError(f"malformed expression: {e.msg}", e.lineno, e.col)
    return _evaluate(tree, config, text)


def parse_quiver(text: str, graph: Digraph, field: ScalarField) -> QuiverElement:
    """An element of KE written without ghost factors (after (CK1))."""
    element = parse_element(text, ReductionConfig(graph, field, ReductionMode.COHN))
    if not all(m.ghost.is_vertex for m in element.terms):
        raise InputError(f"{text!r} is not an element of the quiver algebra")
    return element.to_quiver()


# -- printing -------------------------------------------------------------

def format_path(path: Path) -> str:
    return " . ".join(path.edges) if path.edges else path.source


def format_monomial(m: LeavittMonomial) -> str:
    parts = list(m.real.edges) + [f"{e}^*" for e in reversed(m.ghost.edges)]
    return " . ".join(parts) if parts else m.real.source


def _format_terms(field: ScalarField, terms) -> str:
    pieces = []
    for i, (body, c) in enumerate(terms):
        negative = field.is_negative(c)
        magnitude = -c if negative else c
        if magnitude != field.one:
            body = f"{field.format(magnitude)} · {body}"
        if i == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces) or "0"


def format_element(x: LeavittElement) -> str:
    return _format_terms(x.field, [(format_monomial(m), c) for m, c in x.sorted_terms()])


def format_quiver(x: QuiverElement) -> str:
    return _format_terms(x.field, [(format_path(p), c) for p, c in x.sorted_terms()])


# -- JSON -------------------------------------------------------------------

def element_document(x: LeavittElement) -> ElementDocument:
    terms = [ElementTerm(coeff=x.field.format(c), real=list(m.real.edges), ghost=list(m.ghost.edges),
                         vertex=m.real.target)
             for m, c in x.sorted_terms()]
    return ElementDocument(field=x.field.descriptor, mode=x.config.mode, terms=terms, text=format_element(x))


def element_from_document(document: ElementDocument, config: ReductionConfig) -> LeavittElement:
    if ScalarField(document.field) != config.field:
        raise InputError(f"element is over {document.field}, expected {config.field.descriptor}")
    graph = config.graph
    terms = {}
    for term in document.terms:
        real = graph.path(*term.real) if term.real else graph.vertex_path(term.vertex)
        ghost = graph.path(*term.ghost) if term.ghost else graph.vertex_path(term.vertex)
        m = LeavittMonomial(real, ghost)
        terms[m] = terms[m] + config.field.parse(term.coeff) if m in terms else config.field.parse(term.coeff)
    return LeavittElement(config, terms)
