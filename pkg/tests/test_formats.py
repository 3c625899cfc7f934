import warnings

import pytest

from formating.expressions import (
    element_document, element_from_document, format_element, format_monomial, format_quiver, parse_element,
    parse_quiver
)
from formating.graph_format import graph_document, graph_from_document, parse_graph, print_graph
from models.model import ElementDocument
from services.leavitt import LeavittElement, LeavittMonomial, ReductionConfig
from utils.errors import InputError


def test_parse_graph_examples():
    toeplitz = parse_graph("vertex u\nvertex v\nedge a u u\nedge b u v")
    assert toeplitz.sinks == ["v"]
    assert [e.id for e in toeplitz.emitted("u")] == ["a", "b"]
    loops = parse_graph("vertex v\nedge a1 v v\nedge a2 v v")
    assert loops.is_loop_graph


@pytest.mark.parametrize("text, line, column", [
    ("edge a u v", 1, 8),
    ("vertex u\nvertex u", 2, 8),
    ("vertex u\n  edge a u w", 2, 12),
    ("vertex u\nloop a u", 2, 1),
    ("vertex u\nedge a u", 2, 1),
])
def test_parse_graph_errors(text, line, column):
    with pytest.raises(InputError) as error:
        parse_graph(text)
    assert (error.value.line, error.value.column) == (line, column)


def test_graph_comments_and_names():
    graph = parse_graph("# header\ngraph demo  # trailing\nvertex v # the only vertex\n")
    assert graph.name == "demo"
    assert graph.vertices == ("v",)


def test_graph_round_trips(graphs):
    for graph in graphs.values():
        assert parse_graph(print_graph(graph)) == graph
        assert graph_from_document(graph_document(graph)) == graph


def test_parse_element_examples(leavitt, graphs):
    ex2 = leavitt("ex2")
    r = parse_element("a2 . a3^* . a4^* + (a2 . a3)^*", ex2)
    g = graphs["ex2"]
    assert r.terms == {
        LeavittMonomial(g.path("a2"), g.path("a4", "a3")): ex2.field.one,
        LeavittMonomial(g.vertex_path("v3"), g.path("a2", "a3")): ex2.field.one,
    }
    assert r.ghost_degree() == 2

    l12 = leavitt("l12")
    x = parse_element("1/2 · v − a1 . a1^*", l12)
    expected = LeavittElement.vertex(l12, "v").scale(l12.field.fraction(1, 2)) \
        - LeavittElement.edge(l12, "a1") * LeavittElement.edge(l12, "a1").involution()
    assert x == expected


@pytest.mark.parametrize("text", ["a9", "v +", "1/0 · v", "a1 ^", "(a1 . a2"])
def test_parse_element_errors(leavitt, text):
    with pytest.raises(InputError):
        parse_element(text, leavitt("l12"))


def test_unknown_identifier_position(leavitt):
    with pytest.raises(InputError) as error:
        parse_element("v + a9", leavitt("l12"))
    assert (error.value.line, error.value.column) == (1, 5)


def test_parse_quiver(graphs, rat):
    g = graphs["l12"]
    x = parse_quiver("a1^* . a1 . a2 + 2 · v", g, rat)
    assert format_quiver(x) == "2 · v + a2"
    with pytest.raises(InputError):
        parse_quiver("a1^*", g, rat)


def test_printing(leavitt, graphs):
    g = graphs["l13"]
    config = leavitt("l13")
    assert format_element(LeavittElement.vertex(config, "v")) == "v"
    assert format_monomial(LeavittMonomial(g.path("a1", "a2"), g.path("a3"))) == "a1 . a2 . a3^*"
    assert format_element(LeavittElement.zero(config)) == "0"
    x = parse_element("a1 - 1/3 · a2^* . a1^*", config)
    assert format_element(x) == "a1 - 1/3 · a2^* . a1^*"


@pytest.mark.parametrize("name", ["l12", "ex2", "toeplitz", "fork"])
def test_element_round_trips(name, leavitt, random_element):
    config = leavitt(name)
    for _ in range(125):
        x = random_element(config, terms=4, length=2)
        assert parse_element(format_element(x), config) == x
        document = ElementDocument.model_validate_json(element_document(x).model_dump_json())
        assert element_from_document(document, config) == x


def test_prime_field_round_trip(graphs, gf5, random_element):
    config = ReductionConfig(graphs["l12"], gf5)
    for _ in range(50):
        x = random_element(config)
        assert parse_element(format_element(x), config) == x


def test_parsing_raises_no_deprecation_warnings(leavitt):
    config = leavitt("ex2")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        x = parse_element("a2 . a3^* . a4^* + (a2 . a3)^* - 1/2 · v1", config)
    assert not x.is_zero()
