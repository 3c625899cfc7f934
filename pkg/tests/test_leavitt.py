import itertools

import pytest
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from services.digraph import Digraph, one_vertex_graph
from services.leavitt import (
    LeavittElement, LeavittMonomial, ReductionConfig, ReductionMode, basis_enumerate, basis_monomials,
    multiply_monomials
)
from services.quiver import QuiverElement
from utils.errors import InputError

SMALL_GRAPHS = [
    Digraph.build(["v"], [("a1", "v", "v")], name="L(1,1)"),
    Digraph.build(["v"], [("a1", "v", "v"), ("a2", "v", "v")], name="L(1,2)"),
    Digraph.build(["u", "v"], [("a", "u", "u"), ("b", "u", "v")], name="toeplitz"),
    Digraph.build(["v", "w1", "w2"], [("a", "v", "w1"), ("b", "v", "w2")], name="fork"),
    Digraph.build(["u", "v"], [("a", "u", "v"), ("b", "v", "u")], name="cycle"),
    Digraph.build(["u", "v"], [("a", "u", "v"), ("b", "u", "v"), ("c", "v", "v")], name="mixed"),
]


def _all_monomials(graph: Digraph, bound: int):
    paths = list(graph.iter_paths_upto(bound))
    return [LeavittMonomial(a, b) for a in paths for b in paths
            if a.target == b.target and len(a) + len(b) <= bound]


def truncated_dimension_oracle(graph: Digraph, bound: int) -> int:
    """dim of span{alpha·beta*} modulo the vertex relations alpha·(v - sum e·e*)·beta* inside degree bound."""
    monomials = _all_monomials(graph, bound)
    index = {m: i for i, m in enumerate(monomials)}
    rows = []
    for m in monomials:
        v = m.real.target
        emitted = graph.emitted(v)
        if not emitted or m.total_length + 2 > bound:
            continue
        row = [QQ(0)] * len(monomials)
        row[index[m]] = QQ(1)
        for e in emitted:
            row[index[LeavittMonomial(graph.extend(m.real, e.id), graph.extend(m.ghost, e.id))]] -= QQ(1)
        rows.append(row)
    if not rows:
        return len(monomials)
    rank = DomainMatrix(rows, (len(rows), len(monomials)), QQ).rank()
    return len(monomials) - rank


def test_ck1_products(leavitt, graphs):
    g = graphs["l12"]
    config = leavitt("l12")
    v = g.vertex_path("v")
    a1, a2 = g.path("a1"), g.path("a2")
    assert multiply_monomials(g, LeavittMonomial(v, a1), LeavittMonomial(a2, v)) is None
    assert multiply_monomials(g, LeavittMonomial(a1, a2), LeavittMonomial(a2, a1)) == LeavittMonomial(a1, a1)
    assert multiply_monomials(g, LeavittMonomial(v, a1), LeavittMonomial(g.path("a1", "a2"), v)) \
        == LeavittMonomial(a2, v)
    x = LeavittElement.edge(config, "a1").scale(2) - LeavittElement.edge(config, "a2")
    assert x.terms == {LeavittMonomial(a1, v): config.field(2), LeavittMonomial(a2, v): config.field(-1)}


def test_monomial_needs_common_range(graphs):
    g = graphs["toeplitz"]
    with pytest.raises(InputError):
        LeavittMonomial(g.path("b"), g.vertex_path("u"))


def test_normal_form_examples(leavitt, graphs):
    config = leavitt("l12")
    g = graphs["l12"]
    assert config.designated_edge("v") == "a2"
    a1, a2 = LeavittElement.edge(config, "a1"), LeavittElement.edge(config, "a2")
    total = a1 * a1.involution() + a2 * a2.involution()
    assert total.normal_form() == LeavittElement.vertex(config, "v")
    expected = LeavittElement.vertex(config, "v") - a1 * a1.involution()
    assert (a2 * a2.involution()).normal_form() == expected.normal_form()

    a2_config = leavitt("a2-dynkin")
    a = LeavittElement.edge(a2_config, "a")
    assert (a * a.involution()).normal_form() == LeavittElement.vertex(a2_config, "v1")
    assert LeavittElement.path(config, g.path("a1")).is_ghost_free()
    assert not a1.involution().is_ghost_free()
    assert (a1.involution() * a1).is_ghost_free()


def test_cohn_mode_keeps_ck2_products(graphs, rat):
    config = ReductionConfig(graphs["l12"], rat, ReductionMode.COHN)
    a2 = LeavittElement.edge(config, "a2")
    product = a2 * a2.involution()
    assert product.normal_form() == product
    assert not product.is_ghost_free()


def test_designated_edge_override(graphs, rat):
    config = ReductionConfig(graphs["l12"], rat, designated=(("v", "a1"),))
    a1 = LeavittElement.edge(config, "a1")
    assert (a1 * a1.involution()).normal_form() == (
        LeavittElement.vertex(config, "v") - LeavittElement.edge(config, "a2") * LeavittElement.edge(config, "a2").involution()
    ).normal_form()
    with pytest.raises(InputError):
        ReductionConfig(graphs["l12"], rat, designated=(("v", "b"),))


def test_involution_and_grading(leavitt, graphs):
    config = leavitt("ex2")
    g = graphs["ex2"]
    m = LeavittMonomial(g.path("a2", "a3"), g.path("a2", "a4"))
    assert m.star() == LeavittMonomial(g.path("a2", "a4"), g.path("a2", "a3"))
    v1 = LeavittElement.vertex(config, "v1")
    assert v1.involution() == v1

    def e(name):
        return LeavittElement.edge(config, name)
    r = e("a2") * e("a3").involution() * e("a4").involution() + (e("a2") * e("a3")).involution()
    assert r.ghost_degree() == 2
    assert v1.graded_component(0) == v1

    l12 = leavitt("l12")
    a1, a2 = LeavittElement.edge(l12, "a1"), LeavittElement.edge(l12, "a2")
    x = a1 + a1 * a2.involution()
    assert x.graded_component(1) == a1
    assert x.degrees() == [0, 1]


def test_telescoping_identity(rat):
    for n in (2, 3):
        g = one_vertex_graph(n)
        config = ReductionConfig(g, rat)
        for length in range(5):
            total = LeavittElement.zero(config)
            for alpha in g.enumerate_paths(length):
                total = total + LeavittElement.path(config, alpha) * LeavittElement.ghost_path(config, alpha)
            assert (total - LeavittElement.unit(config)).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_dynkin_dimension_is_n_squared(graphs, rat, n):
    report = basis_enumerate(ReductionConfig(graphs[f"a{n}-dynkin"], rat), 2 * (n - 1))
    assert report.dimension == n * n


def test_fork_and_a2_bases(leavitt):
    assert basis_enumerate(leavitt("fork"), 2).dimension == 8
    assert len(basis_monomials(leavitt("a2-dynkin"), 2)) == 4


def test_truncated_l12_basis(leavitt, graphs):
    g = graphs["l12"]
    monomials = set(basis_monomials(leavitt("l12"), 2))
    v = g.vertex_path("v")
    a1, a2 = g.path("a1"), g.path("a2")
    assert LeavittMonomial(a2, a2) not in monomials
    for m in [(v, v), (a1, v), (a2, v), (v, a1), (v, a2), (a1, a1), (a1, a2), (a2, a1)]:
        assert LeavittMonomial(*m) in monomials


@pytest.mark.parametrize("graph", SMALL_GRAPHS, ids=lambda g: g.name)
def test_truncated_dimensions_match_oracle(graph, rat):
    config = ReductionConfig(graph, rat)
    for bound in range(5):
        assert len(basis_monomials(config, bound)) == truncated_dimension_oracle(graph, bound)


@pytest.mark.parametrize("name", ["l12", "toeplitz", "ex2", "fork"])
def test_kernel_laws(name, leavitt, random_element):
    config = leavitt(name)
    for _ in range(200):
        x, y, z = (random_element(config) for _ in range(3))
        assert ((x * y) * z - x * (y * z)).is_zero()
        assert ((x * y).involution() - y.involution() * x.involution()).is_zero()
        assert x.involution().involution() == x
        nf = x.normal_form()
        assert nf.normal_form() == nf
        assert (x + y).normal_form() == (nf + y).normal_form()
        assert (x * y).normal_form() == (nf * y.normal_form()).normal_form()
        pieces = LeavittElement.zero(config)
        for d in x.degrees():
            pieces = pieces + x.graded_component(d)
        assert pieces == x


@pytest.mark.parametrize("name", ["l12", "l13", "toeplitz", "ex2"])
def test_rewrite_order_confluence(name, leavitt, random_element, rng):
    config = leavitt(name)
    for _ in range(500):
        x = random_element(config, terms=4)
        y = random_element(config, terms=2)
        product = x * y
        assert product.normal_form(rng) == product.normal_form()


def test_cuntz_krieger_relations(leavitt, graphs):
    for name, g in graphs.items():
        config = leavitt(name)

        def e(edge_id):
            return LeavittElement.edge(config, edge_id)

        for v in g.regular_vertices:
            total = LeavittElement.zero(config)
            for f in g.emitted(v):
                total = total + e(f.id) * e(f.id).involution()
            assert (total - LeavittElement.vertex(config, v)).is_zero(), (name, v)
        for a in g.edges:
            for b in g.edges:
                product = (e(a.id).involution() * e(b.id)).normal_form()
                expected = LeavittElement.vertex(config, a.range) if a.id == b.id else LeavittElement.zero(config)
                assert product == expected, (name, a.id, b.id)


@pytest.mark.parametrize("name", ["l13", "toeplitz", "ex2"])
def test_grading_convolution(name, leavitt, random_element):
    config = leavitt(name)
    for _ in range(50):
        x, y = random_element(config, terms=4), random_element(config, terms=4)
        product = (x * y).normal_form()
        for d in range(-4, 5):
            convolution = LeavittElement.zero(config)
            for i in x.degrees():
                convolution = convolution + x.graded_component(i) * y.graded_component(d - i)
            assert product.graded_component(d) == convolution.normal_form()


def test_grading_is_additive(leavitt, graphs):
    config = leavitt("l12")
    g = graphs["l12"]
    paths = list(g.iter_paths_upto(2))
    for alpha, beta, gamma, delta in itertools.islice(itertools.product(paths, repeat=4), 0, 2401, 7):
        m = LeavittElement.from_monomial(config, LeavittMonomial(alpha, beta))
        n = LeavittElement.from_monomial(config, LeavittMonomial(gamma, delta))
        degree = len(alpha) - len(beta) + len(gamma) - len(delta)
        assert all(t.degree == degree for t in (m * n).normal_form().terms)


def test_embedding_and_scalar_units(leavitt, graphs, rat):
    config = leavitt("toeplitz")
    g = graphs["toeplitz"]
    x = QuiverElement.from_path(g, rat, g.path("a", "b")) + QuiverElement.unit(g, rat)
    embedded = LeavittElement.embed_quiver(x, config)
    assert embedded.is_ghost_free()
    assert embedded.to_quiver() == x
    assert LeavittElement.scalar(config, 3).is_scalar_unit() == rat(3)
    assert LeavittElement.vertex(config, "u").is_scalar_unit() is None
    with pytest.raises(InputError):
        LeavittElement.edge(config, "a").involution().to_quiver()
