"""Shared fixtures: the fixture graphs, ground fields, seeded generators and sample factories."""

import random
from pathlib import Path as FilePath
from typing import Callable, Dict, List

import pytest

from formating.graph_format import load_graph
from services.digraph import Digraph, Path
from services.leavitt import LeavittElement, LeavittMonomial, ReductionConfig
from services.quiver import QuiverElement
from services.scalars import ScalarField
from services.schreier import RightIdealPresentation

FIXTURES = FilePath(__file__).resolve().parent.parent / "fixtures"

FIXTURE_NAMES = ["l12", "l13", "a2-dynkin", "a3-dynkin", "a4-dynkin", "fork", "toeplitz", "ex2"]


def fixture_path(name: str) -> str:
    return str(FIXTURES / f"{name}.graph")


@pytest.fixture(scope="session")
def graph_file() -> Callable[[str], str]:
    return fixture_path


@pytest.fixture(scope="session")
def graphs() -> Dict[str, Digraph]:
    return {name: load_graph(fixture_path(name)) for name in FIXTURE_NAMES}


@pytest.fixture(scope="session")
def rat() -> ScalarField:
    return ScalarField("rat")


@pytest.fixture(scope="session")
def gf5() -> ScalarField:
    return ScalarField("fp:5")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture(scope="session")
def leavitt(graphs, rat) -> Callable[[str], ReductionConfig]:
    """Leavitt-mode reduction config of a fixture graph over the rationals."""
    cache: Dict[str, ReductionConfig] = {}

    def make(name: str) -> ReductionConfig:
        if name not in cache:
            cache[name] = ReductionConfig(graphs[name], rat)
        return cache[name]
    return make


def _paths_by_target(graph: Digraph, length: int) -> Dict[str, List[Path]]:
    out: Dict[str, List[Path]] = {v: [] for v in graph.vertices}
    for p in graph.iter_paths_upto(length):
        out[p.target].append(p)
    return out


@pytest.fixture
def random_element(rng) -> Callable[..., LeavittElement]:
    """Random elements sum k·alpha·beta* with |alpha|, |beta| <= length."""

    def make(config: ReductionConfig, terms: int = 3, length: int = 2) -> LeavittElement:
        by_target = _paths_by_target(config.graph, length)
        reals = [p for paths in by_target.values() for p in paths]
        acc = LeavittElement.zero(config)
        for _ in range(rng.randint(1, terms)):
            alpha = rng.choice(reals)
            beta = rng.choice(by_target[alpha.target])
            monomial = LeavittMonomial(alpha, beta)
            acc = acc + LeavittElement.from_monomial(config, monomial, config.field.random(rng))
        return acc
    return make


@pytest.fixture
def random_quiver(rng) -> Callable[..., QuiverElement]:
    """Random elements of KE supported on paths of length <= length."""

    def make(graph: Digraph, field: ScalarField, terms: int = 3, length: int = 2) -> QuiverElement:
        paths = list(graph.iter_paths_upto(length))
        return QuiverElement.from_pairs(graph, field,
                                        [(rng.choice(paths), field.random(rng)) for _ in range(rng.randint(1, terms))])
    return make


@pytest.fixture
def finite_codim_ideal(rng) -> Callable[[Digraph, ScalarField], RightIdealPresentation]:
    """A right ideal containing every path of length L, plus random lower-degree generators."""

    def make(graph: Digraph, field: ScalarField) -> RightIdealPresentation:
        level = rng.randint(1, 3)
        generators = [QuiverElement.from_path(graph, field, p) for p in graph.enumerate_paths(level)]
        shorter = list(graph.iter_paths_upto(level - 1))
        for _ in range(rng.randint(0, 2)):
            x = QuiverElement.from_pairs(graph, field,
                                         [(rng.choice(shorter), field.random(rng)) for _ in range(rng.randint(1, 3))])
            if x:
                generators.append(x)
        return RightIdealPresentation(graph, field, tuple(generators))
    return make


@pytest.fixture
def codim1_ideal(rng) -> Callable[[Digraph, ScalarField], RightIdealPresentation]:
    """The ideal generated by a_i - k_i on a one-vertex loop graph, k_i random in [-2, 2]."""

    def make(graph: Digraph, field: ScalarField) -> RightIdealPresentation:
        v = graph.vertex_path(graph.vertices[0])
        generators = []
        for e in graph.edges:
            k = field.convert(rng.randint(-2, 2))
            generators.append(QuiverElement.from_path(graph, field, graph.path(e.id))
                              - QuiverElement.from_path(graph, field, v, k))
        return RightIdealPresentation(graph, field, tuple(generators))
    return make
