from math import gcd

import pytest

from services.grothendieck import grothendieck_group, relation_matrix
from services.digraph import one_vertex_graph
from services.module_type import ModuleTypeInput, module_type
from utils.errors import InputError


def test_codim1_type():
    report = module_type(3, codim1=True)
    assert report.kind is ModuleTypeInput.CODIM1
    assert report.module_type == (1, 3)
    assert report.k0_order == 2
    assert report.describe() == "(1, 3), K0 = Z/2"


def test_lm_and_family():
    assert module_type(2, lm=(1, 2)).module_type == (1, 3)
    family = module_type(2, family=[(2, 1), (3, 1)])
    assert family.d == 1
    assert family.module_type == (1, 2)
    assert family.describe() == "(1, 2), K0 = 0"


def test_laurent_case_has_ibn():
    report = module_type(1, codim1=True)
    assert report.ibn
    assert report.module_type is None
    assert report.describe() == "IBN (Laurent polynomial algebra), K0 = Z"


@pytest.mark.parametrize("kwargs", [{}, {"codim1": True, "lm": (1, 1)}, {"lm": (0, 2)}, {"family": []}])
def test_bad_inputs(kwargs):
    with pytest.raises(InputError):
        module_type(2, **kwargs)


def test_formula_on_random_inputs(rng):
    for _ in range(1000):
        n = rng.randint(2, 9)
        pairs = [(rng.randint(1, 6), rng.randint(1, 6)) for _ in range(rng.randint(1, 4))]
        d = 0
        for l, m in pairs:
            d = gcd(d, l * m)
        report = module_type(n, family=pairs)
        assert report.module_type == (1, d * (n - 1) + 1)
        assert report.k0_order == d * (n - 1)
        l, m = pairs[0]
        assert module_type(n, lm=(l, m)).module_type == (1, l * m * (n - 1) + 1)


def test_grothendieck_of_loop_graphs():
    for n in range(1, 6):
        report = grothendieck_group(one_vertex_graph(n))
        if n == 1:
            assert report.describe() == "Z"
        elif n == 2:
            assert report.describe() == "0"
        else:
            assert report.invariant_factors == [n - 1]
            assert report.free_rank == 0
            assert module_type(n, codim1=True).k0_order == n - 1


def test_grothendieck_of_fixtures(graphs):
    for n in (2, 3, 4):
        assert grothendieck_group(graphs[f"a{n}-dynkin"]).describe() == "Z"
    assert grothendieck_group(graphs["toeplitz"]).describe() == "Z"
    assert grothendieck_group(graphs["fork"]).describe() == "Z^2"
    assert relation_matrix(graphs["toeplitz"]).tolist() == [[0, -1], [0, 0]]
