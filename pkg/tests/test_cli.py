import io
import json

import pytest

from app import main
from config import LabConfig, load_config
from services.localization import LocalizationLab
from utils.errors import InputError, InvariantViolation


@pytest.fixture
def run(graph_file, monkeypatch):
    """Run the command line; returns (exit code, stdout)."""
    monkeypatch.delenv("LEAVITT_LAB_FIELD", raising=False)

    def invoke(*argv, graph=None, stdin=""):
        args = list(argv)
        if graph:
            args += ["--graph", graph_file(graph)]
        out = io.StringIO()
        code = main(args, stdin=io.StringIO(stdin), stdout=out)
        return code, out.getvalue()
    return invoke


def test_dim(run):
    assert run("dim", graph="a2-dynkin") == (0, "4\n")
    assert run("dim", graph="fork") == (0, "8\n")
    assert run("dim", graph="toeplitz") == (0, "infinite\n")


def test_check_json(run):
    code, out = run("check", "--json", graph="toeplitz")
    document = json.loads(out)
    assert code == 0
    assert document["sinks"] == ["v"]
    assert document["path_algebra_dimension"] is None


def test_certificate_json(run):
    code, out = run("cert", "a1^*", "--json", graph="l12")
    document = json.loads(out)
    assert code == 0
    assert [p["s"] for p in document["pairs"]] == ["a1", "a2"]
    assert [p["b"] for p in document["pairs"]] == ["a1^*", "a2^*"]
    assert document["ghost_free"] and document["sums_to_one"]


def test_module_type_needs_no_graph(run):
    assert run("module-type", "--lm", "1", "2", "--n", "2") == (0, "(1, 3), K0 = Z/2\n")
    assert run("module-type", "--family", "2,1", "3,1", "--n", "2") == (0, "(1, 2), K0 = 0\n")


def test_expressions_from_stdin(run):
    assert run("nf", graph="l12", stdin="a1 . a1^* + a2 . a2^*\n") == (0, "v\n")
    code, out = run("rank", graph="l12", stdin="a1 . a1\na1 . a2\na2\n")
    assert code == 0
    assert "rank: 3" in out


def test_ideal_commands(run):
    assert run("open", "a1", "a2", graph="l12")[1] == "l = 1\n"
    assert run("two-sided", "a1 - v", "a2", graph="l12") == (0, "true\n")
    code, out = run("express", "a1 . a2 + a2", "a1", "a2", graph="l12")
    assert (code, out) == (0, "u[v,a1]: a2\nu[v,a2]: v\n")
    code, out = run("codim1", "a1 - v", "a2", graph="l12")
    assert code == 0 and out.startswith("k = (1, 0)")


def test_k0(run):
    assert run("k0", graph="l13") == (0, "Z/2\n")


def test_deterministic_output(run):
    first = run("basis", "--max-degree", "3", graph="ex2")
    assert first == run("basis", "--max-degree", "3", graph="ex2")
    assert first[0] == 0


@pytest.mark.parametrize("argv, graph", [
    (["frobnicate"], None),
    (["dim"], None),
    (["dim"], "missing"),
    (["nf", "a9"], "l12"),
    (["nf", "v", "--field", "fp:4"], "l12"),
    (["express", "v", "a1", "a2"], "l12"),
    (["dual", "a1", "a1 . a2"], "l12"),
    (["shrink", "a1 - a1"], "l12"),
])
def test_input_errors_exit_1(run, argv, graph):
    assert run(*argv, graph=graph)[0] == 1


def test_undecided_exit_2(run):
    assert run("open", "a1 - v", "a2", "--l-max", "3", graph="l12")[0] == 2
    assert run("gabriel", "a1 - v", "a2", "--bound", "3", graph="l12")[0] == 2
    assert run("schreier", "a1", "--degree-bound", "3", graph="l12")[0] == 2


def test_error_document(run):
    code, out = run("nf", "a9", "--json", graph="l12")
    assert code == 1
    assert json.loads(out)["status"] == "error"


def test_invariant_violation_exit_3(run, monkeypatch):
    def broken(self, q):
        raise InvariantViolation("broken on purpose")
    monkeypatch.setattr(LocalizationLab, "dom_degree", broken)
    assert run("dom", "a1^*", graph="l12")[0] == 3


def test_found_results(run):
    assert run("gabriel", "a1", "a2", "--bound", "2", graph="l12")[0] == 0
    code, out = run("gabriel", "a1 . a1", "a1 . a2", "a2", "--bound", "2", graph="l12")
    assert code == 0 and out.startswith("witness on monomials of total length <= 2")
    code, out = run("extract", "a1", graph="l12")
    assert code == 0 and out.startswith("mu = a1")
    assert run("dom", "a1^*", graph="l12") == (0, "1\n")
    assert run("shrink", "(a2 . a3)^*", graph="ex2")[1].startswith("a2 . a3")
    assert run("dense", "v", "a1^*", graph="l12") == (0, "a1\n")


def test_default_configuration():
    config = LabConfig()
    assert config.field.descriptor == "rat"
    assert config.schreier.max_cosets == 4096
    assert config.search.gabriel_bound == 8
    assert LabConfig().schreier is not config.schreier


def test_environment_configuration(monkeypatch):
    monkeypatch.setenv("LEAVITT_LAB_FIELD", "fp:7")
    monkeypatch.setenv("LEAVITT_LAB_DEGREE_BOUND", "12")
    config = load_config()
    assert config.field.descriptor == "fp:7"
    assert config.schreier.degree_bound == 12
    monkeypatch.setenv("LEAVITT_LAB_DEGREE_BOUND", "twelve")
    with pytest.raises(InputError):
        load_config()
