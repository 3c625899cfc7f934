"""
Kernel commands: graph checks, normal forms, products, bases, dimension and K0
"""

from formating.expressions import element_document, format_element, format_monomial
from formating.graph_format import graph_document
from models.model import BasisDocument, CheckDocument, GrothendieckDocument
from routers import CommandRouter, arg
from routers.context import LabContext
from services.grothendieck import grothendieck_group
from services.leavitt import basis_enumerate
from utils.logger import log_info

router = CommandRouter(tags="kernel")


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


@router.command("check", "Validate the graph and report its vertex classification")
def check(ctx: LabContext, args) -> int:
    graph = ctx.graph
    dimension = graph.path_algebra_dimension()
    document = CheckDocument(
        graph=graph_document(graph),
        sinks=graph.sinks,
        regular_vertices=graph.regular_vertices,
        acyclic=graph.is_acyclic(),
        path_algebra_dimension=dimension,
        adic_hausdorff=graph.adic_is_hausdorff(),
    )
    lines = [
        f"graph: {graph.name or '(unnamed)'}",
        f"vertices: {' '.join(graph.vertices)}",
        f"edges: {' '.join(e.id for e in graph.edges) or '(none)'}",
        f"sinks: {' '.join(graph.sinks) or '(none)'}",
        f"regular: {' '.join(graph.regular_vertices) or '(none)'}",
        f"acyclic: {_yes(document.acyclic)}",
        f"dim KE: {dimension if dimension is not None else 'infinite'}",
        f"I-adic Hausdorff: {_yes(document.adic_hausdorff)}",
    ]
    ctx.emit(document, "\n".join(lines))
    return 0


@router.command("nf", "Normal form of an element", arg("expr", nargs="?"))
def normal_form(ctx: LabContext, args) -> int:
    x = ctx.element(args.expr).normal_form()
    ctx.emit(element_document(x), format_element(x))
    return 0


@router.command("mul", "Normal form of a product", arg("left"), arg("right"))
def multiply(ctx: LabContext, args) -> int:
    x = (ctx.element(args.left) * ctx.element(args.right)).normal_form()
    ctx.emit(element_document(x), format_element(x))
    return 0


@router.command("basis", "Normal-form basis monomials up to a total length",
                arg("--max-degree", type=int, required=True, help="bound on |alpha| + |beta|"))
def basis(ctx: LabContext, args) -> int:
    report = basis_enumerate(ctx.reduction, args.max_degree)
    monomials = [format_monomial(m) for m in report.monomials]
    document = BasisDocument(bound=report.bound, monomials=monomials,
                             by_total_length=report.by_total_length, dimension=report.dimension)
    lines = monomials + [f"count: {len(monomials)}"]
    if report.dimension is not None:
        lines.append(f"dimension: {report.dimension}")
    ctx.emit(document, "\n".join(lines))
    return 0


@router.command("dim", "Dimension of the algebra (finite exactly when the graph is acyclic)")
def dimension(ctx: LabContext, args) -> int:
    longest = ctx.graph.longest_path_length()
    if longest is None:
        document = BasisDocument(bound=0, monomials=[], dimension=None)
        ctx.emit(document, "infinite")
        return 0
    report = basis_enumerate(ctx.reduction, 2 * longest)
    log_info(f"dimension of {ctx.graph.name or 'graph'}: {report.dimension}")
    document = BasisDocument(bound=report.bound, monomials=[format_monomial(m) for m in report.monomials],
                             by_total_length=report.by_total_length, dimension=report.dimension)
    ctx.emit(document, str(report.dimension))
    return 0


@router.command("k0", "Grothendieck group K0 of the Leavitt path algebra")
def k0(ctx: LabContext, args) -> int:
    report = grothendieck_group(ctx.graph)
    document = GrothendieckDocument(invariant_factors=report.invariant_factors, free_rank=report.free_rank,
                                    description=report.describe())
    ctx.emit(document, report.describe())
    return 0
