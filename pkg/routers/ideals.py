"""
Right ideal commands: quotient tables, Schreier bases, free generators, openness, sidedness
"""

from formating.expressions import format_quiver
from models.model import (
    AdicOpennessDocument, Codim1Document, CosetDocument, FreeExpressionDocument, FreeGeneratorDocument,
    FreeGeneratorsDocument, QuotientTableDocument, SchreierBasisDocument, TwoSidedDocument
)
from routers import CommandRouter, arg
from routers.context import LabContext
from utils.logger import log_info

router = CommandRouter(tags="ideals")

GENERATORS = arg("generators", nargs="*", metavar="GEN", help="ideal generators (read from stdin when omitted)")


@router.command("table", "Quotient table of KE/R", GENERATORS)
def table(ctx: LabContext, args) -> int:
    quotient = ctx.engine(args.generators).table
    field = ctx.field
    cosets = []
    lines = [f"status: {quotient.status.value}",
             f"codimension: {quotient.codimension() if quotient.closed else '>= bound'}"]
    for i in quotient.basis:
        coset = quotient.coset(i)
        actions = {}
        for e in ctx.graph.emitted(coset.vertex):
            image = quotient.action(i, e.id)
            if image is not None:
                actions[e.id] = {j: field.format(c) for j, c in sorted(image.items())}
        cosets.append(CosetDocument(index=i, representative=str(coset.representative), vertex=coset.vertex,
                                    actions=actions))
        shown = "  ".join(
            f"{edge} -> " + (" + ".join(f"{c}·[{j}]" for j, c in image.items()) or "0")
            for edge, image in actions.items())
        lines.append(f"[{i}] {coset.representative}  {shown}".rstrip())
    document = QuotientTableDocument(status=quotient.status, degree_bound=quotient.degree_bound,
                                     codimension=quotient.codimension(), cosets=cosets)
    ctx.emit(document, "\n".join(lines))
    return 0


@router.command("schreier", "Strong Schreier basis of R", GENERATORS,
                arg("--cap", type=int, default=None, help="level cap for a partial basis of a non-closed table"))
def schreier(ctx: LabContext, args) -> int:
    engine = ctx.engine(args.generators)
    basis = engine.schreier_basis(args.cap)
    levels = [[str(p) for p in level] for level in basis.levels]
    document = SchreierBasisDocument(status=engine.table.status, codimension=engine.codimension(),
                                     levels=levels, size=len(basis), partial=basis.partial)
    lines = [f"level {n}: {' '.join(level)}" for n, level in enumerate(levels)]
    lines.append(f"size: {len(basis)}" + (" (partial)" if basis.partial else ""))
    ctx.emit(document, "\n".join(lines))
    return 0


def _generators_document(ctx: LabContext, engine) -> FreeGeneratorsDocument:
    generators = [
        FreeGeneratorDocument(label=g.label, mu=str(g.mu), edge=g.edge, vertex=g.vertex,
                              element=format_quiver(g.element))
        for g in engine.free_generators()
    ]
    check = engine.schreier_lewin_check() if ctx.graph.is_loop_graph else None
    return FreeGeneratorsDocument(codimension=engine.codimension(), rank=engine.rank(),
                                  schreier_lewin=check, generators=generators)


@router.command("rank", "Free generators u = mu·a - pi(mu·a) of R and its rank", GENERATORS)
def rank(ctx: LabContext, args) -> int:
    engine = ctx.engine(args.generators)
    document = _generators_document(ctx, engine)
    lines = [f"{g.label} = {g.element}" for g in document.generators]
    lines.append(f"codimension: {document.codimension}")
    lines.append(f"rank: {document.rank}")
    if document.schreier_lewin is not None:
        lines.append(f"Schreier-Lewin: {'holds' if document.schreier_lewin else 'FAILS'}")
    ctx.emit(document, "\n".join(lines))
    return 0


@router.command("open", "Least l with I^l inside R", GENERATORS,
                arg("--l-max", type=int, default=None, help="largest power to test"))
def open_adic(ctx: LabContext, args) -> int:
    l_max = args.l_max if args.l_max is not None else ctx.config.search.open_l_max
    level = ctx.engine(args.generators).open_adic_degree(l_max)
    document = AdicOpennessDocument(l_max=l_max, level=level)
    if level is None:
        ctx.emit(document, f"not within l_max = {l_max}")
        return 2
    ctx.emit(document, f"l = {level}")
    return 0


@router.command("two-sided", "Whether R is a two-sided ideal", GENERATORS)
def two_sided(ctx: LabContext, args) -> int:
    engine = ctx.engine(args.generators)
    result = engine.is_two_sided()
    ctx.emit(TwoSidedDocument(two_sided=result, status=engine.table.status), "true" if result else "false")
    return 0


@router.command("express", "Coefficients of an element of R over the free generators",
                arg("expr"), arg("generators", nargs="+", metavar="GEN"))
def express(ctx: LabContext, args) -> int:
    engine = ctx.engine(args.generators)
    x = ctx.quiver(args.expr)
    expression = engine.express(x)
    coefficients = {label: format_quiver(c) for label, c in expression.by_label().items()}
    document = FreeExpressionDocument(element=format_quiver(x), coefficients=coefficients)
    ctx.emit(document, "\n".join(f"{label}: {c}" for label, c in coefficients.items()) or "0")
    return 0


@router.command("codim1", "Constants k_i and generators r_i = a_i - k_i of a codimension-1 ideal", GENERATORS)
def codim1(ctx: LabContext, args) -> int:
    presentation = ctx.lab().codim1_presentation(ctx.presentation(args.generators))
    constants = [ctx.field.format(k) for k in presentation.constants]
    generators = [format_quiver(r) for r in presentation.generators]
    log_info(f"codimension-1 constants {constants}")
    document = Codim1Document(constants=constants, generators=generators, two_sided=presentation.two_sided)
    lines = [f"k = ({', '.join(constants)})"]
    lines += [f"r{i} = {r}" for i, r in enumerate(generators, start=1)]
    lines.append(f"two-sided: {'true' if presentation.two_sided else 'false'}")
    ctx.emit(document, "\n".join(lines))
    return 0
