"""
Localization commands: certificates, expansions, domains, denseness, duals, module type, extraction
"""

from typing import List, Optional, Tuple

from formating.expressions import format_element, format_path, format_quiver
from models.model import (
    CertificateDocument, CertificatePairDocument, DomDocument, DualSystemDocument, ExpansionDocument,
    ExtractionDocument, GabrielDocument, ModuleTypeDocument, PathDocument
)
from routers import CommandRouter, arg
from routers.context import LabContext
from services.leavitt import LeavittElement
from services.localization import Certificate, SearchStatus
from services.module_type import module_type as evaluate_module_type
from utils.errors import InputError

router = CommandRouter(tags="localization")


def _certificate_document(certificate: Certificate) -> CertificateDocument:
    return CertificateDocument(
        subject=format_element(certificate.subject) if certificate.subject is not None else None,
        pairs=[CertificatePairDocument(s=format_quiver(p.s), b=format_element(p.b)) for p in certificate.pairs],
        ghost_free=certificate.ghost_free,
        sums_to_one=certificate.sums_to_one,
    )


def _certificate_lines(certificate: Certificate) -> List[str]:
    lines = [f"s = {format_quiver(p.s)}    b = {format_element(p.b)}" for p in certificate.pairs]
    lines.append(f"r·s in KE: {'yes' if certificate.ghost_free else 'no'}")
    lines.append(f"sum s·b = 1: {'yes' if certificate.sums_to_one else 'no'}")
    return lines


@router.command("cert", "Flat-epimorphism certificate for an element", arg("expr", nargs="?"))
def certificate(ctx: LabContext, args) -> int:
    result = ctx.lab().flat_certificate(ctx.element(args.expr))
    ctx.emit(_certificate_document(result), "\n".join(_certificate_lines(result)))
    return 0


@router.command("expand", "Vertex expansion v = sum mu·mu* clearing an element",
                arg("expr"), arg("--vertex", required=True))
def expand(ctx: LabContext, args) -> int:
    report = ctx.lab().vertex_expansion(ctx.element(args.expr), args.vertex)
    document = ExpansionDocument(vertex=report.vertex, pairs=[[str(mu), str(nu)] for mu, nu in report.pairs],
                                 exceptional_sinks=report.exceptional_sinks, bound=report.bound,
                                 reading=report.reading)
    lines = [f"{format_path(mu)} . ({format_path(nu)})^*" if len(nu) else format_path(mu)
             for mu, nu in report.pairs]
    lines.append(f"E_ex({report.vertex}) = {{{', '.join(report.exceptional_sinks)}}}")
    lines.append(f"N({report.vertex}) = {report.bound}")
    lines.append(f"reading: {report.reading}")
    ctx.emit(document, "\n".join(lines))
    return 0


@router.command("dom", "Least l with q·I^l inside KE", arg("expr", nargs="?"))
def dom(ctx: LabContext, args) -> int:
    degree = ctx.lab().dom_degree(ctx.element(args.expr))
    ctx.emit(DomDocument(degree=degree), str(degree))
    return 0


def _path_document(subject: LeavittElement, path, image: LeavittElement) -> PathDocument:
    return PathDocument(path=str(path), subject=format_element(subject), image=format_element(image))


@router.command("shrink", "A path a with r·a nonzero and in KE", arg("expr", nargs="?"))
def shrink(ctx: LabContext, args) -> int:
    r = ctx.element(args.expr)
    path = ctx.lab().shrink_to_quiver(r)
    image = (r * LeavittElement.path(ctx.reduction, path)).normal_form()
    ctx.emit(_path_document(r, path, image), f"{format_path(path)}    r·a = {format_element(image)}")
    return 0


@router.command("dense", "A path b with q1·b nonzero and q2·b in KE", arg("q1"), arg("q2"))
def dense(ctx: LabContext, args) -> int:
    q1, q2 = ctx.element(args.q1), ctx.element(args.q2)
    path = ctx.lab().common_shrink(q1, q2)
    image = (q1 * LeavittElement.path(ctx.reduction, path)).normal_form()
    ctx.emit(_path_document(q1, path, image), format_path(path))
    return 0


@router.command("dual", "Dual system s_i* of a free basis of the arrow ideal of L(1, n)",
                arg("basis", nargs="*", metavar="BASIS"))
def dual(ctx: LabContext, args) -> int:
    system = ctx.lab().dual_system(ctx.quivers(args.basis))
    basis = [format_quiver(s) for s in system.basis]
    duals = [format_element(d) for d in system.duals]
    document = DualSystemDocument(basis=basis, duals=duals, orthogonal=system.orthogonal, complete=system.complete)
    lines = [f"({s})^* = {d}" for s, d in zip(basis, duals)]
    ctx.emit(document, "\n".join(lines))
    return 0


def _pair(text: str) -> Tuple[int, int]:
    try:
        l, m = (int(part) for part in text.split(","))
    except ValueError:
        raise InputError(f"expected a pair L,M, got {text!r}")
    return l, m


@router.command("module-type", "Module type (1, N) and K0 of a localization of the free algebra",
                arg("--n", type=int, required=True, help="rank of the free algebra"),
                arg("--codim1", action="store_true", help="localization at a codimension-1 ideal"),
                arg("--lm", type=int, nargs=2, metavar=("L", "M"), help="A/I is D_m with dim_K D = l"),
                arg("--family", nargs="+", metavar="L,M", help="a family of (l, m) pairs"))
def module_type(ctx: LabContext, args) -> int:
    family: Optional[List[Tuple[int, int]]] = [_pair(p) for p in args.family] if args.family else None
    report = evaluate_module_type(args.n, codim1=args.codim1, lm=tuple(args.lm) if args.lm else None, family=family)
    document = ModuleTypeDocument(n=report.n, kind=report.kind.value, pairs=[list(p) for p in report.pairs],
                                  d=report.d, module_type=list(report.module_type) if report.module_type else None,
                                  ibn=report.ibn, k0_order=report.k0_order, description=report.describe())
    ctx.emit(document, report.describe())
    return 0


@router.command("extract", "Paths mu, nu with mu*·a·nu = k·1 in L(1, n)",
                arg("expr", nargs="?"), arg("--slack", type=int, default=None))
def extract(ctx: LabContext, args) -> int:
    result = ctx.lab().scalar_extraction(ctx.element(args.expr), args.slack)
    document = ExtractionDocument(status=result.status, bound=result.bound,
                                  mu=str(result.mu) if result.mu else None,
                                  nu=str(result.nu) if result.nu else None,
                                  scalar=ctx.field.format(result.scalar) if result.scalar is not None else None)
    if result.status is not SearchStatus.FOUND:
        ctx.emit(document, f"not found within bound {result.bound}")
        return 2
    ctx.emit(document, f"mu = {format_path(result.mu)}    nu = {format_path(result.nu)}    k = {document.scalar}")
    return 0


@router.command("gabriel", "Search b_i with sum g_i·b_i = 1",
                arg("generators", nargs="*", metavar="GEN"), arg("--bound", type=int, default=None))
def gabriel(ctx: LabContext, args) -> int:
    result = ctx.lab().gabriel_membership(ctx.presentation(args.generators), args.bound)
    certificate = _certificate_document(result.certificate) if result.certificate else None
    document = GabrielDocument(status=result.status, bound=result.bound, level=result.level,
                               length=result.length, certificate=certificate)
    if result.status is not SearchStatus.FOUND:
        ctx.emit(document, f"unknown within bound {result.bound}")
        return 2
    if result.level is not None:
        lines = [f"I^{result.level} lies in R"]
    else:
        lines = [f"witness on monomials of total length <= {result.length}"]
    lines += _certificate_lines(result.certificate)[:-2]
    ctx.emit(document, "\n".join(lines))
    return 0
