from pydantic import BaseModel, Field
from typing import Optional, List, Dict

from services.leavitt import ReductionMode
from services.localization import SearchStatus
from services.schreier import TableStatus


# ===========================
# GRAPHS AND ELEMENTS
# ===========================

class GraphEdgeDocument(BaseModel):
    id: str = Field(..., description="Edge identifier")
    source: str = Field(..., description="Source vertex s(e)")
    range: str = Field(..., description="Range vertex r(e)")


class GraphDocumentModel(BaseModel):
    name: str = Field("", description="Graph name")
    vertices: List[str] = Field(..., description="Vertex identifiers in declaration order")
    edges: List[GraphEdgeDocument] = Field(default_factory=list, description="Edges in declaration order")


class ElementTerm(BaseModel):
    coeff: str = Field(..., description="Exact coefficient: integer, fraction or residue")
    real: List[str] = Field(default_factory=list, description="Edges of the real path alpha")
    ghost: List[str] = Field(default_factory=list, description="Edges of the ghost path beta (the term is alpha·beta*)")
    vertex: str = Field(..., description="Common range r(alpha) = r(beta)")


class ElementDocument(BaseModel):
    field: str = Field("rat", description="Field descriptor")
    mode: ReductionMode = Field(ReductionMode.LEAVITT, description="Reduction mode")
    terms: List[ElementTerm] = Field(default_factory=list, description="Terms in canonical order; empty for 0")
    text: Optional[str] = Field(None, description="Canonical expression")


# ===========================
# KERNEL
# ===========================

class CheckDocument(BaseModel):
    graph: GraphDocumentModel
    sinks: List[str]
    regular_vertices: List[str]
    acyclic: bool
    path_algebra_dimension: Optional[int] = Field(None, description="dim KE when finite")
    adic_hausdorff: bool = Field(..., description="I-adic topology is Hausdorff (no sinks)")


class BasisDocument(BaseModel):
    bound: int
    monomials: List[str]
    by_total_length: Dict[int, int] = Field(default_factory=dict)
    dimension: Optional[int] = Field(None, description="Total dimension when the graph is acyclic")


# ===========================
# RIGHT IDEALS
# ===========================

class CosetDocument(BaseModel):
    index: int
    representative: str
    vertex: str
    actions: Dict[str, Dict[int, str]] = Field(default_factory=dict, description="edge -> image over live cosets")


class QuotientTableDocument(BaseModel):
    status: TableStatus
    degree_bound: int
    codimension: Optional[int] = None
    cosets: List[CosetDocument] = Field(default_factory=list)


class SchreierBasisDocument(BaseModel):
    status: TableStatus
    codimension: Optional[int] = None
    levels: List[List[str]] = Field(default_factory=list, description="Level n holds basis paths of length n")
    size: int = 0
    partial: bool = False


class FreeGeneratorDocument(BaseModel):
    label: str
    mu: str
    edge: Optional[str] = None
    vertex: str = Field(..., description="u = u·vertex")
    element: str


class FreeGeneratorsDocument(BaseModel):
    codimension: int
    rank: int
    schreier_lewin: Optional[bool] = Field(None, description="rank = codim·(n-1)+1 on the one-vertex graph")
    generators: List[FreeGeneratorDocument] = Field(default_factory=list)


class FreeExpressionDocument(BaseModel):
    element: str
    coefficients: Dict[str, str] = Field(default_factory=dict, description="generator label -> coefficient c_u")


class AdicOpennessDocument(BaseModel):
    l_max: int
    level: Optional[int] = Field(None, description="Least l with I^l inside R")


class TwoSidedDocument(BaseModel):
    two_sided: bool
    status: TableStatus


# ===========================
# LOCALIZATION
# ===========================

class CertificatePairDocument(BaseModel):
    s: str
    b: str


class CertificateDocument(BaseModel):
    subject: Optional[str] = None
    pairs: List[CertificatePairDocument] = Field(default_factory=list)
    ghost_free: bool
    sums_to_one: bool


class ExpansionDocument(BaseModel):
    vertex: str
    pairs: List[List[str]] = Field(default_factory=list, description="(mu, nu) with v = sum mu·nu*")
    exceptional_sinks: List[str] = Field(default_factory=list)
    bound: int = Field(0, description="N(v)")
    reading: str


class PathDocument(BaseModel):
    path: str
    subject: str
    image: str = Field(..., description="Normal form of the subject times the path")


class DomDocument(BaseModel):
    degree: int


class DualSystemDocument(BaseModel):
    basis: List[str]
    duals: List[str]
    orthogonal: bool
    complete: bool


class Codim1Document(BaseModel):
    constants: List[str]
    generators: List[str]
    two_sided: bool


class ModuleTypeDocument(BaseModel):
    n: int
    kind: str
    pairs: List[List[int]] = Field(default_factory=list)
    d: int
    module_type: Optional[List[int]] = Field(None, description="(1, N); null when the ring has IBN")
    ibn: bool
    k0_order: Optional[int] = Field(None, description="Order of the cyclic group K0; null when infinite")
    description: str


class ExtractionDocument(BaseModel):
    status: SearchStatus
    bound: int
    mu: Optional[str] = None
    nu: Optional[str] = None
    scalar: Optional[str] = None


class GabrielDocument(BaseModel):
    status: SearchStatus
    bound: int
    level: Optional[int] = Field(None, description="L with I^L inside R, when the witness comes from it")
    length: Optional[int] = Field(None, description="Greatest total length of a witness monomial")
    certificate: Optional[CertificateDocument] = None


class GrothendieckDocument(BaseModel):
    invariant_factors: List[int]
    free_rank: int
    description: str


class StatusResponse(BaseModel):
    status: str
    message: str
    exit_code: int
