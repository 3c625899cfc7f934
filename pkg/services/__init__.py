"""Services package for the algebra kernel and the witness constructions."""

from .digraph import Digraph, Edge, Path, dynkin_graph, one_vertex_graph
from .leavitt import LeavittElement, LeavittMonomial, ReductionConfig, ReductionMode
from .localization import LocalizationLab, SearchStatus
from .quiver import QuiverElement
from .scalars import ScalarField
from .schreier import QuotientTable, RightIdealPresentation, SchreierEngine, TableStatus

__all__ = [
    "Digraph", "Edge", "Path", "dynkin_graph", "one_vertex_graph",
    "LeavittElement", "LeavittMonomial", "ReductionConfig", "ReductionMode",
    "LocalizationLab", "SearchStatus",
    "QuiverElement",
    "ScalarField",
    "QuotientTable", "RightIdealPresentation", "SchreierEngine", "TableStatus",
]
