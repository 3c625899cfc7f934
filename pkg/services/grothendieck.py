"""K0 of L_K(E): the cokernel of the vertex relations [v] = sum_{s(e)=v} [r(e)] over Z."""

import logging
from dataclasses import dataclass
from typing import List

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from services.digraph import Digraph

logger = logging.getLogger("leavitt-lab")


@dataclass
class GrothendieckReport:
    invariant_factors: List[int]  # torsion orders, each > 1
    free_rank: int

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) or "0"


def relation_matrix(graph: Digraph) -> Matrix:
    """One row per regular vertex, padded with zero rows to a square matrix."""
    index = {v: i for i, v in enumerate(graph.vertices)}
    size = len(graph.vertices)
    rows = []
    for v in graph.regular_vertices:
        row = [0] * size
        row[index[v]] += 1
        for e in graph.emitted(v):
            row[index[e.range]] -= 1
        rows.append(row)
    rows.extend([[0] * size for _ in range(size - len(rows))])
    return Matrix(rows)


def grothendieck_group(graph: Digraph) -> GrothendieckReport:
    snf = smith_normal_form(relation_matrix(graph), domain=ZZ)
    diagonal = [abs(int(snf[i, i])) for i in range(snf.rows)]
    report = GrothendieckReport(
        invariant_factors=sorted(d for d in diagonal if d > 1),
        free_rank=sum(1 for d in diagonal if d == 0),
    )
    logger.info(f"K0({graph.name or 'E'}) = {report.describe()}")
    return report
