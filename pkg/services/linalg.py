"""Incremental sparse row echelon form over an exact field.

Vectors are dicts from comparable keys to nonzero field elements. Every stored row remembers
which inserted vectors it was built from, so membership tests also return the combination.
"""

import logging
from typing import Any, Dict, Hashable, List, Optional, Tuple

from services.scalars import Scalar, ScalarField

logger = logging.getLogger("leavitt-lab")

Vector = Dict[Hashable, Scalar]


def add_into(target: Vector, source: Vector, factor: Scalar) -> Vector:
    """target += factor * source, dropping zeros. Mutates and returns target."""
    for key, value in source.items():
        new = target[key] + factor * value if key in target else factor * value
        if new:
            target[key] = new
        else:
            target.pop(key, None)
    return target


class EchelonBasis:
    """Rows in echelon form; the pivot of a row is its greatest key."""

    def __init__(self, field: ScalarField):
        self.field = field
        self._rows: Dict[Hashable, Vector] = {}
        self._provenance: Dict[Hashable, Vector] = {}
        self._labels: List[Any] = []

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def labels(self) -> List[Any]:
        """Labels of the vectors accepted as independent, in insertion order."""
        return list(self._labels)

    def reduce(self, vector: Vector) -> Tuple[Vector, Vector]:
        """(residual, combination) with vector = residual + sum(combination[l] * inserted[l])."""
        residual = dict(vector)
        combination: Vector = {}
        while True:
            pivots = [k for k in residual if k in self._rows]
            if not pivots:
                return residual, combination
            key = max(pivots)
            factor = residual[key]
            add_into(residual, self._rows[key], -factor)
            add_into(combination, self._provenance[key], factor)

    def add(self, vector: Vector, label: Any = None) -> bool:
        """Insert vector; False when it is already in the span."""
        residual, combination = self.reduce(vector)
        if not residual:
            return False
        pivot = max(residual)
        inverse = self.field.one / residual[pivot]
        provenance = {k: -v for k, v in combination.items()}
        add_into(provenance, {label: self.field.one}, self.field.one)
        self._rows[pivot] = {k: inverse * v for k, v in residual.items()}
        self._provenance[pivot] = {k: inverse * v for k, v in provenance.items() if v}
        self._labels.append(label)
        return True

    def contains(self, vector: Vector) -> bool:
        residual, _ = self.reduce(vector)
        return not residual

    def express(self, vector: Vector) -> Optional[Vector]:
        """Coefficients over inserted labels reproducing vector, or None when outside the span."""
        residual, combination = self.reduce(vector)
        if residual:
            return None
        return combination

