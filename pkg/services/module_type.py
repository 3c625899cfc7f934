"""Module types of Leavitt algebras and their rings of quotients.

L(1, n) has type (1, n). Localizing the free algebra of rank n at the powers of a maximal ideal I
with A/I a matrix ring D_m over a division algebra D of dimension l gives type (1, lm(n-1)+1);
a family of such ideals gives (1, d(n-1)+1) with d the gcd of the l·m. K0 is cyclic of order N - 1.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import List, Optional, Sequence, Tuple

from utils.errors import InputError

logger = logging.getLogger("leavitt-lab")


class ModuleTypeInput(str, Enum):
    CODIM1 = "codim1"
    LM = "lm"
    FAMILY = "family"


@dataclass
class ModuleTypeReport:
    n: int
    kind: ModuleTypeInput
    pairs: List[Tuple[int, int]] = field(default_factory=list)
    d: int = 1
    module_type: Optional[Tuple[int, int]] = None  # None when the ring has IBN
    k0_order: Optional[int] = None  # None: infinite cyclic

    @property
    def ibn(self) -> bool:
        return self.module_type is None

    def describe(self) -> str:
        if self.ibn:
            return "IBN (Laurent polynomial algebra), K0 = Z"
        if self.k0_order == 1:
            group = "0"
        else:
            group = f"Z/{self.k0_order}"
        return f"({self.module_type[0]}, {self.module_type[1]}), K0 = {group}"


def module_type(n: int, codim1: bool = False, lm: Optional[Tuple[int, int]] = None,
                family: Optional[Sequence[Tuple[int, int]]] = None) -> ModuleTypeReport:
    """Type (1, d(n-1)+1) for exactly one of the three input shapes."""
    if n < 1:
        raise InputError("n must be at least 1")
    given = [codim1, lm is not None, family is not None]
    if sum(given) != 1:
        raise InputError("give exactly one of --codim1, --lm or --family")
    if codim1:
        report = ModuleTypeReport(n, ModuleTypeInput.CODIM1, [(1, 1)])
    elif lm is not None:
        report = ModuleTypeReport(n, ModuleTypeInput.LM, [tuple(lm)])
    else:
        report = ModuleTypeReport(n, ModuleTypeInput.FAMILY, [tuple(p) for p in family])
        if not report.pairs:
            raise InputError("a family needs at least one (l, m) pair")
    d = 0
    for l, m in report.pairs:
        if l < 1 or m < 1:
            raise InputError(f"l and m must be positive, got ({l}, {m})")
        d = gcd(d, l * m)
    report.d = d
    if n == 1:
        return report
    N = d * (n - 1) + 1
    report.module_type = (1, N)
    report.k0_order = N - 1
    logger.info(f"module type {report.describe()}")
    return report
