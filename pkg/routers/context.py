"""
Per-invocation state shared by the command handlers
"""

import sys
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional, Sequence, TextIO

from pydantic import BaseModel

from config.lab_config import LabConfig
from formating.expressions import parse_element, parse_quiver
from formating.graph_format import load_graph
from services.digraph import Digraph
from services.leavitt import LeavittElement, ReductionConfig, ReductionMode
from services.localization import LocalizationLab
from services.quiver import QuiverElement
from services.scalars import ScalarField
from services.schreier import RightIdealPresentation, SchreierEngine
from utils.errors import InputError


@dataclass
class LabContext:
    config: LabConfig
    graph_file: Optional[str] = None
    mode: ReductionMode = ReductionMode.LEAVITT
    stdin: TextIO = field(default_factory=lambda: sys.stdin)
    stdout: TextIO = field(default_factory=lambda: sys.stdout)

    @cached_property
    def field(self) -> ScalarField:
        return ScalarField(self.config.field.descriptor)

    @cached_property
    def graph(self) -> Digraph:
        if not self.graph_file:
            raise InputError("this command needs --graph FILE")
        return load_graph(self.graph_file)

    @cached_property
    def reduction(self) -> ReductionConfig:
        return ReductionConfig(self.graph, self.field, self.mode)

    @property
    def json(self) -> bool:
        return self.config.output.json

    # -- inputs ----------------------------------------------------------------

    def _text(self, text: Optional[str]) -> str:
        if text is None or text == "-":
            text = self.stdin.read().strip()
        if not text:
            raise InputError("empty expression")
        return text

    def _texts(self, texts: Sequence[str]) -> List[str]:
        if texts:
            return list(texts)
        return [line.strip() for line in self.stdin.read().splitlines() if line.strip()]

    def element(self, text: Optional[str]) -> LeavittElement:
        return parse_element(self._text(text), self.reduction)

    def quiver(self, text: Optional[str]) -> QuiverElement:
        return parse_quiver(self._text(text), self.graph, self.field)

    def quivers(self, texts: Sequence[str]) -> List[QuiverElement]:
        return [parse_quiver(t, self.graph, self.field) for t in self._texts(texts)]

    def presentation(self, texts: Sequence[str]) -> RightIdealPresentation:
        return RightIdealPresentation(self.graph, self.field, tuple(self.quivers(texts)))

    def engine(self, texts: Sequence[str]) -> SchreierEngine:
        return SchreierEngine(self.presentation(texts), self.config.schreier)

    def lab(self) -> LocalizationLab:
        return LocalizationLab(self.reduction, self.config.search, self.config.schreier)

    # -- output ------------------------------------------------------------------

    def emit(self, document: BaseModel, text: str):
        if self.json:
            self.stdout.write(document.model_dump_json(indent=2) + "\n")
        else:
            self.stdout.write(text.rstrip("\n") + "\n")
