"""
Problem files: a kind tag, the problem itself, and optional recovery data
"""

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Union

from models.approximation import ApproxProblem, Norm
from models.game import MatrixGame
from models.program import LinearProgram
from utils.errors import KindMismatchError, ParseError

Payload = Union[MatrixGame, LinearProgram, ApproxProblem]


class ProblemKind(Enum):
    GAME = 'game'
    LP = 'lp'
    CHEBYSHEV = 'chebyshev'
    L1 = 'l1'

    @property
    def norm(self) -> Optional[Norm]:
        return {ProblemKind.CHEBYSHEV: Norm.SUP, ProblemKind.L1: Norm.SUM}.get(self)

    @classmethod
    def parse(cls, value: Any) -> 'ProblemKind':
        try:
            return cls(value)
        except ValueError:
            raise ParseError(f"Unknown problem kind {value!r}; expected one of {[k.value for k in cls]}")


def kind_of(payload: Payload) -> ProblemKind:
    if isinstance(payload, MatrixGame):
        return ProblemKind.GAME
    if isinstance(payload, LinearProgram):
        return ProblemKind.LP
    return ProblemKind.CHEBYSHEV if payload.norm is Norm.SUP else ProblemKind.L1


@dataclass(frozen=True, eq=False)
class ProblemFile:
    """
    One problem document

    ``recovery`` is present on reduction artifacts: it records how a
    solution of this problem maps back to the problem it was reduced from.
    """

    kind: ProblemKind
    payload: Payload
    recovery: Optional[Dict[str, Any]] = None

    @classmethod
    def of(cls, payload: Payload, recovery: Optional[Dict[str, Any]] = None) -> 'ProblemFile':
        return cls(kind_of(payload), payload, recovery)

    def to_dict(self) -> Dict[str, Any]:
        data = {'kind': self.kind.value}
        data.update(self.payload.to_dict())
        if self.recovery is not None:
            data['recovery'] = self.recovery
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ProblemFile':
        if not isinstance(data, dict):
            raise ParseError("A problem document must be a JSON object")
        if 'kind' not in data:
            raise ParseError("A problem document needs a 'kind'")
        kind = ProblemKind.parse(data['kind'])

        if kind is ProblemKind.GAME:
            payload = MatrixGame.from_dict(data)
        elif kind is ProblemKind.LP:
            payload = LinearProgram.from_dict(data)
        else:
            body = dict(data)
            body.setdefault('norm', kind.norm.value)
            payload = ApproxProblem.from_dict(body)
            if payload.norm is not kind.norm:
                raise KindMismatchError(f"A {kind.value} document cannot use norm {payload.norm.value!r}")
        return cls(kind, payload, data.get('recovery'))

    def dumps(self) -> str:
        return dump_document(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> 'ProblemFile':
        return cls.from_dict(parse_document(text))

    @classmethod
    def load(cls, path: Union[str, Path]) -> 'ProblemFile':
        return cls.loads(read_text(path))


def parse_document(text: str) -> Dict[str, Any]:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"Invalid JSON: {exc}")
    if not isinstance(document, dict):
        raise ParseError("A document must be a JSON object")
    return document


def dump_document(data: Dict[str, Any]) -> str:
    """Stable rendering: same document, same bytes"""
    return json.dumps(data, indent=2) + '\n'


def read_text(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise ParseError(f"Cannot read {path}: {exc}")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not UTF-8 text: {exc}")
