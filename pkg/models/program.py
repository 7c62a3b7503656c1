"""
Linear programs, the standard max-form, and certified LP solutions
"""

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence, Tuple

from models.approximation import AffineFunction
from utils.errors import DimensionError, ParseError
from utils.exactnum import (
    RationalMatrix,
    RationalVector,
    format_matrix,
    format_vector,
    frozen,
    rat_format,
    rat_matrix,
    rat_vector,
    to_rational,
)


class Sense(Enum):
    MIN = 'min'
    MAX = 'max'


class Relation(Enum):
    LE = '<='
    GE = '>='
    EQ = '='


@dataclass(frozen=True, eq=False)
class Constraint:
    """lhs (relation) rhs, both sides affine; stored as written"""

    lhs: AffineFunction
    relation: Relation
    rhs: AffineFunction

    def to_dict(self) -> Dict[str, Any]:
        return {'lhs': self.lhs.to_dict(), 'rel': self.relation.value, 'rhs': self.rhs.to_dict()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Constraint':
        try:
            return cls(AffineFunction.from_dict(data['lhs']), Relation(data['rel']), AffineFunction.from_dict(data['rhs']))
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"Invalid constraint {data!r}: {exc}")


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """Optimize an affine objective subject to affine constraints"""

    sense: Sense
    objective: AffineFunction
    constraints: Tuple[Constraint, ...] = ()
    nonnegative: Optional[Tuple[bool, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, 'constraints', tuple(self.constraints))
        arity = self.objective.arity
        flags = self.nonnegative
        if flags is None:
            flags = (False,) * arity
        object.__setattr__(self, 'nonnegative', tuple(bool(f) for f in flags))
        if len(self.nonnegative) != arity:
            raise DimensionError(f"{len(self.nonnegative)} sign flags for {arity} variables")
        for constraint in self.constraints:
            if constraint.lhs.arity != arity or constraint.rhs.arity != arity:
                raise DimensionError(f"Constraint arity differs from the objective's {arity}")

    @property
    def arity(self) -> int:
        return self.objective.arity

    def to_dict(self) -> Dict[str, Any]:
        return {
            'sense': self.sense.value,
            'objective': self.objective.to_dict(),
            'constraints': [c.to_dict() for c in self.constraints],
            'nonnegative': list(self.nonnegative),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'LinearProgram':
        try:
            sense = Sense(data['sense'])
            objective = AffineFunction.from_dict(data['objective'])
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"Invalid linear program: {exc}")
        raw_constraints = data.get('constraints', [])
        if not isinstance(raw_constraints, list):
            raise ParseError("'constraints' must be a list")
        constraints = tuple(Constraint.from_dict(c) for c in raw_constraints)
        flags = data.get('nonnegative')
        if flags is not None and (not isinstance(flags, list) or not all(isinstance(f, bool) for f in flags)):
            raise ParseError("'nonnegative' must be a list of booleans")
        return cls(sense, objective, constraints, tuple(flags) if flags is not None else None)


@dataclass(frozen=True, eq=False)
class StandardLP:
    """max c.x subject to A x <= b, x >= 0"""

    c: RationalVector
    A: RationalMatrix
    b: RationalVector

    def __post_init__(self):
        rows, cols = self.A.shape
        if len(self.c) != cols or len(self.b) != rows:
            raise DimensionError(f"c has {len(self.c)} and b has {len(self.b)} entries for a {rows}x{cols} matrix")
        object.__setattr__(self, 'c', frozen(self.c))
        object.__setattr__(self, 'A', frozen(self.A))
        object.__setattr__(self, 'b', frozen(self.b))

    @property
    def rows(self) -> int:
        return self.A.shape[0]

    @property
    def cols(self) -> int:
        return self.A.shape[1]

    @classmethod
    def of(cls, c: Sequence[Any], A: Sequence[Sequence[Any]], b: Sequence[Any]) -> 'StandardLP':
        return cls(rat_vector(c), rat_matrix(A, cols=len(c)), rat_vector(b, allow_empty=True))

    def to_dict(self) -> Dict[str, Any]:
        return {'c': format_vector(self.c), 'A': format_matrix(self.A), 'b': format_vector(self.b)}


class Status(Enum):
    OPTIMAL = 'OPTIMAL'
    INFEASIBLE = 'INFEASIBLE'
    UNBOUNDED = 'UNBOUNDED'


def _vector_or_none(values) -> Optional[RationalVector]:
    if values is None:
        return None
    return frozen(rat_vector(values, allow_empty=True))


@dataclass(frozen=True, eq=False)
class LPSolution:
    """
    Outcome of an LP solve, always with a certificate

    OPTIMAL carries x, value and dual (strong duality); INFEASIBLE carries a
    Farkas vector y >= 0 with yA >= 0 and yb < 0; UNBOUNDED carries a ray
    (and a feasible x). Coordinates are those of the StandardLP that was
    solved; ``point``/``objective`` hold the original LinearProgram's
    variables and objective value when one was involved.
    """

    status: Status
    x: Optional[RationalVector] = None
    value: Optional[Fraction] = None
    dual: Optional[RationalVector] = None
    certificate: Optional[RationalVector] = None
    ray: Optional[RationalVector] = None
    point: Optional[RationalVector] = None
    objective: Optional[Fraction] = None

    @classmethod
    def optimal(cls, x, value: Fraction, dual) -> 'LPSolution':
        return cls(Status.OPTIMAL, x=_vector_or_none(x), value=Fraction(value), dual=_vector_or_none(dual))

    @classmethod
    def infeasible(cls, certificate) -> 'LPSolution':
        return cls(Status.INFEASIBLE, certificate=_vector_or_none(certificate))

    @classmethod
    def unbounded(cls, ray, x=None) -> 'LPSolution':
        return cls(Status.UNBOUNDED, ray=_vector_or_none(ray), x=_vector_or_none(x))

    @property
    def is_optimal(self) -> bool:
        return self.status is Status.OPTIMAL

    def with_origin(self, point, objective: Optional[Fraction]) -> 'LPSolution':
        return replace(self, point=_vector_or_none(point), objective=objective)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'status': self.status.value}
        if self.value is not None:
            data['value'] = rat_format(self.value)
        for name in ('x', 'dual', 'certificate', 'ray'):
            vector = getattr(self, name)
            if vector is not None:
                data[name] = format_vector(vector)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'LPSolution':
        if not isinstance(data, dict):
            raise ParseError(f"An LP solution must be a JSON object, got {data!r}")
        try:
            status = Status(data['status'])
        except (KeyError, ValueError, TypeError):
            raise ParseError(f"Invalid LP solution status in {data!r}")
        value = data.get('value')
        return cls(
            status,
            x=_vector_or_none(data.get('x')),
            value=to_rational(value) if value is not None else None,
            dual=_vector_or_none(data.get('dual')),
            certificate=_vector_or_none(data.get('certificate')),
            ray=_vector_or_none(data.get('ray')),
        )
