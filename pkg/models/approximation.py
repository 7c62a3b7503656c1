"""
Affine functions and linear approximation problems
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from utils.errors import DimensionError, ParseError
from utils.exactnum import (
    RationalLike,
    RationalVector,
    format_vector,
    frozen,
    rat_format,
    rat_vector,
    to_rational,
    zeros,
)


class Norm(Enum):
    SUP = 'sup'  # Chebyshev, max |f_i|
    SUM = 'sum'  # least absolute deviations, sum |f_i|


@dataclass(frozen=True, eq=False)
class AffineFunction:
    """b0 + c1*x1 + ... + cn*xn"""

    constant: Fraction
    coefficients: RationalVector

    def __post_init__(self):
        object.__setattr__(self, 'constant', to_rational(self.constant))
        object.__setattr__(self, 'coefficients', frozen(rat_vector(self.coefficients, allow_empty=True)))

    @property
    def arity(self) -> int:
        return len(self.coefficients)

    @classmethod
    def of(cls, constant: RationalLike, coefficients: Sequence[RationalLike]) -> 'AffineFunction':
        return cls(to_rational(constant), rat_vector(coefficients, allow_empty=True))

    def __add__(self, other: 'AffineFunction') -> 'AffineFunction':
        _require_arity(self, other.arity)
        return AffineFunction(self.constant + other.constant, self.coefficients + other.coefficients)

    def __sub__(self, other: 'AffineFunction') -> 'AffineFunction':
        _require_arity(self, other.arity)
        return AffineFunction(self.constant - other.constant, self.coefficients - other.coefficients)

    def __neg__(self) -> 'AffineFunction':
        return AffineFunction(-self.constant, -self.coefficients)

    def lifted(self, arity: int) -> 'AffineFunction':
        """Same function over more variables (new ones get coefficient 0)"""
        if arity < self.arity:
            raise DimensionError(f"Cannot lift arity {self.arity} to {arity}")
        return AffineFunction(self.constant, np.concatenate([self.coefficients, zeros(arity - self.arity)]))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'constant': rat_format(self.constant),
            'coeffs': format_vector(self.coefficients),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'AffineFunction':
        if not isinstance(data, dict) or 'coeffs' not in data:
            raise ParseError(f"Affine function needs 'constant' and 'coeffs': {data!r}")
        return cls.of(data.get('constant', '0'), data['coeffs'])


def _require_arity(f: AffineFunction, arity: int):
    if f.arity != arity:
        raise DimensionError(f"Arity mismatch: function has {f.arity} variables, got {arity}")


def evaluate_affine(f: AffineFunction, x: Sequence[Fraction]) -> Fraction:
    """Exact value b0 + sum(c_i * x_i)"""
    _require_arity(f, len(x))
    return f.constant + sum((c * v for c, v in zip(f.coefficients, x)), Fraction(0))


@dataclass(frozen=True, eq=False)
class ApproxProblem:
    """Minimize max |f_i| (SUP) or sum |f_i| (SUM) over x"""

    norm: Norm
    functions: Tuple[AffineFunction, ...]
    arity: int

    def __post_init__(self):
        object.__setattr__(self, 'functions', tuple(self.functions))
        if not self.functions:
            raise DimensionError("An approximation problem needs at least one function")
        for f in self.functions:
            _require_arity(f, self.arity)

    @property
    def size(self) -> int:
        return len(self.functions)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'norm': self.norm.value,
            'functions': [f.to_dict() for f in self.functions],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ApproxProblem':
        try:
            norm = Norm(data['norm'])
            functions = [AffineFunction.from_dict(f) for f in data['functions']]
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"Invalid approximation problem: {exc}")
        if not functions:
            raise ParseError("An approximation problem needs at least one function")
        return cls(norm, tuple(functions), functions[0].arity)


def evaluate_objective(problem: ApproxProblem, x: Sequence[Fraction]) -> Fraction:
    """
    Evaluate the approximation objective exactly

    Args:
        problem: SUP or SUM problem
        x: point of matching arity

    Returns:
        max |f_i(x)| for SUP, sum |f_i(x)| for SUM
    """
    magnitudes = [abs(evaluate_affine(f, x)) for f in problem.functions]
    if problem.norm is Norm.SUP:
        return max(magnitudes)
    return sum(magnitudes, Fraction(0))
