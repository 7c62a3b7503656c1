"""
Matrix games, mixed strategies and equilibria
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Sequence

from utils.errors import DimensionError, InvalidStrategyError, ParseError
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
    total,
)


@dataclass(frozen=True, eq=False)
class MatrixGame:
    """Zero-sum game; the row player maximizes pAq, the column player minimizes it"""

    payoff: RationalMatrix

    def __post_init__(self):
        payoff = self.payoff
        if getattr(payoff, 'ndim', 0) != 2 or payoff.shape[0] < 1 or payoff.shape[1] < 1:
            raise DimensionError("A payoff matrix needs at least one row and one column")
        object.__setattr__(self, 'payoff', frozen(payoff))

    @property
    def shape(self):
        return self.payoff.shape

    @classmethod
    def of(cls, rows: Sequence[Sequence[Any]]) -> 'MatrixGame':
        return cls(rat_matrix(rows))

    def to_dict(self) -> Dict[str, Any]:
        return {'payoff': format_matrix(self.payoff)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'MatrixGame':
        if 'payoff' not in data or not data['payoff']:
            raise ParseError("A game document needs a nonempty 'payoff' matrix")
        return cls.of(data['payoff'])


@dataclass(frozen=True, eq=False)
class MixedStrategy:
    """Probability vector; build through validate_strategy"""

    weights: RationalVector

    def __len__(self):
        return len(self.weights)

    def to_list(self):
        return format_vector(self.weights)


def validate_strategy(x: Sequence[Any]) -> MixedStrategy:
    """
    Check that x is a probability vector, exactly

    Args:
        x: candidate weights

    Returns:
        The validated strategy

    Raises:
        InvalidStrategyError: NEGATIVE_ENTRY or SUM_NOT_ONE
    """
    weights = rat_vector(x)
    if any(w < 0 for w in weights):
        raise InvalidStrategyError(f"Negative weight in {format_vector(weights)}", 'NEGATIVE_ENTRY')
    if total(weights) != 1:
        raise InvalidStrategyError(f"Weights sum to {rat_format(total(weights))}, not 1", 'SUM_NOT_ONE')
    return MixedStrategy(frozen(weights))


def uniform_strategy(size: int) -> MixedStrategy:
    return validate_strategy([Fraction(1, size)] * size)


@dataclass(frozen=True, eq=False)
class Equilibrium:
    """(p, q, v) with pA >= v >= Aq"""

    row: MixedStrategy
    col: MixedStrategy
    value: Fraction

    def to_dict(self) -> Dict[str, Any]:
        return {
            'value': rat_format(self.value),
            'row': self.row.to_list(),
            'col': self.col.to_list(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Equilibrium':
        try:
            return cls(validate_strategy(data['row']), validate_strategy(data['col']), to_rational(data['value']))
        except KeyError as exc:
            raise ParseError(f"Equilibrium document is missing {exc}")
        except TypeError as exc:
            raise ParseError(f"Invalid equilibrium document: {exc}")

    def same_as(self, other: 'Equilibrium') -> bool:
        return (
            self.value == other.value
            and list(self.row.weights) == list(other.row.weights)
            and list(self.col.weights) == list(other.col.weights)
        )


def is_equilibrium(payoff: RationalMatrix, equilibrium: Equilibrium) -> bool:
    """Exact check of pA >= v elementwise and Aq <= v elementwise"""
    m, n = payoff.shape
    if len(equilibrium.row) != m or len(equilibrium.col) != n:
        raise DimensionError(f"Strategies of length {len(equilibrium.row)}/{len(equilibrium.col)} for a {m}x{n} game")
    v = equilibrium.value
    row_payoffs = equilibrium.row.weights @ payoff
    col_payoffs = payoff @ equilibrium.col.weights
    return all(value >= v for value in row_payoffs) and all(value <= v for value in col_payoffs)
