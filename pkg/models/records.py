"""
Reduction records: the metadata each reduction keeps so its solutions can be pulled back
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from utils.errors import DimensionError, ParseError
from utils.exactnum import (
    RationalMatrix,
    RationalVector,
    format_matrix,
    frozen,
    rat_format,
    rat_matrix,
    to_rational,
    zeros,
)


@dataclass(frozen=True, eq=False)
class SymmetrizationRecord:
    """Offset C (A + C > 0) and the m x n game it was applied to"""

    C: Fraction
    m: int
    n: int
    payoff: RationalMatrix

    @property
    def N(self) -> int:
        return self.m + self.n + 1

    def to_dict(self) -> Dict[str, Any]:
        return {'C': rat_format(self.C), 'm': self.m, 'n': self.n, 'payoff': format_matrix(self.payoff)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SymmetrizationRecord':
        try:
            return cls(to_rational(data['C']), int(data['m']), int(data['n']), frozen(rat_matrix(data['payoff'])))
        except KeyError as exc:
            raise ParseError(f"Symmetrization record is missing {exc}")
        except (ValueError, TypeError) as exc:
            raise ParseError(f"Invalid symmetrization record: {exc}")


@dataclass(frozen=True, eq=False)
class ChebyshevGameRecord:
    """Largest entry c of the skew matrix and the 1/c scaling; c = 0 marks the trivial game"""

    c: Fraction
    scale: Fraction
    N: int
    payoff: RationalMatrix

    @property
    def is_trivial(self) -> bool:
        return self.c == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'c': rat_format(self.c),
            'scale': rat_format(self.scale),
            'N': self.N,
            'payoff': format_matrix(self.payoff),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ChebyshevGameRecord':
        try:
            return cls(to_rational(data['c']), to_rational(data['scale']), int(data['N']), frozen(rat_matrix(data['payoff'])))
        except KeyError as exc:
            raise ParseError(f"Chebyshev record is missing {exc}")
        except (ValueError, TypeError) as exc:
            raise ParseError(f"Invalid chebyshev record: {exc}")


@dataclass(frozen=True, eq=False)
class L1GameRecord:
    c: Fraction
    N: int
    payoff: RationalMatrix

    @property
    def is_trivial(self) -> bool:
        return self.c == 0

    @property
    def optimum(self) -> Fraction:
        """Nc + N, the value attained exactly on optimal strategies"""
        return self.N * self.c + self.N

    def to_dict(self) -> Dict[str, Any]:
        return {'c': rat_format(self.c), 'N': self.N, 'payoff': format_matrix(self.payoff)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'L1GameRecord':
        try:
            return cls(to_rational(data['c']), int(data['N']), frozen(rat_matrix(data['payoff'])))
        except KeyError as exc:
            raise ParseError(f"l1 record is missing {exc}")
        except (ValueError, TypeError) as exc:
            raise ParseError(f"Invalid l1 record: {exc}")


@dataclass(frozen=True)
class AlphaBound:
    """alpha = beta^(-2N) * N^(-ceil(N/2)), a rational lower bound on vertex last entries"""

    beta: Fraction
    N: int
    alpha: Fraction

    def to_dict(self) -> Dict[str, Any]:
        return {'beta': rat_format(self.beta), 'N': self.N, 'alpha': rat_format(self.alpha)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'AlphaBound':
        try:
            return cls(to_rational(data['beta']), int(data['N']), to_rational(data['alpha']))
        except KeyError as exc:
            raise ParseError(f"Alpha bound is missing {exc}")
        except (ValueError, TypeError) as exc:
            raise ParseError(f"Invalid alpha bound: {exc}")


@dataclass(frozen=True)
class VariableMap:
    """
    How the variables of a reduced LP map back to the source problem

    Each reduced column contributes ``sign * value`` to one source variable,
    or to nothing (auxiliary t, t_i). The source objective equals
    ``objective_sign * reduced_value + objective_offset``. ``rows`` lists, for
    standardized LPs, the constraint index behind each row and its
    orientation: +1 for ``lhs - rhs <= ...``, -1 for ``rhs - lhs <= ...``.
    """

    arity: int
    columns: Tuple[Tuple[Optional[int], int], ...]
    objective_sign: int = 1
    objective_offset: Fraction = Fraction(0)
    rows: Tuple[Tuple[int, int], ...] = ()

    def recover(self, values: Sequence[Fraction]) -> RationalVector:
        """Pull a point (or a direction) back to the source variables"""
        if len(values) != len(self.columns):
            raise DimensionError(f"Expected {len(self.columns)} reduced values, got {len(values)}")
        point = zeros(self.arity)
        for value, (target, sign) in zip(values, self.columns):
            if target is not None:
                point[target] += sign * value
        return point

    def recover_value(self, value: Fraction) -> Fraction:
        return self.objective_sign * value + self.objective_offset

    def constraint_multipliers(self, dual: Sequence[Fraction], count: int) -> RationalVector:
        """
        One multiplier per original constraint, read as ``lhs - rhs <= 0``

        A <= constraint gets its row dual, a >= constraint the negated dual
        of its flipped row, an equality the difference of its two rows.
        """
        if len(dual) != len(self.rows):
            raise DimensionError(f"Expected {len(self.rows)} row duals, got {len(dual)}")
        multipliers = zeros(count)
        for y, (index, orientation) in zip(dual, self.rows):
            multipliers[index] += orientation * y
        return multipliers

    def to_dict(self) -> Dict[str, Any]:
        return {
            'arity': self.arity,
            'columns': [[target, sign] for target, sign in self.columns],
            'objective_sign': self.objective_sign,
            'objective_offset': rat_format(self.objective_offset),
            'rows': [[index, orientation] for index, orientation in self.rows],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'VariableMap':
        try:
            columns = tuple((None if target is None else int(target), int(sign)) for target, sign in data['columns'])
            rows = tuple((int(index), int(orientation)) for index, orientation in data.get('rows', []))
            return cls(
                int(data['arity']),
                columns,
                int(data.get('objective_sign', 1)),
                to_rational(data.get('objective_offset', '0')),
                rows,
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"Invalid variable map: {exc}")


def identity_columns(arity: int, auxiliary: int = 0) -> Tuple[Tuple[Optional[int], int], ...]:
    """Columns keeping the first ``arity`` variables and dropping ``auxiliary`` more"""
    kept: List[Tuple[Optional[int], int]] = [(i, 1) for i in range(arity)]
    return tuple(kept + [(None, 1)] * auxiliary)
