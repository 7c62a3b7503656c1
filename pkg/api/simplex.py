"""
Exact primal simplex with Bland's rule, and the game solver built on it

The tableau is kept fraction-free: every row is scaled to integers once,
and each pivot divides exactly by the previous pivot magnitude ``det``, so
all entries stay Python ints and the current dictionary is ``T / det``.
"""

import logging
import math
from fractions import Fraction
from typing import List, Optional, Set, Tuple

import numpy as np

from api.reductions import game_to_lp_pair
from api.standardize import attach_origin, lp_to_standard
from models.game import Equilibrium, MatrixGame, is_equilibrium, validate_strategy
from models.program import LinearProgram, LPSolution, StandardLP, Status
from utils.errors import InternalInconsistencyError
from utils.exactnum import format_vector, zeros

logger = logging.getLogger(__name__)


def _row_scale(values) -> int:
    return math.lcm(1, *(Fraction(v).denominator for v in values))


class Tableau:
    """
    Dictionary for max c.x, A x + s = b, x, s >= 0

    ``rows`` holds integer numerators of B^-1 [A | I | b] scaled by ``det``,
    ``objective`` the matching reduced costs with the negated objective value
    in its last entry. ``basis[i]`` is the column basic in row i.
    """

    def __init__(self, rows: np.ndarray, objective: np.ndarray, basis: List[int]):
        self.rows = rows
        self.objective = objective
        self.basis = basis
        self.det = 1
        self.pivots = 0

    @property
    def width(self) -> int:
        return self.rows.shape[1] - 1

    def rhs(self, i: int) -> int:
        return self.rows[i, -1]

    def pivot(self, row: int, col: int):
        p = self.rows[row, col]
        sign = 1 if p > 0 else -1
        pivot_row = self.rows[row].copy()
        column = self.rows[:, col].copy()

        self.rows = sign * (p * self.rows - np.outer(column, pivot_row)) // self.det
        self.rows[row] = sign * pivot_row
        self.objective = sign * (p * self.objective - self.objective[col] * pivot_row) // self.det
        self.det = abs(p)
        self.basis[row] = col
        self.pivots += 1

    def entering(self) -> Optional[int]:
        """Bland: the lowest-index column with positive reduced cost"""
        for j in range(self.width):
            if self.objective[j] > 0:
                return j
        return None

    def leaving(self, col: int) -> Optional[int]:
        """Minimum ratio row; ties go to the lowest basic index"""
        best = None
        for i in range(len(self.basis)):
            a = self.rows[i, col]
            if a <= 0:
                continue
            if best is None:
                best = i
                continue
            left = self.rhs(i) * self.rows[best, col]
            right = self.rhs(best) * a
            if left < right or (left == right and self.basis[i] < self.basis[best]):
                best = i
        return best

    def value(self) -> Fraction:
        return Fraction(-self.objective[-1], self.det)

    def basic_values(self) -> np.ndarray:
        values = zeros(self.width)
        for i, col in enumerate(self.basis):
            values[col] = Fraction(self.rhs(i), self.det)
        return values

    def reduced_cost(self, col: int) -> Fraction:
        return Fraction(self.objective[col], self.det)

    def price_out(self, costs: np.ndarray):
        """Load a fresh objective (integer costs per column) against the current basis"""
        objective = np.concatenate([costs * self.det, np.array([0], dtype=object)])
        for i, col in enumerate(self.basis):
            if costs[col] != 0:
                objective = objective - costs[col] * self.rows[i]
        self.objective = objective

    def drop_column(self, col: int):
        self.rows = np.delete(self.rows, col, axis=1)
        self.objective = np.delete(self.objective, col)

    def __repr__(self) -> str:
        return f"Tableau(det={self.det}, basis={self.basis})\n{self.rows}\n{self.objective}"


def _run(tableau: Tableau, phase: str, check_cycling: bool) -> Optional[int]:
    """
    Pivot until optimal; returns the entering column of an unbounded ray, or None

    With ``check_cycling`` every basis is remembered and a repeat raises.
    """
    seen: Set[Tuple[int, ...]] = set()
    while True:
        if check_cycling:
            key = tuple(sorted(tableau.basis))
            if key in seen:
                raise InternalInconsistencyError(f"Basis {key} repeated in {phase}")
            seen.add(key)

        col = tableau.entering()
        if col is None:
            return None
        row = tableau.leaving(col)
        if row is None:
            return col
        logger.debug("%s pivot %d: column %d enters, column %d leaves", phase, tableau.pivots, col, tableau.basis[row])
        tableau.pivot(row, col)


def simplex_solve(standard: StandardLP, check_cycling: bool = False) -> LPSolution:
    """
    Solve max c.x s.t. A x <= b, x >= 0 exactly

    Phase I adds one artificial column (-1 in every row) only when some b_i
    is negative and maximizes -x0; phase II prices out c.

    Args:
        standard: the LP
        check_cycling: raise if a basis ever repeats within a phase

    Returns:
        OPTIMAL with x, value and row duals; INFEASIBLE with a Farkas vector;
        UNBOUNDED with an improving ray and a feasible x
    """
    r, k = standard.rows, standard.cols
    row_scales = [_row_scale(list(standard.A[i]) + [standard.b[i]]) for i in range(r)]
    cost_scale = _row_scale(standard.c)

    width = k + r
    rows = np.empty((r, width + 1), dtype=object)
    for i in range(r):
        rows[i, :k] = [int(a * row_scales[i]) for a in standard.A[i]]
        rows[i, k:width] = [1 if j == i else 0 for j in range(r)]
        rows[i, -1] = int(standard.b[i] * row_scales[i])
    costs = np.array([int(c * cost_scale) for c in standard.c] + [0] * r, dtype=object)

    tableau = Tableau(rows, np.zeros(width + 1, dtype=object), list(range(k, width)))

    if any(tableau.rhs(i) < 0 for i in range(r)):
        artificial = width
        tableau.rows = np.concatenate([tableau.rows[:, :width], np.full((r, 1), -1, dtype=object), tableau.rows[:, width:]], axis=1)
        phase_costs = np.zeros(width + 1, dtype=object)
        phase_costs[artificial] = -1
        tableau.objective = np.concatenate([phase_costs, np.array([0], dtype=object)])

        start = min(range(r), key=lambda i: (tableau.rhs(i), i))
        tableau.pivot(start, artificial)
        _run(tableau, 'phase I', check_cycling)

        if tableau.value() < 0:
            certificate = [
                row_scales[i] * -tableau.reduced_cost(k + i)
                for i in range(r)
            ]
            logger.debug("Infeasible after %d pivots, certificate %s", tableau.pivots, format_vector(certificate))
            return LPSolution.infeasible(certificate)

        if artificial in tableau.basis:
            row = tableau.basis.index(artificial)
            col = next(j for j in range(width) if tableau.rows[row, j] != 0)
            tableau.pivot(row, col)
        tableau.drop_column(artificial)
        logger.debug("Phase I done after %d pivots", tableau.pivots)

    tableau.price_out(costs)
    ray_column = _run(tableau, 'phase II', check_cycling)
    values = tableau.basic_values()
    x = values[:k]

    if ray_column is not None:
        direction = zeros(width)
        direction[ray_column] = Fraction(1)
        for i, col in enumerate(tableau.basis):
            direction[col] = Fraction(-tableau.rows[i, ray_column], tableau.det)
        logger.debug("Unbounded along column %d after %d pivots", ray_column, tableau.pivots)
        return LPSolution.unbounded(direction[:k], x)

    value = tableau.value() / cost_scale
    dual = [row_scales[i] * -tableau.reduced_cost(k + i) / cost_scale for i in range(r)]
    logger.debug("Optimal value %s after %d pivots", value, tableau.pivots)
    return LPSolution.optimal(x, value, dual)


def solve_lp(program: LinearProgram, check_cycling: bool = False) -> LPSolution:
    """Standardize, solve, and report the point and objective in the LP's own terms"""
    standard, variable_map = lp_to_standard(program)
    return attach_origin(simplex_solve(standard, check_cycling), variable_map)


def solve_game(game: MatrixGame) -> Equilibrium:
    """
    Equilibrium from one simplex solve of the row player's LP

    The row strategy and value are the primal optimum; the column strategy
    is the dual of the constraints (pA)_j >= v.

    Raises:
        InternalInconsistencyError: if the LP is not optimal or the result fails the check
    """
    m, n = game.shape
    row_lp, _ = game_to_lp_pair(game)
    standard, variable_map = lp_to_standard(row_lp)
    solution = simplex_solve(standard)
    if solution.status is not Status.OPTIMAL:
        raise InternalInconsistencyError(f"Row player's LP came back {solution.status.value}")

    point = variable_map.recover(solution.x)
    multipliers = variable_map.constraint_multipliers(solution.dual, len(row_lp.constraints))
    equilibrium = Equilibrium(validate_strategy(point[:m]), validate_strategy(-multipliers[:n]), point[m])
    if not is_equilibrium(game.payoff, equilibrium):
        raise InternalInconsistencyError("Simplex equilibrium failed the exact check")
    return equilibrium
