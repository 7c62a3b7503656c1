"""
Solving an LP through one matrix game

The standard LP is embedded in a skew-symmetric game whose optimal
strategies with a positive last entry encode primal/dual optima. A
modified game, with a multiple alpha/(1-alpha) of the last column added to
the others, forces that last entry to be at least alpha.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from api.simplex import simplex_solve
from api.simplex import solve_game as solve_game_by_simplex
from api.standardize import attach_origin, lp_to_standard
from models.game import Equilibrium, MatrixGame, MixedStrategy, validate_strategy
from models.program import LinearProgram, LPSolution, StandardLP, Status
from models.records import AlphaBound
from utils.errors import DimensionError, InternalInconsistencyError, RecoveryError, ReductionError
from utils.exactnum import RationalMatrix, beta_bound, dot, format_vector, frozen, ones, rat_vector, total, zeros

logger = logging.getLogger(__name__)

GameSolver = Callable[[MatrixGame], Equilibrium]


def standard_lp_to_game(standard: StandardLP) -> RationalMatrix:
    """[[0, A, -b], [-A^T, 0, c], [b^T, -c^T, 0]] of size rows + cols + 1"""
    r, k = standard.rows, standard.cols
    size = r + k + 1
    M = zeros((size, size))
    M[:r, r:r + k] = standard.A
    M[:r, -1] = -standard.b
    M[r:r + k, :r] = -standard.A.T
    M[r:r + k, -1] = standard.c
    M[-1, :r] = standard.b
    M[-1, r:r + k] = -standard.c
    return frozen(M)


def alpha_bound(M: RationalMatrix) -> AlphaBound:
    """
    alpha = beta^(-2N) * N^(-ceil(N/2))

    beta bounds every numerator and denominator of M; rounding the exponent
    of N up keeps alpha rational and below beta^(-2N) * N^(-N/2).

    Raises:
        ReductionError: ALPHA_UNDEFINED for N < 2
    """
    size = M.shape[0]
    if size < 2:
        raise ReductionError(f"The alpha bound needs N >= 2, got {size}", 'ALPHA_UNDEFINED')
    beta = beta_bound(M)
    alpha = 1 / (beta ** (2 * size) * Fraction(size) ** math.ceil(size / 2))
    return AlphaBound(beta, size, alpha)


def _shift_factor(alpha: Fraction) -> Fraction:
    if not 0 < alpha < 1:
        raise ReductionError(f"alpha must lie in (0, 1), got {alpha}", 'ALPHA_OUT_OF_RANGE')
    return alpha / (1 - alpha)


def modify_game(M: RationalMatrix, alpha: Fraction) -> RationalMatrix:
    """Add alpha/(1-alpha) times the last column to every other column"""
    factor = _shift_factor(alpha)
    modified = M.copy()
    modified[:, :-1] = M[:, :-1] + factor * M[:, -1:]
    return frozen(modified)


def shift_mass(x: MixedStrategy, alpha: Fraction) -> MixedStrategy:
    """x' + (alpha/(1-alpha)) * (mass off the last entry) * e_N, renormalized"""
    factor = _shift_factor(alpha)
    moved = factor * total(x.weights[:-1])
    shifted = x.weights.copy()
    shifted[-1] = shifted[-1] + moved
    return validate_strategy(shifted / (1 + moved))


def recover_from_modified(x: MixedStrategy, alpha: Fraction, M: RationalMatrix) -> MixedStrategy:
    """
    Strategy of the symmetric game from a column-optimal strategy of the modified one

    Raises:
        RecoveryError: NOT_OPTIMAL when Mx <= 0 fails, i.e. x' did not hold
            the modified game to value 0
    """
    if len(x) != M.shape[0]:
        raise DimensionError(f"Strategy of length {len(x)} for a game of size {M.shape[0]}")
    recovered = shift_mass(x, alpha)
    if any(entry > 0 for entry in M @ recovered.weights):
        raise RecoveryError(f"Mx <= 0 fails for {format_vector(recovered.weights)}", 'NOT_OPTIMAL')
    if recovered.weights[-1] < alpha:
        raise InternalInconsistencyError("Recovered last entry fell below alpha")
    return recovered


@dataclass(frozen=True, eq=False)
class GameRoute:
    """Everything the game route computed for one standard LP"""

    game: RationalMatrix
    bound: AlphaBound
    modified: RationalMatrix
    equilibrium: Equilibrium
    strategy: Optional[MixedStrategy] = None

    @property
    def value_is_zero(self) -> bool:
        return self.equilibrium.value == 0


def lp_game_route(standard: StandardLP, solve_game: Optional[GameSolver] = None) -> GameRoute:
    """Build and solve the modified game; recover the symmetric strategy when its value is 0"""
    solve_game = solve_game or solve_game_by_simplex
    M = standard_lp_to_game(standard)
    bound = alpha_bound(M)
    modified = modify_game(M, bound.alpha)
    equilibrium = solve_game(MatrixGame(modified))
    logger.debug("Modified game of size %d, alpha %s, value %s", bound.N, bound.alpha, equilibrium.value)

    strategy = None
    if equilibrium.value == 0:
        strategy = recover_from_modified(equilibrium.col, bound.alpha, M)
    return GameRoute(M, bound, modified, equilibrium, strategy)


def solve_lp_via_game(program: LinearProgram, solve_game: Optional[GameSolver] = None) -> LPSolution:
    """
    Solve an LP with a single game solve plus, when needed, a feasibility check

    Value 0 of the modified game: the recovered strategy z gives
    x = z[middle] / z_last and y = z[first] / z_last. Otherwise the LP has no
    optimum, and a feasibility solve tells INFEASIBLE from UNBOUNDED.

    Args:
        program: any LinearProgram
        solve_game: game solver, the simplex one by default

    Returns:
        A certified LPSolution in standard coordinates with point/objective attached
    """
    standard, variable_map = lp_to_standard(program)
    route = lp_game_route(standard, solve_game)
    r, k = standard.rows, standard.cols

    if route.strategy is not None:
        z = route.strategy.weights
        last = z[-1]
        x = z[r:r + k] / last
        y = z[:r] / last
        solution = LPSolution.optimal(x, dot(standard.c, x), y)
        return attach_origin(solution, variable_map)

    feasibility = simplex_solve(StandardLP(zeros(k), standard.A, standard.b))
    if feasibility.status is Status.INFEASIBLE:
        logger.debug("Modified game value %s; LP is infeasible", route.equilibrium.value)
        return feasibility

    bounded_rays = StandardLP(
        standard.c,
        np.vstack([standard.A, ones((1, k))]),
        rat_vector(list(zeros(r)) + [1]),
    )
    ray = simplex_solve(bounded_rays)
    if ray.status is not Status.OPTIMAL or ray.value <= 0:
        raise InternalInconsistencyError("Feasible LP without an optimum has no improving ray")
    logger.debug("Modified game value %s; LP is unbounded", route.equilibrium.value)
    return attach_origin(LPSolution.unbounded(ray.x, feasibility.x), variable_map)
