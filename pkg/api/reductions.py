"""
Reductions between matrix games, LPs and Chebyshev / l1 approximation

Each forward reduction returns the target problem together with a record;
the matching recovery map takes a solution of the target plus that record
and returns an exactly re-checked solution of the source.
"""

import logging
from fractions import Fraction
from itertools import product
from typing import List, Optional, Tuple

import numpy as np

from models.approximation import AffineFunction, ApproxProblem, Norm, evaluate_objective
from models.game import Equilibrium, MatrixGame, MixedStrategy, is_equilibrium, uniform_strategy, validate_strategy
from models.program import Constraint, LinearProgram, Relation, Sense
from models.records import (
    ChebyshevGameRecord,
    L1GameRecord,
    SymmetrizationRecord,
    VariableMap,
    identity_columns,
)
from utils.errors import CapExceededError, DimensionError, InternalInconsistencyError, RecoveryError, ReductionError
from utils.exactnum import (
    RationalMatrix,
    RationalVector,
    format_vector,
    frozen,
    is_skew_symmetric,
    mat_extreme,
    ones,
    rat_vector,
    total,
    unit,
    zeros,
)

logger = logging.getLogger(__name__)

DEFAULT_NAIVE_CAP = 16


# ============================================
# SYMMETRIZATION
# ============================================

def choose_offset(A: RationalMatrix) -> Fraction:
    """C = max(0, 1 - min A); every entry of A + C is then at least 1"""
    low, _ = mat_extreme(A)
    return max(Fraction(0), 1 - low)


def symmetrize(A: RationalMatrix, C: Fraction) -> Tuple[RationalMatrix, SymmetrizationRecord]:
    """
    Embed an m x n game into a skew-symmetric game of size m+n+1

    Blocks are [[0, A+C, -J], [-(A+C)^T, 0, J'], [J^T, -J'^T, 0]] with J, J'
    columns of ones.

    Args:
        A: payoff matrix of the original game
        C: offset with A + C > 0 elementwise

    Returns:
        (skew-symmetric matrix, record for extract_equilibrium)

    Raises:
        ReductionError: OFFSET_TOO_SMALL if some entry of A + C is <= 0
    """
    m, n = A.shape
    shifted = A + C
    if any(entry <= 0 for entry in shifted.flat):
        raise ReductionError(f"Offset {C} leaves a nonpositive entry in A + C", 'OFFSET_TOO_SMALL')

    size = m + n + 1
    M = zeros((size, size))
    M[:m, m:m + n] = shifted
    M[m:m + n, :m] = -shifted.T
    M[:m, -1] = Fraction(-1)
    M[m:m + n, -1] = Fraction(1)
    M[-1, :m] = Fraction(1)
    M[-1, m:m + n] = Fraction(-1)

    logger.debug("Symmetrized %dx%d game with offset %s into size %d", m, n, C, size)
    return frozen(M), SymmetrizationRecord(Fraction(C), m, n, frozen(A.copy()))


def embed_equilibrium(equilibrium: Equilibrium, record: SymmetrizationRecord) -> MixedStrategy:
    """(p, q, v) -> (p, q, v + C) / (2 + v + C)"""
    scale = 2 + equilibrium.value + record.C
    if scale == 0:
        raise InternalInconsistencyError("2 + v + C vanished while embedding an equilibrium")
    z = np.concatenate([equilibrium.row.weights, equilibrium.col.weights, rat_vector([equilibrium.value + record.C])])
    return validate_strategy(z / scale)


def extract_equilibrium(z: MixedStrategy, record: SymmetrizationRecord) -> Equilibrium:
    """
    Pull an optimal strategy of the symmetrized game back to (p, q, v)

    Args:
        z: optimal strategy of the symmetric game with a positive last entry
        record: record from symmetrize

    Returns:
        Equilibrium of the original game, checked exactly

    Raises:
        RecoveryError: LAST_ENTRY_ZERO, ZERO_BLOCK_MASS or NOT_OPTIMAL
    """
    m, n = record.m, record.n
    if len(z) != record.N:
        raise DimensionError(f"Strategy of length {len(z)} for a symmetrized game of size {record.N}")
    weights = z.weights
    last = weights[-1]
    if last <= 0:
        raise RecoveryError("Last entry of the symmetric strategy is zero", 'LAST_ENTRY_ZERO')
    row_mass = total(weights[:m])
    col_mass = total(weights[m:m + n])
    if row_mass == 0 or col_mass == 0:
        raise RecoveryError("A strategy block of the symmetric strategy carries no mass", 'ZERO_BLOCK_MASS')

    equilibrium = Equilibrium(
        validate_strategy(weights[:m] / row_mass),
        validate_strategy(weights[m:m + n] / col_mass),
        last / row_mass - record.C,
    )
    if not is_equilibrium(record.payoff, equilibrium):
        raise RecoveryError("Extracted strategies do not form an equilibrium", 'NOT_OPTIMAL')
    return equilibrium


def symmetric_equilibrium(x: MixedStrategy, M: RationalMatrix) -> Equilibrium:
    """A strategy x with Mx <= 0 of a skew-symmetric game gives the equilibrium (x^T, x, 0)"""
    equilibrium = Equilibrium(x, x, Fraction(0))
    if not is_equilibrium(M, equilibrium):
        raise RecoveryError(f"{format_vector(x.weights)} is not optimal for the symmetric game", 'NOT_OPTIMAL')
    return equilibrium


def _require_skew(M: RationalMatrix):
    if not is_skew_symmetric(M):
        raise ReductionError("Payoff matrix is not skew-symmetric", 'NOT_SKEW_SYMMETRIC')


def _check_strategy_of(M: RationalMatrix, x: RationalVector) -> MixedStrategy:
    strategy = validate_strategy(x)
    if any(entry > 0 for entry in M @ strategy.weights):
        raise RecoveryError("Recovered strategy does not satisfy Mx <= 0", 'NOT_OPTIMAL')
    return strategy


# ============================================
# GAME -> CHEBYSHEV
# ============================================

def game_to_chebyshev(M: RationalMatrix) -> Tuple[Optional[ApproxProblem], ChebyshevGameRecord]:
    """
    Chebyshev problem whose optimal points are the optimal strategies of M

    With M^ = M / c (c the largest entry) the 2N+2 functions are, in order:
    the rows of (M^ + 1)x, the N functions 1 - x_i, sum(x) and 2 - sum(x).
    The optimum is exactly 1. A zero matrix (c = 0) yields no problem:
    every strategy is optimal there.

    Raises:
        ReductionError: NOT_SKEW_SYMMETRIC
    """
    _require_skew(M)
    size = M.shape[0]
    _, c = mat_extreme(M)
    if c == 0:
        logger.debug("Zero symmetric game of size %d, no Chebyshev problem emitted", size)
        return None, ChebyshevGameRecord(Fraction(0), Fraction(1), size, frozen(M.copy()))

    scale = 1 / c
    scaled = M * scale
    functions: List[AffineFunction] = []
    functions.extend(AffineFunction(Fraction(0), scaled[i] + ones(size)) for i in range(size))
    functions.extend(AffineFunction(Fraction(1), -unit(size, i)) for i in range(size))
    functions.append(AffineFunction(Fraction(0), ones(size)))
    functions.append(AffineFunction(Fraction(2), -ones(size)))

    logger.debug("Chebyshev problem: %d functions in %d variables (c = %s)", len(functions), size, c)
    return ApproxProblem(Norm.SUP, tuple(functions), size), ChebyshevGameRecord(c, scale, size, frozen(M.copy()))


def literal_closing_function(size: int) -> AffineFunction:
    """
    Closing function -sum(x) - c + 1 at c = 1, as the construction is usually stated

    With it the point x = 0 scores 1 and is a spurious optimum; game_to_chebyshev
    emits 2 - sum(x) instead.
    """
    return AffineFunction(Fraction(0), -ones(size))


def chebyshev_argmin_to_strategy(x: RationalVector, record: ChebyshevGameRecord) -> MixedStrategy:
    """
    Turn an optimal point of the emitted Chebyshev problem into a strategy

    Raises:
        RecoveryError: NOT_OPTIMAL if the objective at x exceeds 1 or Mx <= 0 fails
    """
    if record.is_trivial:
        return uniform_strategy(record.N)
    if len(x) != record.N:
        raise DimensionError(f"Point of length {len(x)} for a Chebyshev problem in {record.N} variables")
    problem, _ = game_to_chebyshev(record.payoff)
    value = evaluate_objective(problem, x)
    if value > 1:
        raise RecoveryError(f"Objective {value} exceeds the optimum 1", 'NOT_OPTIMAL')
    return _check_strategy_of(record.payoff, x)


# ============================================
# GAME -> L1
# ============================================

def game_to_l1(M: RationalMatrix) -> Tuple[Optional[ApproxProblem], L1GameRecord]:
    """
    l1 problem with 4N+2 functions whose optimum Nc+N is attained exactly on optimal strategies

    Blocks, in order: rows of Mx, rows of c + Mx, x_i, 1 - x_i,
    -1 + sum(x), 1 - sum(x).
    """
    _require_skew(M)
    size = M.shape[0]
    _, c = mat_extreme(M)
    record = L1GameRecord(c, size, frozen(M.copy()))
    if c == 0:
        logger.debug("Zero symmetric game of size %d, no l1 problem emitted", size)
        return None, record

    functions: List[AffineFunction] = []
    functions.extend(AffineFunction(Fraction(0), M[i]) for i in range(size))
    functions.extend(AffineFunction(c, M[i]) for i in range(size))
    functions.extend(AffineFunction(Fraction(0), unit(size, i)) for i in range(size))
    functions.extend(AffineFunction(Fraction(1), -unit(size, i)) for i in range(size))
    functions.append(AffineFunction(Fraction(-1), ones(size)))
    functions.append(AffineFunction(Fraction(1), -ones(size)))

    logger.debug("l1 problem: %d functions in %d variables (optimum %s)", len(functions), size, record.optimum)
    return ApproxProblem(Norm.SUM, tuple(functions), size), record


def l1_argmin_to_strategy(x: RationalVector, record: L1GameRecord) -> MixedStrategy:
    if record.is_trivial:
        return uniform_strategy(record.N)
    if len(x) != record.N:
        raise DimensionError(f"Point of length {len(x)} for an l1 problem in {record.N} variables")
    problem, _ = game_to_l1(record.payoff)
    value = evaluate_objective(problem, x)
    if value > record.optimum:
        raise RecoveryError(f"Objective {value} exceeds the optimum {record.optimum}", 'NOT_OPTIMAL')
    return _check_strategy_of(record.payoff, x)


# ============================================
# APPROXIMATION -> LP
# ============================================

def _require_norm(problem: ApproxProblem, norm: Norm):
    if problem.norm is not norm:
        raise ReductionError(f"Expected a {norm.value} problem, got {problem.norm.value}", 'WRONG_NORM')


def cheb_to_lp(problem: ApproxProblem) -> Tuple[LinearProgram, VariableMap]:
    """min t subject to -t <= f_i(x) <= t; x free, t >= 0"""
    _require_norm(problem, Norm.SUP)
    n = problem.arity
    t = AffineFunction(Fraction(0), unit(n + 1, n))

    constraints = []
    for f in problem.functions:
        lifted = f.lifted(n + 1)
        constraints.append(Constraint(lifted, Relation.LE, t))
        constraints.append(Constraint(lifted, Relation.GE, -t))

    program = LinearProgram(Sense.MIN, t, tuple(constraints), (False,) * n + (True,))
    return program, VariableMap(n, identity_columns(n, 1))


def l1_to_lp(problem: ApproxProblem) -> Tuple[LinearProgram, VariableMap]:
    """min sum(t_i) subject to -t_i <= f_i(x) <= t_i; x free, t >= 0"""
    _require_norm(problem, Norm.SUM)
    n, m = problem.arity, problem.size
    arity = n + m

    constraints = []
    for i, f in enumerate(problem.functions):
        lifted = f.lifted(arity)
        t_i = AffineFunction(Fraction(0), unit(arity, n + i))
        constraints.append(Constraint(lifted, Relation.LE, t_i))
        constraints.append(Constraint(lifted, Relation.GE, -t_i))

    objective = AffineFunction(Fraction(0), np.concatenate([zeros(n), ones(m)]))
    program = LinearProgram(Sense.MIN, objective, tuple(constraints), (False,) * n + (True,) * m)
    return program, VariableMap(n, identity_columns(n, m))


def l1_to_cheb_naive(problem: ApproxProblem, cap: int = DEFAULT_NAIVE_CAP) -> ApproxProblem:
    """
    Rewrite sum |f_i| as max |f_1 +- f_2 +- ... +- f_m| over all 2^(m-1) sign patterns

    Raises:
        CapExceededError: EXPONENTIAL_BLOWUP when m exceeds ``cap``
    """
    _require_norm(problem, Norm.SUM)
    m = problem.size
    if m > cap:
        raise CapExceededError(f"{m} functions would produce 2^{m - 1} sign patterns (cap {cap})", 'EXPONENTIAL_BLOWUP')

    first, rest = problem.functions[0], problem.functions[1:]
    functions = []
    for signs in product((1, -1), repeat=m - 1):
        combined = first
        for sign, f in zip(signs, rest):
            combined = combined + f if sign > 0 else combined - f
        functions.append(combined)

    logger.debug("Naive l1 -> Chebyshev: %d functions -> %d", m, len(functions))
    return ApproxProblem(Norm.SUP, tuple(functions), problem.arity)


# ============================================
# GAME -> LP PAIR
# ============================================

def game_to_lp_pair(game: MatrixGame) -> Tuple[LinearProgram, LinearProgram]:
    """
    The row player's and the column player's LP

    Row LP over (p, v): max v s.t. (pA)_j >= v, sum(p) = 1, p >= 0.
    Column LP over (q, w): min w s.t. (Aq)_i <= w, sum(q) = 1, q >= 0.
    Constraint j of the row LP is dual to q_j.
    """
    A = game.payoff
    m, n = A.shape

    v = AffineFunction(Fraction(0), unit(m + 1, m))
    row_constraints = [
        Constraint(AffineFunction(Fraction(0), np.append(A[:, j], Fraction(0))), Relation.GE, v)
        for j in range(n)
    ]
    row_constraints.append(Constraint(
        AffineFunction(Fraction(0), np.append(ones(m), Fraction(0))), Relation.EQ, AffineFunction(Fraction(1), zeros(m + 1))
    ))
    row_lp = LinearProgram(Sense.MAX, v, tuple(row_constraints), (True,) * m + (False,))

    w = AffineFunction(Fraction(0), unit(n + 1, n))
    col_constraints = [
        Constraint(AffineFunction(Fraction(0), np.append(A[i, :], Fraction(0))), Relation.LE, w)
        for i in range(m)
    ]
    col_constraints.append(Constraint(
        AffineFunction(Fraction(0), np.append(ones(n), Fraction(0))), Relation.EQ, AffineFunction(Fraction(1), zeros(n + 1))
    ))
    col_lp = LinearProgram(Sense.MIN, w, tuple(col_constraints), (True,) * n + (False,))

    return row_lp, col_lp
