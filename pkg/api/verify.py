"""
Independent checks: exact certificate verification and brute-force oracles

Nothing here calls the simplex; linear systems are solved by fraction-free
(Bareiss) elimination over Python ints.
"""

import logging
import math
from fractions import Fraction
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from models.approximation import ApproxProblem, Norm
from models.game import Equilibrium, MatrixGame, MixedStrategy
from models.program import LPSolution, StandardLP, Status
from models.records import ChebyshevGameRecord, L1GameRecord, SymmetrizationRecord
from utils.errors import CapExceededError, DimensionError, InternalInconsistencyError
from utils.exactnum import RationalVector, dot, total, zeros

logger = logging.getLogger(__name__)

DEFAULT_BASIS_CAP = 250000
DEFAULT_GAME_CAP = 4

Vertex = Tuple[Tuple[int, ...], Tuple[int, ...], List[Fraction]]


# ============================================
# CERTIFICATE CHECKS
# ============================================

def _is_strategy(weights: Sequence[Fraction]) -> bool:
    return all(w >= 0 for w in weights) and total(weights) == 1


def verify_equilibrium(game: MatrixGame, equilibrium: Equilibrium) -> bool:
    """
    True iff p, q are probability vectors and pA >= v >= Aq hold exactly

    Raises:
        DimensionError: strategy lengths do not match the payoff matrix
    """
    A = game.payoff
    m, n = A.shape
    p, q, v = equilibrium.row.weights, equilibrium.col.weights, equilibrium.value
    if len(p) != m or len(q) != n:
        raise DimensionError(f"Strategies of length {len(p)}/{len(q)} for a {m}x{n} game")
    if not _is_strategy(p) or not _is_strategy(q):
        return False
    row_payoffs = [dot(p, A[:, j]) for j in range(n)]
    col_payoffs = [dot(A[i], q) for i in range(m)]
    return all(value >= v for value in row_payoffs) and all(value <= v for value in col_payoffs)


def _primal_feasible(standard: StandardLP, x: Sequence[Fraction]) -> bool:
    if any(value < 0 for value in x):
        return False
    return all(dot(standard.A[i], x) <= standard.b[i] for i in range(standard.rows))


def verify_lp_solution(standard: StandardLP, solution: LPSolution) -> bool:
    """
    Exact check of the certificate an LPSolution carries

    OPTIMAL: x primal feasible, y >= 0 with A^T y >= c, c.x = value = b.y.
    INFEASIBLE: y >= 0, yA >= 0, y.b < 0. UNBOUNDED: d >= 0, Ad <= 0, c.d > 0,
    and the accompanying x, when present, feasible.
    """
    r, k = standard.rows, standard.cols
    if solution.status is Status.OPTIMAL:
        x, y = solution.x, solution.dual
        if x is None or y is None or solution.value is None or len(x) != k or len(y) != r:
            return False
        if not _primal_feasible(standard, x) or any(value < 0 for value in y):
            return False
        if any(dot(standard.A[:, j], y) < standard.c[j] for j in range(k)):
            return False
        return dot(standard.c, x) == solution.value == dot(standard.b, y)

    if solution.status is Status.INFEASIBLE:
        y = solution.certificate
        if y is None or len(y) != r or any(value < 0 for value in y):
            return False
        if any(dot(standard.A[:, j], y) < 0 for j in range(k)):
            return False
        return dot(standard.b, y) < 0

    d = solution.ray
    if d is None or len(d) != k or any(value < 0 for value in d):
        return False
    if any(dot(standard.A[i], d) > 0 for i in range(r)):
        return False
    if solution.x is not None and (len(solution.x) != k or not _primal_feasible(standard, solution.x)):
        return False
    return dot(standard.c, d) > 0


# ============================================
# EXACT LINEAR SYSTEMS
# ============================================

def _integer_row(values: Sequence[Union[int, Fraction]]) -> List[int]:
    scale = math.lcm(1, *(Fraction(v).denominator for v in values))
    return [int(v * scale) for v in values]


def _bareiss_solve(matrix: Sequence[Sequence[Union[int, Fraction]]], rhs: Sequence[Union[int, Fraction]]) -> Optional[List[Fraction]]:
    """
    Solve a square system exactly, or return None if it is singular

    Each equation is scaled to integers, eliminated fraction-free with row
    swaps, then back-substituted.
    """
    size = len(rhs)
    rows = [_integer_row(list(matrix[i]) + [rhs[i]]) for i in range(size)]
    previous = 1
    for k in range(size):
        pivot = next((i for i in range(k, size) if rows[i][k] != 0), None)
        if pivot is None:
            return None
        rows[k], rows[pivot] = rows[pivot], rows[k]
        for i in range(k + 1, size):
            for j in range(k + 1, size + 1):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // previous
            rows[i][k] = 0
        previous = rows[k][k]

    solution = [Fraction(0)] * size
    for i in reversed(range(size)):
        remainder = rows[i][size] - sum((rows[i][j] * solution[j] for j in range(i + 1, size)), Fraction(0))
        solution[i] = remainder / rows[i][i]
    return solution


# ============================================
# BRUTE-FORCE LP
# ============================================

def _opposite_columns(A: Sequence[Sequence[int]], cols: int) -> set:
    """Pairs of columns that are exact negatives of each other (split free variables)"""
    pairs = set()
    for a, b in combinations(range(cols), 2):
        if any(row[a] != 0 for row in A) and all(row[a] == -row[b] for row in A):
            pairs.add((a, b))
    return pairs


def _vertices(A: List[List[int]], b: List[int], cols: int, normalized: bool = False) -> Iterator[Vertex]:
    """
    Every basic feasible point of {x >= 0, Ax <= b}, or of {d >= 0, Ad <= 0, sum(d) = 1}

    A choice of support J and tight rows T (|T| = |J|, one fewer when
    normalized) gives a square system; its nonnegative, feasible solutions
    are the vertices.
    """
    rows = len(A)
    skipped = set() if normalized else _opposite_columns(A, cols)
    for size in range(0 if not normalized else 1, cols + 1):
        tight = size - 1 if normalized else size
        if tight > rows:
            break
        for support in combinations(range(cols), size):
            if skipped and any(pair in skipped for pair in combinations(support, 2)):
                continue
            for active in combinations(range(rows), tight):
                system = [[A[i][j] for j in support] for i in active]
                rhs = [b[i] for i in active]
                if normalized:
                    system.append([1] * size)
                    rhs.append(1)
                values = _bareiss_solve(system, rhs)
                if values is None or any(v < 0 for v in values):
                    continue
                if all(sum((A[i][j] * v for j, v in zip(support, values)), Fraction(0)) <= b[i] for i in range(rows)):
                    yield support, active, values


def _expand(support: Sequence[int], values: Sequence[Fraction], cols: int) -> RationalVector:
    point = zeros(cols)
    for j, v in zip(support, values):
        point[j] = v
    return point


def _improving_ray(A: List[List[int]], objective: Sequence[Fraction], cols: int) -> Optional[RationalVector]:
    """A d >= 0 with Ad <= 0 and objective.d > 0, normalized to sum 1, if any exists"""
    best, best_value = None, Fraction(0)
    for support, _, values in _vertices(A, [0] * len(A), cols, normalized=True):
        value = sum((objective[j] * v for j, v in zip(support, values)), Fraction(0))
        if value > best_value:
            best, best_value = _expand(support, values, cols), value
    return best


def basis_count(rows: int, cols: int) -> int:
    return math.comb(rows + cols, cols)


def brute_force_lp(standard: StandardLP, cap: int = DEFAULT_BASIS_CAP) -> LPSolution:
    """
    Solve max c.x, Ax <= b, x >= 0 by enumerating every basis

    Vertices come from all (support, tight rows) pairs; unboundedness is
    read off the vertices of {d >= 0, Ad <= 0, sum(d) = 1}; infeasibility
    is certified the same way on the transposed system; the dual comes from
    an optimal basis whose multipliers are dual feasible.

    Raises:
        CapExceededError: when C(rows + cols, cols) exceeds ``cap``
    """
    r, k = standard.rows, standard.cols
    count = basis_count(r, k)
    if count > cap:
        raise CapExceededError(f"{count} candidate bases exceed the cap of {cap}")

    A = [_integer_row(list(standard.A[i]) + [standard.b[i]]) for i in range(r)]
    b = [row.pop() for row in A]

    best: Optional[Fraction] = None
    optimal: List[Vertex] = []
    for vertex in _vertices(A, b, k):
        support, _, values = vertex
        value = sum((standard.c[j] * v for j, v in zip(support, values)), Fraction(0))
        if best is None or value > best:
            best, optimal = value, [vertex]
        elif value == best:
            optimal.append(vertex)

    if best is None:
        transposed = [_integer_row([-standard.A[i, j] for i in range(r)]) for j in range(k)]
        certificate = _improving_ray(transposed, [-v for v in standard.b], r)
        if certificate is None:
            raise InternalInconsistencyError("No feasible vertex and no Farkas certificate")
        logger.debug("Brute force: infeasible")
        return LPSolution.infeasible(certificate)

    x = _expand(optimal[0][0], optimal[0][2], k)
    ray = _improving_ray(A, standard.c, k)
    if ray is not None:
        logger.debug("Brute force: unbounded")
        return LPSolution.unbounded(ray, x)

    for support, active, values in optimal:
        system = [[standard.A[i, j] for i in active] for j in support]
        multipliers = _bareiss_solve(system, [standard.c[j] for j in support])
        if multipliers is None or any(y < 0 for y in multipliers):
            continue
        dual = _expand(active, multipliers, r)
        if all(dot(standard.A[:, j], dual) >= standard.c[j] for j in range(k)):
            logger.debug("Brute force: optimal value %s", best)
            return LPSolution.optimal(_expand(support, values, k), best, dual)
    raise InternalInconsistencyError("No optimal basis with dual feasible multipliers")


# ============================================
# BRUTE-FORCE GAME
# ============================================

def _indifference(block: List[List[Fraction]]) -> Optional[Tuple[List[Fraction], Fraction]]:
    """Weights w >= 0 summing to 1 that equalize every column of ``block`` at a common v"""
    size = len(block)
    system = [[block[i][j] for i in range(size)] + [Fraction(-1)] for j in range(size)]
    system.append([Fraction(1)] * size + [Fraction(0)])
    solution = _bareiss_solve(system, [Fraction(0)] * size + [Fraction(1)])
    if solution is None or any(w < 0 for w in solution[:size]):
        return None
    return solution[:size], solution[size]


def brute_force_game(game: MatrixGame, cap: int = DEFAULT_GAME_CAP) -> Equilibrium:
    """
    Support enumeration over square supports

    For each pair of equal-size supports the row and column indifference
    systems are solved exactly; the first pair that verifies is returned.

    Raises:
        CapExceededError: when m or n exceeds ``cap``
        InternalInconsistencyError: when no support pair verifies
    """
    A = game.payoff
    m, n = A.shape
    if m > cap or n > cap:
        raise CapExceededError(f"Support enumeration is limited to {cap}x{cap} games, got {m}x{n}")

    for size in range(1, min(m, n) + 1):
        for rows in combinations(range(m), size):
            for cols in combinations(range(n), size):
                block = [[A[i, j] for j in cols] for i in rows]
                row_side = _indifference(block)
                col_side = _indifference([list(column) for column in zip(*block)])
                if row_side is None or col_side is None:
                    continue
                p = _expand(rows, row_side[0], m)
                q = _expand(cols, col_side[0], n)
                candidate = Equilibrium(MixedStrategy(p), MixedStrategy(q), row_side[1])
                if verify_equilibrium(game, candidate):
                    return candidate
    raise InternalInconsistencyError("No support pair yields an equilibrium")


# ============================================
# STRUCTURAL COUNTS
# ============================================

def check_reduction_counts(
    problem: ApproxProblem,
    record: Union[ChebyshevGameRecord, L1GameRecord],
    symmetrization: Optional[SymmetrizationRecord] = None,
) -> bool:
    """
    Function and variable counts of an emitted approximation problem

    SUP: 2N + 2 functions, SUM: 4N + 2, both in N variables. With a
    symmetrization record, N must equal m + n + 1.
    """
    size = record.N
    if isinstance(record, ChebyshevGameRecord):
        expected, norm = 2 * size + 2, Norm.SUP
    else:
        expected, norm = 4 * size + 2, Norm.SUM
    ok = problem.norm is norm and problem.size == expected and problem.arity == size

    if symmetrization is not None:
        m, n = symmetrization.m, symmetrization.n
        ok = ok and size == m + n + 1
        if norm is Norm.SUM:
            ok = ok and problem.size == 4 * m + 4 * n + 6
        else:
            logger.info(
                "Chebyshev construction emits %d = 2m+2n+4 functions; the usual statement of the count reads 2m+2n+3 = %d",
                problem.size, 2 * m + 2 * n + 3,
            )
    return ok
