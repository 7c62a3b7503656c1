"""
LP standardization: any LinearProgram to max c.x, A x <= b, x >= 0
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from models.approximation import evaluate_affine
from models.program import LinearProgram, LPSolution, Relation, Sense, StandardLP
from models.records import VariableMap
from utils.exactnum import RationalVector, rat_matrix, rat_vector, zeros

logger = logging.getLogger(__name__)


def lp_to_standard(program: LinearProgram) -> Tuple[StandardLP, VariableMap]:
    """
    Rewrite a general LP in standard max-form

    MIN is negated to MAX, each free variable x is split into x+ - x-,
    ``=`` becomes a ``<=`` row plus a ``>=`` row, and ``>=`` rows are negated.

    Args:
        program: the LP as written

    Returns:
        (standard LP, map back to the original variables and objective)
    """
    columns: List[Tuple[Optional[int], int]] = []
    for index, nonnegative in enumerate(program.nonnegative):
        columns.append((index, 1))
        if not nonnegative:
            columns.append((index, -1))

    def expand(coefficients) -> RationalVector:
        expanded = zeros(len(columns))
        for position, (index, sign) in enumerate(columns):
            expanded[position] = sign * coefficients[index]
        return expanded

    rows, rhs, origins = [], [], []
    for index, constraint in enumerate(program.constraints):
        difference = constraint.lhs - constraint.rhs
        coefficients = expand(difference.coefficients)
        if constraint.relation in (Relation.LE, Relation.EQ):
            rows.append(coefficients)
            rhs.append(-difference.constant)
            origins.append((index, 1))
        if constraint.relation in (Relation.GE, Relation.EQ):
            rows.append(-coefficients)
            rhs.append(difference.constant)
            origins.append((index, -1))

    sign = 1 if program.sense is Sense.MAX else -1
    c = expand(program.objective.coefficients) * sign
    standard = StandardLP(rat_vector(c), rat_matrix(rows, cols=len(columns)), rat_vector(rhs, allow_empty=True))
    variable_map = VariableMap(
        arity=program.arity,
        columns=tuple(columns),
        objective_sign=sign,
        objective_offset=program.objective.constant,
        rows=tuple(origins),
    )
    logger.debug("Standardized LP: %d variables -> %d columns, %d constraints -> %d rows",
                 program.arity, standard.cols, len(program.constraints), standard.rows)
    return standard, variable_map


def attach_origin(solution: LPSolution, variable_map: VariableMap) -> LPSolution:
    """Fill point/objective in the original LP's terms"""
    if solution.x is None:
        return solution
    objective = variable_map.recover_value(solution.value) if solution.value is not None else None
    return solution.with_origin(variable_map.recover(solution.x), objective)


def is_feasible_point(program: LinearProgram, point: np.ndarray) -> bool:
    """Exact check of every constraint and sign flag at ``point``"""
    if any(flag and value < 0 for flag, value in zip(program.nonnegative, point)):
        return False
    for constraint in program.constraints:
        left = evaluate_affine(constraint.lhs, point)
        right = evaluate_affine(constraint.rhs, point)
        if constraint.relation is Relation.LE and not left <= right:
            return False
        if constraint.relation is Relation.GE and not left >= right:
            return False
        if constraint.relation is Relation.EQ and left != right:
            return False
    return True
