"""
Seed Data Generator
Sample problem files for the CLI and seeded random instances for the tests
"""

import random
from pathlib import Path
from typing import Any, Dict, List, Union

from models.approximation import AffineFunction, ApproxProblem, Norm
from models.game import MatrixGame
from models.problem_file import ProblemFile
from models.program import StandardLP
from utils.exactnum import rat_matrix


def _affine(constant: str, *coeffs: str) -> Dict[str, Any]:
    return {'constant': constant, 'coeffs': list(coeffs)}


def _bound(coeffs, rel: str, constant: str) -> Dict[str, Any]:
    """sum(coeffs * x) rel constant"""
    return {'lhs': _affine('0', *coeffs), 'rel': rel, 'rhs': _affine(constant, *(['0'] * len(coeffs)))}


SAMPLE_PROBLEMS: Dict[str, Dict[str, Any]] = {
    'matching-pennies.json': {'kind': 'game', 'payoff': [['1', '-1'], ['-1', '1']]},
    'rps-game.json': {'kind': 'game', 'payoff': [['0', '1', '-1'], ['-1', '0', '1'], ['1', '-1', '0']]},
    'game.json': {'kind': 'game', 'payoff': [['3', '1'], ['0', '2']]},
    'box-lp.json': {
        'kind': 'lp',
        'sense': 'max',
        'objective': _affine('0', '1', '1'),
        'constraints': [_bound(['1', '0'], '<=', '1'), _bound(['0', '1'], '<=', '1')],
        'nonnegative': [True, True],
    },
    'infeasible-lp.json': {
        'kind': 'lp',
        'sense': 'max',
        'objective': _affine('0', '1'),
        'constraints': [_bound(['-1'], '<=', '-2'), _bound(['1'], '<=', '1')],
        'nonnegative': [True],
    },
    'unbounded-lp.json': {
        'kind': 'lp',
        'sense': 'max',
        'objective': _affine('0', '1'),
        'constraints': [_bound(['-1'], '<=', '0')],
        'nonnegative': [True],
    },
    'cheb.json': {'kind': 'chebyshev', 'norm': 'sup', 'functions': [_affine('0', '1'), _affine('1', '-1')]},
    'l1.json': {'kind': 'l1', 'norm': 'sum', 'functions': [_affine('0', '1'), _affine('1', '-1')]},
}


def write_sample_problems(directory: Union[str, Path]) -> List[Path]:
    """Write every sample problem, in canonical form, into ``directory``"""
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for name, document in SAMPLE_PROBLEMS.items():
        path = target / name
        path.write_text(ProblemFile.from_dict(document).dumps(), encoding='utf-8')
        written.append(path)
    return written


# ============================================
# RANDOM INSTANCES
# ============================================

def random_game(rng: random.Random, max_rows: int = 5, max_cols: int = 5, low: int = -9, high: int = 9) -> MatrixGame:
    m = rng.randint(1, max_rows)
    n = rng.randint(1, max_cols)
    return MatrixGame(rat_matrix([[rng.randint(low, high) for _ in range(n)] for _ in range(m)]))


def random_skew_matrix(rng: random.Random, size: int, low: int = -5, high: int = 5):
    entries = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            entries[i][j] = rng.randint(low, high)
            entries[j][i] = -entries[i][j]
    return rat_matrix(entries)


def random_standard_lp(rng: random.Random, rows: int, cols: int, low: int = -3, high: int = 3) -> StandardLP:
    A = [[rng.randint(low, high) for _ in range(cols)] for _ in range(rows)]
    b = [rng.randint(low, high + 2) for _ in range(rows)]
    c = [rng.randint(low, high) for _ in range(cols)]
    return StandardLP.of(c, A, b)


def random_approx_problem(rng: random.Random, norm: Norm, size: int, arity: int, low: int = -4, high: int = 4) -> ApproxProblem:
    functions = tuple(
        AffineFunction.of(rng.randint(low, high), [rng.randint(low, high) for _ in range(arity)])
        for _ in range(size)
    )
    return ApproxProblem(norm, functions, arity)
