"""
Standardization and the exact simplex
"""

from fractions import Fraction

import pytest

from api.simplex import simplex_solve, solve_game, solve_lp
from api.standardize import is_feasible_point, lp_to_standard
from api.verify import verify_equilibrium, verify_lp_solution
from models.game import MatrixGame
from models.problem_file import ProblemFile
from models.program import LinearProgram, StandardLP, Status
from utils.exactnum import rat_vector


def _program(problems_dir, name) -> LinearProgram:
    return ProblemFile.load(problems_dir / name).payload


def test_standardize_box(problems_dir):
    """A nonnegative <= LP is already standard"""
    standard, variable_map = lp_to_standard(_program(problems_dir, 'box-lp.json'))
    assert standard.to_dict() == {'c': ['1', '1'], 'A': [['1', '0'], ['0', '1']], 'b': ['1', '1']}
    assert variable_map.rows == ((0, 1), (1, 1))


def test_standardize_min_with_free_variable():
    """min x s.t. x >= -2 becomes max -x+ + x- s.t. -x+ + x- <= 2"""
    program = LinearProgram.from_dict({
        'sense': 'min',
        'objective': {'constant': '0', 'coeffs': ['1']},
        'constraints': [{'lhs': {'coeffs': ['1']}, 'rel': '>=', 'rhs': {'constant': '-2', 'coeffs': ['0']}}],
    })
    standard, variable_map = lp_to_standard(program)
    assert standard.to_dict() == {'c': ['-1', '1'], 'A': [['-1', '1']], 'b': ['2']}
    assert variable_map.columns == ((0, 1), (0, -1))
    assert variable_map.objective_sign == -1

    solution = solve_lp(program)
    assert solution.status is Status.OPTIMAL
    assert solution.objective == -2
    assert list(solution.point) == [-2]


def test_equality_splits_into_two_rows():
    program = LinearProgram.from_dict({
        'sense': 'max',
        'objective': {'coeffs': ['1', '2', '1']},
        'constraints': [{'lhs': {'coeffs': ['1', '1', '1']}, 'rel': '=', 'rhs': {'constant': '1', 'coeffs': ['0', '0', '0']}}],
        'nonnegative': [True, True, True],
    })
    standard, variable_map = lp_to_standard(program)
    assert standard.rows == 2
    assert variable_map.rows == ((0, 1), (0, -1))
    solution = solve_lp(program)
    assert solution.objective == 2
    assert list(solution.point) == [0, 1, 0]
    assert is_feasible_point(program, solution.point)


def test_box_lp_optimal(problems_dir):
    """max x + y on the unit box: value 2 with duals (1, 1)"""
    standard, _ = lp_to_standard(_program(problems_dir, 'box-lp.json'))
    solution = simplex_solve(standard)
    assert solution.status is Status.OPTIMAL
    assert solution.value == 2
    assert list(solution.x) == [1, 1]
    assert list(solution.dual) == [1, 1]
    assert verify_lp_solution(standard, solution)


def test_infeasible_lp_has_farkas_certificate(problems_dir):
    standard, _ = lp_to_standard(_program(problems_dir, 'infeasible-lp.json'))
    solution = simplex_solve(standard)
    assert solution.status is Status.INFEASIBLE
    assert verify_lp_solution(standard, solution)


def test_unbounded_lp_has_ray(problems_dir):
    """The ray comes with a feasible starting point"""
    standard, _ = lp_to_standard(_program(problems_dir, 'unbounded-lp.json'))
    solution = simplex_solve(standard)
    assert solution.status is Status.UNBOUNDED
    assert solution.x is not None
    assert verify_lp_solution(standard, solution)


def test_phase_one_from_negative_rhs():
    """min x + y s.t. x + 2y >= 2, 3x + y >= 3 starts infeasible at the origin"""
    standard = StandardLP.of([-1, -1], [[-1, -2], [-3, -1]], [-2, -3])
    solution = simplex_solve(standard, check_cycling=True)
    assert solution.status is Status.OPTIMAL
    assert solution.value == Fraction(-7, 5)
    assert list(solution.x) == [Fraction(4, 5), Fraction(3, 5)]
    assert verify_lp_solution(standard, solution)


def test_bland_rule_terminates_on_cycling_example():
    """Beale's degenerate LP cycles under Dantzig's rule; Bland's rule must not repeat a basis"""
    standard = StandardLP.of(
        ['3/4', -20, '1/2', -6],
        [['1/4', -8, -1, 9], ['1/2', -12, '-1/2', 3], [0, 0, 1, 0]],
        [0, 0, 1],
    )
    solution = simplex_solve(standard, check_cycling=True)
    assert solution.status is Status.OPTIMAL
    assert solution.value == Fraction(5, 4)
    assert verify_lp_solution(standard, solution)


def test_rational_data_is_scaled_exactly():
    """max x s.t. x/3 <= 1/7 gives exactly 3/7"""
    standard = StandardLP.of([1], [['1/3']], ['1/7'])
    solution = simplex_solve(standard)
    assert solution.value == Fraction(3, 7)
    assert list(solution.dual) == [3]


def test_empty_constraint_set_is_unbounded():
    standard = StandardLP.of([1, 0], [], [])
    solution = simplex_solve(standard)
    assert solution.status is Status.UNBOUNDED
    assert verify_lp_solution(standard, solution)


def test_solve_game_rock_paper_scissors(rps):
    """Value 0, uniform strategies for both players"""
    equilibrium = solve_game(rps)
    assert equilibrium.value == 0
    assert list(equilibrium.row.weights) == [Fraction(1, 3)] * 3
    assert list(equilibrium.col.weights) == [Fraction(1, 3)] * 3
    assert verify_equilibrium(rps, equilibrium)


@pytest.mark.parametrize('payoff, value, row, col', [
    ([[3, 1], [0, 2]], Fraction(3, 2), ['1/2', '1/2'], ['1/4', '3/4']),
    ([[1, -1], [-1, 1]], Fraction(0), ['1/2', '1/2'], ['1/2', '1/2']),
    ([[2, 3], [1, 0]], Fraction(2), ['1', '0'], ['1', '0']),
    ([['-5/2']], Fraction(-5, 2), ['1'], ['1']),
])
def test_solve_game_known_values(payoff, value, row, col):
    equilibrium = solve_game(MatrixGame.of(payoff))
    assert equilibrium.value == value
    assert list(equilibrium.row.weights) == list(rat_vector(row))
    assert list(equilibrium.col.weights) == list(rat_vector(col))


def test_solve_game_rectangular():
    """A 2x3 game where one column is dominated"""
    game = MatrixGame.of([[1, 4, 0], [3, 5, 2]])
    equilibrium = solve_game(game)
    assert equilibrium.value == 2
    assert verify_equilibrium(game, equilibrium)
