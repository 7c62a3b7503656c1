"""
Randomized end-to-end properties on seeded instances
"""

from fractions import Fraction

import pytest

from api.alpha import lp_game_route, solve_lp_via_game
from api.pipeline import solve_approximation, solve_game_via_approximation
from api.reductions import (
    choose_offset,
    embed_equilibrium,
    extract_equilibrium,
    game_to_chebyshev,
    game_to_l1,
    l1_to_cheb_naive,
    literal_closing_function,
    symmetrize,
)
from api.simplex import simplex_solve, solve_game
from api.standardize import lp_to_standard
from api.verify import brute_force_game, brute_force_lp, check_reduction_counts, verify_equilibrium, verify_lp_solution
from models.approximation import ApproxProblem, Norm, evaluate_objective
from models.game import Equilibrium, MatrixGame, validate_strategy
from models.program import LinearProgram, Status
from utils.exactnum import rat_matrix, rat_vector, zeros
from utils.seed_data import random_approx_problem, random_game, random_skew_matrix, random_standard_lp


def _games(rng, count=50):
    return [random_game(rng) for _ in range(count)]


def test_approximation_routes_agree_with_lp_route(rng):
    """Chebyshev and l1 routes recover verified equilibria with the LP route's value"""
    for game in _games(rng):
        direct = solve_game(game)
        chebyshev = solve_game_via_approximation(game, Norm.SUP)
        l1 = solve_game_via_approximation(game, Norm.SUM)

        assert verify_equilibrium(game, chebyshev.equilibrium)
        assert verify_equilibrium(game, l1.equilibrium)
        if chebyshev.problem is not None:
            assert chebyshev.optimum == 1
            assert l1.optimum == l1.record.optimum
        assert direct.value == chebyshev.equilibrium.value == l1.equilibrium.value


def test_symmetrization_bijection(rng):
    """extract . embed and embed . extract are identities"""
    for game in _games(rng):
        A = game.payoff
        M, record = symmetrize(A, choose_offset(A))
        equilibrium = solve_game(game)
        z = embed_equilibrium(equilibrium, record)
        assert all(entry <= 0 for entry in M @ z.weights)
        assert extract_equilibrium(z, record).same_as(equilibrium)

        problem, _ = game_to_chebyshev(M)
        optimal_point, _ = solve_approximation(problem)
        z = validate_strategy(optimal_point)
        recovered = extract_equilibrium(z, record)
        assert verify_equilibrium(game, recovered)
        assert list(embed_equilibrium(recovered, record).weights) == list(z.weights)


def test_structural_counts(rng):
    """2N + 2 and 4N + 2 = 4m + 4n + 6 functions in N = m + n + 1 variables"""
    for game in _games(rng, 20):
        m, n = game.shape
        M, record = symmetrize(game.payoff, choose_offset(game.payoff))
        chebyshev, chebyshev_record = game_to_chebyshev(M)
        l1, l1_record = game_to_l1(M)
        assert chebyshev.arity == l1.arity == m + n + 1
        assert chebyshev.size == 2 * (m + n + 1) + 2
        assert l1.size == 4 * m + 4 * n + 6
        assert check_reduction_counts(chebyshev, chebyshev_record, record)
        assert check_reduction_counts(l1, l1_record, record)


def test_origin_is_never_optimal_for_the_chebyshev_construction(rng):
    """x = 0 scores above 1, while the literal closing function would let it tie"""
    for game in _games(rng, 20):
        M, _ = symmetrize(game.payoff, choose_offset(game.payoff))
        problem, _ = game_to_chebyshev(M)
        origin = zeros(problem.arity)
        assert evaluate_objective(problem, origin) > 1
        literal = ApproxProblem(Norm.SUP, problem.functions[:-1] + (literal_closing_function(problem.arity),), problem.arity)
        assert evaluate_objective(literal, origin) == 1


HAND_BUILT_LPS = [
    ('max', ['1'], [(['1'], '<=', '1')], [True]),
    ('max', ['1', '1'], [(['1', '0'], '<=', '1'), (['0', '1'], '<=', '1')], [True, True]),
    ('max', ['3', '2'], [(['1', '1'], '<=', '4'), (['1', '3'], '<=', '6'), (['1', '0'], '<=', '3')], [True, True]),
    ('min', ['1', '1'], [(['1', '2'], '>=', '2'), (['3', '1'], '>=', '3')], [True, True]),
    ('max', ['1'], [(['1'], '<=', '1'), (['1'], '>=', '2')], [True]),
    ('max', ['1', '0'], [(['1', '-1'], '<=', '1')], [True, True]),
    ('max', ['1', '2', '1'], [(['1', '1', '1'], '=', '1')], [True, True, True]),
    ('min', ['1'], [(['1'], '>=', '-3')], [False]),
    ('max', ['1', '1'], [(['1', '1'], '<=', '1'), (['1', '-1'], '<=', '0')], [True, True]),
    ('max', ['2', '3', '1'], [(['1', '1', '1'], '<=', '4'), (['1', '2', '0'], '<=', '3')], [True, True, True]),
]


def _hand_built(sense, objective, rows, nonnegative) -> LinearProgram:
    arity = len(objective)
    return LinearProgram.from_dict({
        'sense': sense,
        'objective': {'constant': '0', 'coeffs': objective},
        'constraints': [
            {'lhs': {'coeffs': coeffs}, 'rel': rel, 'rhs': {'constant': rhs, 'coeffs': ['0'] * arity}}
            for coeffs, rel, rhs in rows
        ],
        'nonnegative': nonnegative,
    })


@pytest.mark.parametrize('lp', HAND_BUILT_LPS)
def test_game_route_matches_simplex(lp):
    """Same status and exact value; optimal strategies have last entry >= alpha and Mx <= 0"""
    program = _hand_built(*lp)
    standard, _ = lp_to_standard(program)
    direct = simplex_solve(standard)
    via_game = solve_lp_via_game(program)
    assert via_game.status is direct.status
    assert verify_lp_solution(standard, via_game)
    if direct.status is Status.OPTIMAL:
        assert via_game.value == direct.value
        route = lp_game_route(standard)
        assert route.strategy.weights[-1] >= route.bound.alpha
        assert all(entry <= 0 for entry in route.game @ route.strategy.weights)


def test_hand_built_lps_cover_every_status():
    statuses = {simplex_solve(lp_to_standard(_hand_built(*lp))[0]).status for lp in HAND_BUILT_LPS}
    assert statuses == set(Status)


def test_naive_l1_reduction_keeps_the_optimum(rng):
    for _ in range(20):
        problem = random_approx_problem(rng, Norm.SUM, size=rng.randint(1, 6), arity=rng.randint(1, 3))
        naive = l1_to_cheb_naive(problem)
        assert naive.size == 2 ** (problem.size - 1)
        assert solve_approximation(problem)[1] == solve_approximation(naive)[1]


def test_simplex_matches_basis_enumeration(rng):
    for _ in range(100):
        standard = random_standard_lp(rng, rows=rng.randint(1, 3), cols=rng.randint(1, 3))
        direct = simplex_solve(standard, check_cycling=True)
        oracle = brute_force_lp(standard)
        assert direct.status is oracle.status
        assert verify_lp_solution(standard, direct)
        if direct.status is Status.OPTIMAL:
            assert direct.value == oracle.value


def test_solve_game_matches_support_enumeration(rng):
    """3x3 games with entries in -2..2"""
    for _ in range(100):
        game = MatrixGame(rat_matrix([[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]))
        assert solve_game(game).value == brute_force_game(game).value


def test_symmetric_games_have_value_zero(rng):
    """Any optimal strategy of a skew game is optimal for both players"""
    for _ in range(50):
        M = random_skew_matrix(rng, size=rng.randint(1, 6))
        equilibrium = solve_game(MatrixGame(M))
        assert equilibrium.value == 0
        assert verify_equilibrium(MatrixGame(M), Equilibrium(equilibrium.row, equilibrium.row, Fraction(0)))


def _random_point(rng, arity):
    return rat_vector([Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(arity)])


def test_sum_dominates_sup_and_both_are_convex(rng):
    for _ in range(40):
        arity = rng.randint(1, 3)
        sup = random_approx_problem(rng, Norm.SUP, size=rng.randint(1, 5), arity=arity)
        summed = ApproxProblem(Norm.SUM, sup.functions, arity)
        x, y = _random_point(rng, arity), _random_point(rng, arity)
        lam = Fraction(rng.randint(0, 8), 8)
        mix = lam * x + (1 - lam) * y

        assert evaluate_objective(summed, x) >= evaluate_objective(sup, x)
        for problem in (sup, summed):
            assert evaluate_objective(problem, mix) <= lam * evaluate_objective(problem, x) + (1 - lam) * evaluate_objective(problem, y)


def test_naive_l1_reduction_is_pointwise_exact(rng):
    """max over sign patterns equals the sum of magnitudes at every x"""
    for _ in range(20):
        problem = random_approx_problem(rng, Norm.SUM, size=rng.randint(1, 6), arity=rng.randint(1, 3))
        naive = l1_to_cheb_naive(problem)
        for _ in range(5):
            x = _random_point(rng, problem.arity)
            assert evaluate_objective(naive, x) == evaluate_objective(problem, x)


def test_chebyshev_construction_penalizes_negative_entries(rng):
    """Any point with a negative coordinate scores above 1"""
    for game in _games(rng, 20):
        M, _ = symmetrize(game.payoff, choose_offset(game.payoff))
        problem, _ = game_to_chebyshev(M)
        for _ in range(5):
            x = _random_point(rng, problem.arity)
            x[rng.randrange(problem.arity)] = -Fraction(rng.randint(1, 6), rng.randint(1, 4))
            assert evaluate_objective(problem, x) > 1
