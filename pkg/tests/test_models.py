"""
Problem, solution and record types
"""

from fractions import Fraction

import pytest

from models.approximation import AffineFunction, ApproxProblem, Norm, evaluate_affine, evaluate_objective
from models.game import Equilibrium, MatrixGame, is_equilibrium, uniform_strategy, validate_strategy
from models.problem_file import ProblemFile, ProblemKind
from models.program import LinearProgram, LPSolution, Sense, Status
from models.records import SymmetrizationRecord, VariableMap, identity_columns
from utils.errors import DimensionError, InvalidStrategyError, KindMismatchError, ParseError
from utils.exactnum import rat_matrix, rat_vector


def test_validate_strategy_codes():
    """Negative weights and wrong sums carry distinct codes"""
    assert list(validate_strategy(['1/2', '1/2']).weights) == [Fraction(1, 2)] * 2
    with pytest.raises(InvalidStrategyError) as info:
        validate_strategy(['-1/2', '3/2'])
    assert info.value.code == 'NEGATIVE_ENTRY'
    with pytest.raises(InvalidStrategyError) as info:
        validate_strategy(['1/2', '1/3'])
    assert info.value.code == 'SUM_NOT_ONE'


def test_is_equilibrium(rps):
    """Uniform play is the only equilibrium of rock-paper-scissors, at value 0"""
    uniform = uniform_strategy(3)
    assert is_equilibrium(rps.payoff, Equilibrium(uniform, uniform, Fraction(0)))
    assert not is_equilibrium(rps.payoff, Equilibrium(uniform, uniform, Fraction(1, 10)))
    pure = validate_strategy([1, 0, 0])
    assert not is_equilibrium(rps.payoff, Equilibrium(pure, uniform, Fraction(0)))
    with pytest.raises(DimensionError):
        is_equilibrium(rps.payoff, Equilibrium(uniform_strategy(2), uniform, Fraction(0)))


def test_game_needs_a_nonempty_matrix():
    with pytest.raises(ParseError):
        MatrixGame.from_dict({'payoff': []})


def test_affine_arithmetic():
    """Sums, differences and lifting stay exact"""
    f = AffineFunction.of('1/2', [1, -2])
    g = AffineFunction.of(1, ['1/3', 0])
    point = rat_vector([3, 1])
    assert evaluate_affine(f + g, point) == evaluate_affine(f, point) + evaluate_affine(g, point)
    assert evaluate_affine(f - g, point) == Fraction(3, 2) - 2
    assert evaluate_affine(-f, point) == Fraction(-3, 2)
    assert f.lifted(3).arity == 3
    with pytest.raises(DimensionError):
        f + AffineFunction.of(0, [1])


def test_evaluate_objective_both_norms():
    """F = {x, 1 - x}: sup norm bottoms out at 1/2, sum norm at 1"""
    functions = (AffineFunction.of(0, [1]), AffineFunction.of(1, [-1]))
    sup = ApproxProblem(Norm.SUP, functions, 1)
    total = ApproxProblem(Norm.SUM, functions, 1)
    half = rat_vector(['1/2'])
    assert evaluate_objective(sup, half) == Fraction(1, 2)
    assert evaluate_objective(total, half) == 1
    assert evaluate_objective(sup, rat_vector([2])) == 2
    assert evaluate_objective(total, rat_vector([2])) == 3


def test_linear_program_defaults_to_free_variables():
    program = LinearProgram.from_dict({'sense': 'min', 'objective': {'constant': '0', 'coeffs': ['1', '2']}})
    assert program.sense is Sense.MIN
    assert program.nonnegative == (False, False)
    assert program.constraints == ()


def test_linear_program_rejects_bad_flags():
    """Sign flags must be booleans, one per variable"""
    with pytest.raises(ParseError):
        LinearProgram.from_dict({'sense': 'max', 'objective': {'coeffs': ['1']}, 'nonnegative': [1]})
    with pytest.raises(DimensionError):
        LinearProgram.from_dict({'sense': 'max', 'objective': {'coeffs': ['1']}, 'nonnegative': [True, True]})
    with pytest.raises(ParseError):
        LinearProgram.from_dict({'sense': 'sideways', 'objective': {'coeffs': ['1']}})


def test_lp_solution_serialization():
    """Certificates survive to_dict/from_dict; the original-LP point is not serialized"""
    solution = LPSolution.optimal([1, '1/2'], Fraction(3, 2), [1, 0]).with_origin(rat_vector([1]), Fraction(3))
    data = solution.to_dict()
    assert data == {'status': 'OPTIMAL', 'value': '3/2', 'x': ['1', '1/2'], 'dual': ['1', '0']}
    restored = LPSolution.from_dict(data)
    assert restored.status is Status.OPTIMAL
    assert restored.value == Fraction(3, 2)
    assert restored.point is None
    with pytest.raises(ParseError):
        LPSolution.from_dict({'status': 'MAYBE'})


def test_variable_map_recovers_split_variables():
    """x = x+ - x-, auxiliary columns are dropped"""
    variable_map = VariableMap(2, ((0, 1), (0, -1), (1, 1), (None, 1)))
    assert list(variable_map.recover(rat_vector([3, 1, 2, 9]))) == [2, 2]
    with pytest.raises(DimensionError):
        variable_map.recover(rat_vector([1]))


def test_constraint_multipliers_fold_rows_back():
    """An equality's two rows combine; a >= row is negated"""
    variable_map = VariableMap(1, identity_columns(1), rows=((0, 1), (0, -1), (1, -1)))
    assert list(variable_map.constraint_multipliers(rat_vector([2, 1, 3]), 2)) == [1, -3]


def test_variable_map_round_trip():
    variable_map = VariableMap(2, ((0, 1), (None, 1), (1, -1)), -1, Fraction(5, 2), ((0, 1), (1, -1)))
    assert VariableMap.from_dict(variable_map.to_dict()) == variable_map


def test_symmetrization_record_size():
    record = SymmetrizationRecord(Fraction(2), 2, 3, rat_matrix([[1, 2, 3], [4, 5, 6]]))
    assert record.N == 6
    assert SymmetrizationRecord.from_dict(record.to_dict()).C == 2


def test_problem_files_are_canonical(problems_dir):
    """Shipped problems parse and dump back to the same bytes"""
    for path in sorted(problems_dir.glob('*.json')):
        text = path.read_text(encoding='utf-8')
        assert ProblemFile.loads(text).dumps() == text, path.name


def test_problem_kind_and_norm_must_agree():
    document = {'kind': 'chebyshev', 'norm': 'sum', 'functions': [{'constant': '0', 'coeffs': ['1']}]}
    with pytest.raises(KindMismatchError):
        ProblemFile.from_dict(document)
    del document['norm']
    assert ProblemFile.from_dict(document).payload.norm is Norm.SUP


def test_problem_file_errors(tmp_path):
    """Unknown kinds, bad JSON and missing files are parse errors"""
    with pytest.raises(ParseError):
        ProblemFile.from_dict({'kind': 'sudoku'})
    with pytest.raises(ParseError):
        ProblemFile.loads('{"kind": ')
    with pytest.raises(ParseError):
        ProblemFile.load(tmp_path / 'missing.json')
    assert ProblemKind.parse('l1').norm is Norm.SUM


@pytest.mark.parametrize('document', [
    {'kind': 'game', 'payoff': [1, 2]},
    {'kind': 'lp', 'sense': 'max', 'objective': {'coeffs': 1}},
    {'kind': 'lp', 'sense': 'max', 'objective': {'coeffs': ['1']}, 'constraints': 5},
    {'kind': 'lp', 'sense': 'max', 'objective': {'coeffs': ['1']}, 'nonnegative': True},
    {'kind': 'l1', 'functions': [{'coeffs': '12'}]},
])
def test_wrong_shapes_are_parse_errors(document):
    with pytest.raises(ParseError):
        ProblemFile.from_dict(document)


def test_records_reject_non_integer_sizes():
    data = SymmetrizationRecord(Fraction(2), 1, 1, rat_matrix([[1]])).to_dict()
    data['m'] = 'one'
    with pytest.raises(ParseError):
        SymmetrizationRecord.from_dict(data)
    with pytest.raises(ParseError):
        LPSolution.from_dict(['OPTIMAL'])


def test_unreadable_bytes_are_parse_errors(tmp_path):
    path = tmp_path / 'latin1.json'
    path.write_bytes(b'{"kind": "l1", "functions": []}\xe9')
    with pytest.raises(ParseError):
        ProblemFile.load(path)
