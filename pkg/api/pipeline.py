"""
Pipeline - solve paths, reduction arrows, solution documents and the demo

Solve paths are ``<kind>:<route>`` tokens; reduction arrows turn one problem
file into another plus a ``recovery`` block, so a solution of the artifact
can be pulled back to the problem it came from.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from api.alpha import alpha_bound, modify_game, recover_from_modified, solve_lp_via_game, standard_lp_to_game
from api.reductions import (
    DEFAULT_NAIVE_CAP,
    cheb_to_lp,
    chebyshev_argmin_to_strategy,
    choose_offset,
    extract_equilibrium,
    game_to_chebyshev,
    game_to_l1,
    game_to_lp_pair,
    l1_argmin_to_strategy,
    l1_to_cheb_naive,
    l1_to_lp,
    literal_closing_function,
    symmetric_equilibrium,
    symmetrize,
)
from api.simplex import simplex_solve, solve_game
from api.standardize import attach_origin, is_feasible_point, lp_to_standard
from api.verify import (
    DEFAULT_BASIS_CAP,
    DEFAULT_GAME_CAP,
    basis_count,
    brute_force_game,
    brute_force_lp,
    check_reduction_counts,
    verify_equilibrium,
    verify_lp_solution,
)
from models.approximation import ApproxProblem, Norm, evaluate_objective
from models.game import Equilibrium, MatrixGame, MixedStrategy, is_equilibrium, uniform_strategy, validate_strategy
from models.problem_file import ProblemFile, ProblemKind
from models.program import LinearProgram, LPSolution, Status
from models.records import (
    AlphaBound,
    ChebyshevGameRecord,
    L1GameRecord,
    SymmetrizationRecord,
    VariableMap,
)
from utils.errors import (
    InternalInconsistencyError,
    KindMismatchError,
    ParseError,
    ReductionError,
    UnsupportedArrowError,
    UnsupportedPathError,
)
from utils.exactnum import (
    RationalMatrix,
    dot,
    format_matrix,
    format_vector,
    is_skew_symmetric,
    rat_format,
    rat_matrix,
    rat_vector,
    to_rational,
    zeros,
)

logger = logging.getLogger(__name__)

SOLVE_PATHS = {
    'game:lp': ProblemKind.GAME,
    'game:cheb': ProblemKind.GAME,
    'game:l1': ProblemKind.GAME,
    'lp:simplex': ProblemKind.LP,
    'lp:game': ProblemKind.LP,
    'chebyshev:lp': ProblemKind.CHEBYSHEV,
    'l1:lp': ProblemKind.L1,
    'l1:cheb-naive': ProblemKind.L1,
}

DEFAULT_PATHS = {
    ProblemKind.GAME: 'game:lp',
    ProblemKind.LP: 'lp:simplex',
    ProblemKind.CHEBYSHEV: 'chebyshev:lp',
    ProblemKind.L1: 'l1:lp',
}

ARROWS = (
    (ProblemKind.GAME, ProblemKind.LP),
    (ProblemKind.GAME, ProblemKind.CHEBYSHEV),
    (ProblemKind.GAME, ProblemKind.L1),
    (ProblemKind.LP, ProblemKind.GAME),
    (ProblemKind.CHEBYSHEV, ProblemKind.LP),
    (ProblemKind.L1, ProblemKind.LP),
    (ProblemKind.L1, ProblemKind.CHEBYSHEV),
)


def resolve_path(kind: ProblemKind, via: Optional[str] = None) -> str:
    """
    Pick the solve path for a problem kind

    Raises:
        UnsupportedPathError: unknown token, or a token for another kind
    """
    if via is None:
        return DEFAULT_PATHS[kind]
    if via not in SOLVE_PATHS:
        raise UnsupportedPathError(f"Unknown path {via!r}; expected one of {sorted(SOLVE_PATHS)}")
    if SOLVE_PATHS[via] is not kind:
        raise UnsupportedPathError(f"Path {via!r} does not apply to a {kind.value} problem")
    return via


def describe_paths() -> Dict[str, Any]:
    return {
        'paths': {token: kind.value for token, kind in SOLVE_PATHS.items()},
        'defaults': {kind.value: token for kind, token in DEFAULT_PATHS.items()},
        'arrows': [f"{source.value}->{target.value}" for source, target in ARROWS],
    }


# ============================================
# GAME ROUTES THROUGH APPROXIMATION
# ============================================

@dataclass(frozen=True, eq=False)
class SymmetricForm:
    """A game made skew-symmetric: itself when already skew, else symmetrized"""

    matrix: RationalMatrix
    symmetrization: Optional[SymmetrizationRecord] = None

    def equilibrium(self, z: MixedStrategy) -> Equilibrium:
        if self.symmetrization is None:
            return symmetric_equilibrium(z, self.matrix)
        return extract_equilibrium(z, self.symmetrization)


def symmetric_form(game: MatrixGame) -> SymmetricForm:
    A = game.payoff
    if is_skew_symmetric(A):
        return SymmetricForm(A)
    M, record = symmetrize(A, choose_offset(A))
    return SymmetricForm(M, record)


@dataclass(frozen=True, eq=False)
class ApproximationRoute:
    """Intermediate results of solving a game through a Chebyshev or l1 problem"""

    form: SymmetricForm
    problem: Optional[ApproxProblem]
    record: Union[ChebyshevGameRecord, L1GameRecord]
    optimum: Optional[Fraction]
    strategy: MixedStrategy
    equilibrium: Equilibrium


def solve_approximation(problem: ApproxProblem) -> Tuple[np.ndarray, Fraction]:
    """Optimal point and value of a Chebyshev or l1 problem through its LP"""
    to_lp = cheb_to_lp if problem.norm is Norm.SUP else l1_to_lp
    program, variable_map = to_lp(problem)
    solution = solve_lp_with_map(program)[0]
    if not solution.is_optimal:
        raise InternalInconsistencyError(f"Approximation LP came back {solution.status.value}")
    return variable_map.recover(solution.point), solution.objective


def solve_game_via_approximation(game: MatrixGame, norm: Norm) -> ApproximationRoute:
    """
    Equilibrium of ``game`` through the Chebyshev (SUP) or l1 (SUM) construction

    The constructed optimum is compared with its closed form (1, or Nc + N)
    before recovery.
    """
    form = symmetric_form(game)
    if norm is Norm.SUP:
        problem, record = game_to_chebyshev(form.matrix)
    else:
        problem, record = game_to_l1(form.matrix)

    if problem is None:
        return ApproximationRoute(form, None, record, None, uniform_strategy(record.N),
                                  form.equilibrium(uniform_strategy(record.N)))

    x, optimum = solve_approximation(problem)
    expected = Fraction(1) if norm is Norm.SUP else record.optimum
    if optimum != expected:
        raise InternalInconsistencyError(f"Constructed problem has optimum {optimum}, expected {expected}")
    if norm is Norm.SUP:
        strategy = chebyshev_argmin_to_strategy(x, record)
    else:
        strategy = l1_argmin_to_strategy(x, record)
    return ApproximationRoute(form, problem, record, optimum, strategy, form.equilibrium(strategy))


# ============================================
# SOLVE
# ============================================

def solve_lp_with_map(program: LinearProgram, via_game: bool = False) -> Tuple[LPSolution, VariableMap]:
    standard, variable_map = lp_to_standard(program)
    if via_game:
        return solve_lp_via_game(program), variable_map
    return attach_origin(simplex_solve(standard), variable_map), variable_map


def _game_document(equilibrium: Equilibrium, path: str) -> Dict[str, Any]:
    document = {'kind': ProblemKind.GAME.value, 'status': Status.OPTIMAL.value}
    document.update(equilibrium.to_dict())
    document['path'] = path
    return document


def _lp_document(program: LinearProgram, solution: LPSolution, variable_map: VariableMap, path: str) -> Dict[str, Any]:
    document: Dict[str, Any] = {'kind': ProblemKind.LP.value, 'status': solution.status.value}
    if solution.status is Status.OPTIMAL:
        document['value'] = rat_format(solution.objective)
        document['x'] = format_vector(solution.point)
        document['multipliers'] = format_vector(
            variable_map.constraint_multipliers(solution.dual, len(program.constraints))
        )
    elif solution.status is Status.UNBOUNDED:
        if solution.point is not None:
            document['x'] = format_vector(solution.point)
        document['direction'] = format_vector(variable_map.recover(solution.ray))
    document['path'] = path
    document['standard'] = solution.to_dict()
    return document


def _approximation_document(kind: ProblemKind, x, value: Fraction, path: str) -> Dict[str, Any]:
    return {
        'kind': kind.value,
        'status': Status.OPTIMAL.value,
        'value': rat_format(value),
        'x': format_vector(x),
        'path': path,
    }


def solve_problem(problem_file: ProblemFile, via: Optional[str] = None, naive_cap: int = DEFAULT_NAIVE_CAP) -> Dict[str, Any]:
    """
    Solve a problem file along a path and build its solution document

    Artifacts (files with a ``recovery`` block) also get a ``recovered``
    block in the terms of the problem they were reduced from.

    Args:
        problem_file: parsed problem
        via: path token, default path of the kind when None
        naive_cap: largest l1 problem l1:cheb-naive will expand

    Returns:
        Solution document; ``status`` decides the exit code
    """
    kind, payload = problem_file.kind, problem_file.payload
    path = resolve_path(kind, via)
    logger.debug("Solving %s problem along %s", kind.value, path)

    outcome: Any
    if kind is ProblemKind.GAME:
        if path == 'game:lp':
            outcome = solve_game(payload)
        else:
            outcome = solve_game_via_approximation(payload, Norm.SUP if path == 'game:cheb' else Norm.SUM).equilibrium
        document = _game_document(outcome, path)
    elif kind is ProblemKind.LP:
        outcome = solve_lp_with_map(payload, via_game=(path == 'lp:game'))
        document = _lp_document(payload, outcome[0], outcome[1], path)
    else:
        problem = payload
        if path == 'l1:cheb-naive':
            problem = l1_to_cheb_naive(payload, naive_cap)
        x, value = solve_approximation(problem)
        outcome = (x, value)
        document = _approximation_document(kind, x, value, path)

    if problem_file.recovery is not None:
        document['recovered'] = recover_artifact(problem_file, outcome)
    return document


# ============================================
# REDUCE
# ============================================

def reduce_problem(problem_file: ProblemFile, target: ProblemKind, naive_cap: int = DEFAULT_NAIVE_CAP) -> ProblemFile:
    """
    Apply one reduction arrow and return the artifact

    Raises:
        UnsupportedArrowError: no arrow from the file's kind to ``target``
        ReductionError: TRIVIAL_GAME for a zero symmetric game
    """
    source, payload = problem_file.kind, problem_file.payload
    if (source, target) not in ARROWS:
        raise UnsupportedArrowError(f"No reduction from {source.value} to {target.value}")
    logger.debug("Reducing %s -> %s", source.value, target.value)

    if source is ProblemKind.GAME and target is ProblemKind.LP:
        row_lp, _ = game_to_lp_pair(payload)
        m, n = payload.shape
        return ProblemFile.of(row_lp, {'from': source.value, 'm': m, 'n': n, 'payoff': format_matrix(payload.payoff)})

    if source is ProblemKind.GAME:
        form = symmetric_form(payload)
        build = game_to_chebyshev if target is ProblemKind.CHEBYSHEV else game_to_l1
        problem, record = build(form.matrix)
        if problem is None:
            raise ReductionError("Zero symmetric game: every strategy is optimal", 'TRIVIAL_GAME')
        if not check_reduction_counts(problem, record, form.symmetrization):
            raise InternalInconsistencyError("Emitted problem has the wrong function count")
        return ProblemFile.of(problem, {
            'from': source.value,
            'record': record.to_dict(),
            'symmetrization': form.symmetrization.to_dict() if form.symmetrization else None,
        })

    if source is ProblemKind.LP:
        standard, variable_map = lp_to_standard(payload)
        M = standard_lp_to_game(standard)
        bound = alpha_bound(M)
        return ProblemFile.of(MatrixGame(modify_game(M, bound.alpha)), {
            'from': source.value,
            'game': format_matrix(M),
            'alpha': bound.to_dict(),
            'rows': standard.rows,
            'cols': standard.cols,
            'c': format_vector(standard.c),
            'variable_map': variable_map.to_dict(),
        })

    if target is ProblemKind.LP:
        to_lp = cheb_to_lp if source is ProblemKind.CHEBYSHEV else l1_to_lp
        program, variable_map = to_lp(payload)
        return ProblemFile.of(program, {'from': source.value, 'variable_map': variable_map.to_dict()})

    return ProblemFile.of(l1_to_cheb_naive(payload, naive_cap), {'from': source.value})


def recover_artifact(problem_file: ProblemFile, outcome: Any) -> Dict[str, Any]:
    """Pull a solved artifact back to the problem it was reduced from"""
    recovery = problem_file.recovery
    try:
        source = ProblemKind.parse(recovery['from'])
        kind = problem_file.kind

        if source is ProblemKind.GAME and kind is ProblemKind.LP:
            return _recover_game_from_lp(recovery, problem_file.payload, *outcome)
        if source is ProblemKind.GAME:
            return _recover_game_from_approximation(recovery, kind, outcome[0])
        if source is ProblemKind.LP:
            return _recover_lp_from_game(recovery, outcome)
        if kind is ProblemKind.LP:
            solution, _ = outcome
            if not solution.is_optimal:
                raise InternalInconsistencyError("Approximation LP came back without an optimum")
            variable_map = VariableMap.from_dict(recovery['variable_map'])
            return _approximation_document(source, variable_map.recover(solution.point), solution.objective, 'recovered')
        x, value = outcome
        return _approximation_document(source, x, value, 'recovered')
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"Malformed recovery block: {exc}")


def _recover_game_from_lp(recovery, program: LinearProgram, solution: LPSolution, variable_map: VariableMap):
    m, n = int(recovery['m']), int(recovery['n'])
    payoff = rat_matrix(recovery['payoff'])
    if not solution.is_optimal:
        raise InternalInconsistencyError("Row player's LP came back without an optimum")
    multipliers = variable_map.constraint_multipliers(solution.dual, len(program.constraints))
    equilibrium = Equilibrium(
        validate_strategy(solution.point[:m]),
        validate_strategy(-multipliers[:n]),
        solution.point[m],
    )
    if not is_equilibrium(payoff, equilibrium):
        raise InternalInconsistencyError("Recovered equilibrium failed the exact check")
    return _game_document(equilibrium, 'recovered')


def _recover_game_from_approximation(recovery, kind: ProblemKind, x) -> Dict[str, Any]:
    if kind is ProblemKind.CHEBYSHEV:
        record = ChebyshevGameRecord.from_dict(recovery['record'])
        strategy = chebyshev_argmin_to_strategy(x, record)
    else:
        record = L1GameRecord.from_dict(recovery['record'])
        strategy = l1_argmin_to_strategy(x, record)
    symmetrization = recovery.get('symmetrization')
    form = SymmetricForm(record.payoff, SymmetrizationRecord.from_dict(symmetrization) if symmetrization else None)
    return _game_document(form.equilibrium(strategy), 'recovered')


def _recover_lp_from_game(recovery, equilibrium: Equilibrium) -> Dict[str, Any]:
    bound = AlphaBound.from_dict(recovery['alpha'])
    r, k = int(recovery['rows']), int(recovery['cols'])
    c = rat_vector(recovery['c'])
    variable_map = VariableMap.from_dict(recovery['variable_map'])
    if equilibrium.value != 0:
        return {'kind': ProblemKind.LP.value, 'status': 'NO_OPTIMUM', 'path': 'recovered'}

    z = recover_from_modified(equilibrium.col, bound.alpha, rat_matrix(recovery['game'])).weights
    x = z[r:r + k] / z[-1]
    return {
        'kind': ProblemKind.LP.value,
        'status': Status.OPTIMAL.value,
        'value': rat_format(variable_map.recover_value(dot(c, x))),
        'x': format_vector(variable_map.recover(x)),
        'path': 'recovered',
    }


# ============================================
# VERIFY
# ============================================

@dataclass
class VerificationReport:
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    def to_dict(self) -> Dict[str, Any]:
        return {'verified': self.verified, 'checks': dict(self.checks)}


def _field(document: Dict[str, Any], name: str) -> Any:
    if name not in document:
        raise ParseError(f"Solution document is missing {name!r}")
    return document[name]


def verify_document(
    problem_file: ProblemFile,
    document: Dict[str, Any],
    basis_cap: int = DEFAULT_BASIS_CAP,
    game_cap: int = DEFAULT_GAME_CAP,
) -> VerificationReport:
    """
    Check a solution document against its problem, exactly

    Games: the equilibrium inequalities, and the value against support
    enumeration when the game is within ``game_cap``. LPs: the standard-form certificate
    and its mapping to the document's x and value. Approximation problems:
    the objective at x, and the optimum from an independent re-solve.

    Raises:
        KindMismatchError: the document is for another kind of problem
    """
    kind = problem_file.kind
    if document.get('kind') != kind.value:
        raise KindMismatchError(f"Solution of kind {document.get('kind')!r} for a {kind.value} problem")

    report = VerificationReport()
    if kind is ProblemKind.GAME:
        equilibrium = Equilibrium(
            MixedStrategy(rat_vector(_field(document, 'row'))),
            MixedStrategy(rat_vector(_field(document, 'col'))),
            to_rational(_field(document, 'value')),
        )
        report.checks['status'] = document.get('status') == Status.OPTIMAL.value
        report.checks['equilibrium'] = verify_equilibrium(problem_file.payload, equilibrium)
        if max(problem_file.payload.shape) <= game_cap:
            report.checks['oracle_value'] = brute_force_game(problem_file.payload, game_cap).value == equilibrium.value

    elif kind is ProblemKind.LP:
        program = problem_file.payload
        standard, variable_map = lp_to_standard(program)
        solution = LPSolution.from_dict(_field(document, 'standard'))
        report.checks['status'] = document.get('status') == solution.status.value
        report.checks['certificate'] = verify_lp_solution(standard, solution)
        if report.checks['certificate'] and solution.x is not None:
            point = variable_map.recover(solution.x)
            report.checks['x'] = rat_vector(_field(document, 'x')).tolist() == point.tolist()
            report.checks['feasible'] = is_feasible_point(program, point)
            if solution.status is Status.OPTIMAL:
                report.checks['value'] = to_rational(_field(document, 'value')) == variable_map.recover_value(solution.value)

    else:
        problem = problem_file.payload
        x = rat_vector(_field(document, 'x'))
        value = to_rational(_field(document, 'value'))
        report.checks['status'] = document.get('status') == Status.OPTIMAL.value
        report.checks['objective'] = evaluate_objective(problem, x) == value
        report.checks['optimal'] = oracle_optimum(problem, basis_cap) == value

    logger.debug("Verification of %s solution: %s", kind.value, report.checks)
    return report


def oracle_optimum(problem: ApproxProblem, basis_cap: int = DEFAULT_BASIS_CAP) -> Fraction:
    """Optimum of an approximation problem by basis enumeration, or the simplex past the cap"""
    program, _ = cheb_to_lp(problem) if problem.norm is Norm.SUP else l1_to_lp(problem)
    standard, variable_map = lp_to_standard(program)
    if basis_count(standard.rows, standard.cols) <= basis_cap:
        solution = brute_force_lp(standard, basis_cap)
    else:
        logger.info("Basis enumeration past the cap of %d, re-solving with the simplex", basis_cap)
        solution = simplex_solve(standard)
    if not solution.is_optimal:
        raise InternalInconsistencyError(f"Approximation LP came back {solution.status.value}")
    return variable_map.recover_value(solution.value)


# ============================================
# DEMO
# ============================================

ROCK_PAPER_SCISSORS = [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]


def _vector(values) -> str:
    return '(' + ', '.join(format_vector(values)) + ')'


def demo_lines() -> List[str]:
    """The rock-paper-scissors walk through every reduction"""
    game = MatrixGame.of(ROCK_PAPER_SCISSORS)
    lines = ['Rock-paper-scissors payoff:']
    lines.extend('  ' + ' '.join(f"{entry:>3}" for entry in row) for row in format_matrix(game.payoff))

    equilibrium = solve_game(game)
    lines.append(f"LP path: value {rat_format(equilibrium.value)}, row {_vector(equilibrium.row.weights)}, "
                 f"col {_vector(equilibrium.col.weights)}")

    chebyshev = solve_game_via_approximation(game, Norm.SUP)
    lines.append(f"Chebyshev path: {chebyshev.problem.size} functions in {chebyshev.problem.arity} variables, "
                 f"optimum {rat_format(chebyshev.optimum)}, strategy {_vector(chebyshev.strategy.weights)}")

    origin = zeros(game.shape[0])
    corrected = evaluate_objective(chebyshev.problem, origin)
    literal = ApproxProblem(Norm.SUP, chebyshev.problem.functions[:-1] + (literal_closing_function(game.shape[0]),), game.shape[0])
    lines.append(f"At x = 0: closing function 2 - sum(x) gives objective {rat_format(corrected)}; "
                 f"the literal -sum(x) gives {rat_format(evaluate_objective(literal, origin))}, "
                 f"tying the optimum with a point that is not a strategy")

    l1 = solve_game_via_approximation(game, Norm.SUM)
    lines.append(f"l1 path: {l1.problem.size} functions, optimum {rat_format(l1.optimum)} = Nc + N, "
                 f"strategy {_vector(l1.strategy.weights)}")

    program = LinearProgram.from_dict({
        'sense': 'max',
        'objective': {'constant': '0', 'coeffs': ['1']},
        'constraints': [{'lhs': {'constant': '0', 'coeffs': ['1']}, 'rel': '<=', 'rhs': {'constant': '1', 'coeffs': ['0']}}],
        'nonnegative': [True],
    })
    standard, _ = lp_to_standard(program)
    M = standard_lp_to_game(standard)
    bound = alpha_bound(M)
    lines.append(f"LP max x s.t. x <= 1 embeds as {format_matrix(M)} (rock-paper-scissors)")
    lines.append(f"alpha = {rat_format(bound.alpha)} (beta {rat_format(bound.beta)}, N {bound.N}); "
                 f"modified game {format_matrix(modify_game(M, bound.alpha))}")
    solution = solve_lp_via_game(program)
    lines.append(f"Game route: {solution.status.value}, x {_vector(solution.point)}, value {rat_format(solution.objective)}")
    return lines


# ============================================
# RENDERING
# ============================================

def render_text(document: Dict[str, Any], indent: int = 0) -> str:
    """Human-readable form of a document for --format text"""
    lines = []
    pad = '  ' * indent
    for key, value in document.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{pad}{key}:")
            lines.extend(f"{pad}  [{', '.join(map(str, row))}]" for row in value)
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: ({', '.join(map(str, value))})")
        else:
            lines.append(f"{pad}{key}: {value}")
    return '\n'.join(lines)
