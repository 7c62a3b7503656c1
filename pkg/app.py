"""
MinimaxLab - Main Flask Application
Exact solvers and reductions for matrix games, LPs and Chebyshev / l1 approximation
"""

import json
import logging
import os
import sys
from pathlib import Path

import click
from dotenv import load_dotenv
from flask import Flask, jsonify, request
from flask_cors import CORS

# Load environment variables
load_dotenv()

# Initialize Flask app
app = Flask(__name__)
app.config['NAIVE_REDUCTION_CAP'] = int(os.getenv('NAIVE_REDUCTION_CAP', 16))
app.config['BRUTE_FORCE_BASIS_CAP'] = int(os.getenv('BRUTE_FORCE_BASIS_CAP', 250000))
app.config['BRUTE_FORCE_GAME_CAP'] = int(os.getenv('BRUTE_FORCE_GAME_CAP', 4))
app.config['OUTPUT_FORMAT'] = os.getenv('OUTPUT_FORMAT', 'json')
app.config['PROBLEMS_DIR'] = os.getenv('PROBLEMS_DIR', 'problems')
app.config['LOG_LEVEL'] = os.getenv('LOG_LEVEL', 'INFO').upper()

logging.basicConfig(level=app.config['LOG_LEVEL'], format='%(levelname)s %(name)s: %(message)s')
app.logger.setLevel(app.config['LOG_LEVEL'])

# Initialize extensions
CORS(app)

# Import the library after app initialization
from api.pipeline import demo_lines, describe_paths, reduce_problem, render_text, solve_problem, verify_document
from models.problem_file import ProblemFile, ProblemKind, dump_document, parse_document, read_text
from utils.errors import MinimaxLabError, ParseError

VERSION = '1.0.0'

# ============================================
# API ENDPOINTS
# ============================================


def _request_body():
    body = request.get_json(silent=True)
    if not isinstance(body, dict):
        raise ParseError('Request body must be a JSON object')
    return body


def _problem_from(body):
    if 'problem' not in body:
        raise ParseError("Request body needs a 'problem' document")
    return ProblemFile.from_dict(body['problem'])


@app.route('/api/v1/health', methods=['GET'])
def health_check():
    """Health check endpoint"""
    return jsonify({
        'status': 'healthy',
        'version': VERSION
    })


@app.route('/api/v1/paths', methods=['GET'])
def api_paths():
    """Supported solve paths and reduction arrows"""
    return jsonify({
        'success': True,
        'data': describe_paths()
    })


@app.route('/api/v1/solve', methods=['POST'])
def api_solve():
    """Solve a problem document along the default or a chosen path"""
    body = _request_body()
    document = solve_problem(_problem_from(body), body.get('via'), app.config['NAIVE_REDUCTION_CAP'])
    app.logger.info('Solved %s problem via %s: %s', document['kind'], document['path'], document['status'])
    return jsonify({
        'success': True,
        'data': document
    })


@app.route('/api/v1/reduce', methods=['POST'])
def api_reduce():
    """Apply one reduction arrow and return the artifact"""
    body = _request_body()
    if 'to' not in body:
        raise ParseError("Request body needs a target kind 'to'")
    artifact = reduce_problem(_problem_from(body), ProblemKind.parse(body['to']), app.config['NAIVE_REDUCTION_CAP'])
    return jsonify({
        'success': True,
        'data': artifact.to_dict()
    })


@app.route('/api/v1/verify', methods=['POST'])
def api_verify():
    """Check a solution document against its problem"""
    body = _request_body()
    solution = body.get('solution')
    if not isinstance(solution, dict):
        raise ParseError("Request body needs a 'solution' document")
    report = verify_document(_problem_from(body), solution,
                             app.config['BRUTE_FORCE_BASIS_CAP'], app.config['BRUTE_FORCE_GAME_CAP'])
    return jsonify({
        'success': True,
        'data': report.to_dict()
    })


# ============================================
# ERROR HANDLERS
# ============================================

@app.errorhandler(MinimaxLabError)
def library_error(error):
    app.logger.info('Rejected request: %s (%s)', error, error.code)
    return jsonify({'success': False, **error.to_dict()}), 400


@app.errorhandler(404)
def not_found(error):
    return jsonify({'success': False, 'error': 'Not found'}), 404


@app.errorhandler(500)
def internal_error(error):
    return jsonify({'success': False, 'error': 'Internal server error'}), 500


# ============================================
# CLI COMMANDS
# ============================================

def _emit(document, fmt, output):
    fmt = fmt or app.config['OUTPUT_FORMAT']
    text = render_text(document) + '\n' if fmt == 'text' else dump_document(document)
    if output:
        Path(output).write_text(text, encoding='utf-8')
        app.logger.info('Wrote %s', output)
    else:
        click.echo(text, nl=False)


def _fail(error: MinimaxLabError):
    click.echo(json.dumps(error.to_dict()), err=True)
    sys.exit(2)


format_option = click.option('--format', 'fmt', type=click.Choice(['json', 'text']), default=None,
                             help='Output format (defaults to OUTPUT_FORMAT)')
output_option = click.option('--output', type=click.Path(dir_okay=False), default=None,
                             help='Write to this file instead of stdout')


@app.cli.command('solve')
@click.argument('path', type=click.Path())
@click.option('--via', default=None, help='Solve path, e.g. game:cheb, game:l1, lp:game, l1:cheb-naive')
@format_option
@output_option
def solve_command(path, via, fmt, output):
    """Solve a problem file"""
    try:
        document = solve_problem(ProblemFile.load(path), via, app.config['NAIVE_REDUCTION_CAP'])
    except MinimaxLabError as error:
        _fail(error)
    _emit(document, fmt, output)
    sys.exit(0 if document['status'] == 'OPTIMAL' else 1)


@app.cli.command('reduce')
@click.argument('path', type=click.Path())
@click.option('--to', 'target', required=True, help='Target kind: game, lp, chebyshev or l1')
@format_option
@output_option
def reduce_command(path, target, fmt, output):
    """Reduce a problem file to another kind, with recovery data"""
    try:
        artifact = reduce_problem(ProblemFile.load(path), ProblemKind.parse(target), app.config['NAIVE_REDUCTION_CAP'])
    except MinimaxLabError as error:
        _fail(error)
    _emit(artifact.to_dict(), fmt, output)


@app.cli.command('verify')
@click.argument('problem_path', type=click.Path())
@click.argument('solution_path', type=click.Path())
@format_option
@output_option
def verify_command(problem_path, solution_path, fmt, output):
    """Verify a solution file against its problem file"""
    try:
        problem = ProblemFile.load(problem_path)
        report = verify_document(problem, parse_document(read_text(solution_path)),
                                 app.config['BRUTE_FORCE_BASIS_CAP'], app.config['BRUTE_FORCE_GAME_CAP'])
    except MinimaxLabError as error:
        _fail(error)
    _emit(report.to_dict(), fmt, output)
    sys.exit(0 if report.verified else 1)


@app.cli.command('demo')
def demo_command():
    """Walk rock-paper-scissors through every reduction"""
    for line in demo_lines():
        click.echo(line)


@app.cli.command('seed-examples')
@click.argument('directory', required=False)
def seed_examples(directory):
    """Write the sample problem files"""
    from utils.seed_data import write_sample_problems
    for path in write_sample_problems(directory or app.config['PROBLEMS_DIR']):
        click.echo(f'Wrote {path}')


# ============================================
# MAIN
# ============================================

if __name__ == '__main__':
    app.run(debug=True, port=5000)
