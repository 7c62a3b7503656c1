"""
Shared fixtures
"""

import random
from pathlib import Path

import pytest

from app import app as flask_app
from models.game import MatrixGame

PROBLEMS_DIR = Path(__file__).resolve().parent.parent / 'problems'

ROCK_PAPER_SCISSORS = [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]


@pytest.fixture
def app():
    """Flask app in testing mode"""
    flask_app.config['TESTING'] = True
    yield flask_app


@pytest.fixture
def client(app):
    """Create a test client"""
    with app.test_client() as client:
        yield client


@pytest.fixture
def runner(app):
    """CLI runner for the flask commands"""
    return app.test_cli_runner()


@pytest.fixture
def problems_dir():
    return PROBLEMS_DIR


@pytest.fixture
def rps():
    return MatrixGame.of(ROCK_PAPER_SCISSORS)


@pytest.fixture
def rng():
    """Seeded generator; every property test sees the same instances"""
    return random.Random(20240501)
