"""
Exact rational scalars, vectors and matrices

Scalars are ``fractions.Fraction`` (always canonical: positive denominator,
reduced, zero is 0/1). Vectors and matrices are numpy arrays of dtype
``object`` holding Fractions, so elementwise arithmetic, ``@`` and
comparisons stay exact.
"""

import re
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from utils.errors import DimensionError, ParseError, ZeroDenominatorError

Rational = Fraction
RationalVector = np.ndarray
RationalMatrix = np.ndarray

RationalLike = Union[Fraction, int, str]

# optional sign, digits, then optional "/digits" or ".digits"
RATIONAL_PATTERN = re.compile(r'^[+-]?\d+(?:/\d+|\.\d+)?$')


def rat_parse(text: str) -> Fraction:
    """
    Parse a rational literal

    Args:
        text: "a", "a/b" or "a.ddd" with an optional sign

    Returns:
        The exact value in canonical form
    """
    if not isinstance(text, str):
        raise ParseError(f"Rational literal must be a string, got {type(text).__name__}")
    literal = text.strip()
    if not RATIONAL_PATTERN.match(literal):
        raise ParseError(f"Malformed rational literal: {text!r}")
    try:
        return Fraction(literal)
    except ZeroDivisionError:
        raise ZeroDenominatorError(f"Zero denominator in {text!r}")


def to_rational(value: RationalLike) -> Fraction:
    """Coerce a literal, an int or a Fraction; floats are refused"""
    if isinstance(value, bool):
        raise ParseError("Booleans are not rational numbers")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return rat_parse(value)
    raise ParseError(f"Expected a rational literal, got {value!r}")


def rat_format(value: Fraction) -> str:
    """Wire form: "a" or "a/b", never a decimal"""
    return str(Fraction(value))


def _entries(values, what: str) -> list:
    """Items of a JSON list (or any non-string sequence); anything else is a parse error"""
    if isinstance(values, (str, bytes, dict)):
        raise ParseError(f"Expected a list for {what}, got {type(values).__name__}")
    try:
        return list(values)
    except TypeError:
        raise ParseError(f"Expected a list for {what}, got {type(values).__name__}")


def rat_vector(values: Iterable[RationalLike], allow_empty: bool = False) -> RationalVector:
    entries = [to_rational(v) for v in _entries(values, "a vector")]
    if not entries and not allow_empty:
        raise DimensionError("Vectors need at least one entry")
    vector = np.empty(len(entries), dtype=object)
    vector[:] = entries
    return vector


def rat_matrix(rows: Sequence[Sequence[RationalLike]], cols: int = None) -> RationalMatrix:
    """
    Build a matrix from row lists

    Args:
        rows: row-major entries
        cols: column count, only needed when ``rows`` is empty

    Returns:
        object ndarray of shape (len(rows), cols)
    """
    grid = [[to_rational(v) for v in _entries(row, "a matrix row")] for row in _entries(rows, "a matrix")]
    width = len(grid[0]) if grid else (cols or 0)
    if any(len(row) != width for row in grid):
        raise DimensionError("Matrix rows have different lengths")
    matrix = np.empty((len(grid), width), dtype=object)
    for i, row in enumerate(grid):
        matrix[i, :] = row
    return matrix


def zeros(shape) -> np.ndarray:
    return np.full(shape, Fraction(0), dtype=object)


def ones(shape) -> np.ndarray:
    return np.full(shape, Fraction(1), dtype=object)


def unit(size: int, index: int) -> RationalVector:
    vector = zeros(size)
    vector[index] = Fraction(1)
    return vector


def frozen(array: np.ndarray) -> np.ndarray:
    """Read-only view; values handed out by the models are immutable"""
    view = array.view()
    view.flags.writeable = False
    return view


def total(values: Iterable[Fraction]) -> Fraction:
    return sum(values, Fraction(0))


def dot(left: Sequence[Fraction], right: Sequence[Fraction]) -> Fraction:
    if len(left) != len(right):
        raise DimensionError(f"Length mismatch: {len(left)} vs {len(right)}")
    return sum((a * b for a, b in zip(left, right)), Fraction(0))


def is_skew_symmetric(matrix: RationalMatrix) -> bool:
    rows, cols = matrix.shape
    return rows == cols and bool(np.all(matrix == -matrix.T))


def mat_extreme(matrix: RationalMatrix) -> Tuple[Fraction, Fraction]:
    """Elementwise (minimum, maximum) of a nonempty matrix"""
    if matrix.size == 0:
        raise DimensionError("Cannot take extremes of an empty matrix")
    entries = list(matrix.flat)
    return min(entries), max(entries)


def beta_bound(matrix: RationalMatrix) -> Fraction:
    """Upper bound on |numerator| and denominator over all entries, floored at 1"""
    beta = 1
    for entry in matrix.flat:
        beta = max(beta, abs(entry.numerator), entry.denominator)
    return Fraction(beta)


def format_vector(vector: Iterable[Fraction]) -> List[str]:
    return [rat_format(v) for v in vector]


def format_matrix(matrix: RationalMatrix) -> List[List[str]]:
    return [format_vector(row) for row in matrix]
