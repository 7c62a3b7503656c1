"""
MinimaxLab error types
Every error carries a stable ``code`` used by the JSON API and the CLI.
"""

from typing import Optional


class MinimaxLabError(Exception):
    """Base class for all library errors"""

    code = 'MINIMAXLAB_ERROR'

    def __init__(self, message: str, code: Optional[str] = None):
        super().__init__(message)
        if code is not None:
            self.code = code

    def to_dict(self):
        return {'error': str(self), 'code': self.code}


class ParseError(MinimaxLabError):
    """Malformed rational literal or problem document"""

    code = 'PARSE_ERROR'


class ZeroDenominatorError(ParseError):
    code = 'ZERO_DENOMINATOR'


class DimensionError(MinimaxLabError):
    """Arity or shape mismatch between operands"""

    code = 'DIMENSION_MISMATCH'


class InvalidStrategyError(MinimaxLabError):
    """Vector is not a probability vector (NEGATIVE_ENTRY / SUM_NOT_ONE)"""

    code = 'INVALID_STRATEGY'


class ReductionError(MinimaxLabError):
    """A reduction was applied outside its preconditions"""

    code = 'REDUCTION_ERROR'


class RecoveryError(MinimaxLabError):
    """A solution could not be pulled back through a reduction"""

    code = 'RECOVERY_ERROR'


class CapExceededError(MinimaxLabError):
    """Instance too large for an enumeration or an exponential reduction"""

    code = 'CAP_EXCEEDED'


class UnsupportedPathError(MinimaxLabError):
    """Unknown --via token, or a token that does not fit the problem kind"""

    code = 'UNSUPPORTED_PATH'


class UnsupportedArrowError(MinimaxLabError):
    """No reduction arrow between the two problem kinds"""

    code = 'UNSUPPORTED_ARROW'


class KindMismatchError(MinimaxLabError):
    code = 'KIND_MISMATCH'


class InternalInconsistencyError(MinimaxLabError):
    """A certificate or post-check failed where theory says it cannot"""

    code = 'INTERNAL_INCONSISTENCY'
