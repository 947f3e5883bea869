"""
Exceptions raised by SmartGL.

Every error derives from :class:`SmartGLError`; most also derive from
``ValueError`` so callers that only care about bad input can catch that.
"""


class SmartGLError(Exception):
    """Base class for all SmartGL errors."""


class RankMismatchError(SmartGLError, ValueError):
    """Operands live over different ranks or have incompatible shapes."""


class SingularMatrixError(SmartGLError, ValueError):
    """A nonsingular matrix was required."""


class NonsingularMatrixError(SmartGLError, ValueError):
    """A singular matrix was required (singular-Q submodule check)."""


class NotParabolicError(SmartGLError, ValueError):
    """A gl_2n element with nonzero C or D block reached the parabolic action."""


class InvalidParameterError(SmartGLError, ValueError):
    """An order, bound or rank is out of its admissible range."""


class ExprError(SmartGLError, ValueError):
    """Base class for expression language errors."""


class ExprSyntaxError(ExprError):
    """The text does not match the grammar.

    Args:
        message: Human readable description.
        position: Zero-based offset in the source text.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class IndexOutOfRangeError(ExprError):
    """A generator index e[i,j] falls outside the admissible range."""


class ExponentOverflowError(ExprError):
    """An exponent exceeds the configured maximum."""


class NonlinearExpressionError(ExprError):
    """A gl_2n element was requested but the expression is not linear."""


class UsageError(SmartGLError):
    """Command line configuration problem."""
