"""Exception types shared across the package.

Input problems (bad syntax, undeclared names, invalid parameters) and
mathematical failures (degeneracy, non-closed twists, broken structure data)
are kept in separate branches so the CLI can map them to distinct exit codes.
"""

from __future__ import annotations


class LcsCalcError(Exception):
    """Base class for all package errors."""


class InputError(LcsCalcError):
    """Problems with user-supplied text, names or parameters."""


class MathError(LcsCalcError):
    """A mathematically meaningful check failed on valid input."""


# -- input errors -----------------------------------------------------------

class ExprSyntaxError(InputError):
    """Syntax error in a scalar/form expression or algebra file."""

    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class UndeclaredParameter(InputError):
    pass


class DivisionByZero(InputError):
    pass


class MixedModes(InputError):
    """Scalars from different coefficient modes were combined."""


class BasisMismatch(InputError):
    pass


class DegreeMismatch(InputError):
    pass


class InvalidParams(InputError):
    pass


class InvalidMetric(InputError):
    pass


class ParamModeUnsupported(InputError):
    """Operation needs exact ranks and only runs with rational coefficients."""


class ZeroForm(InputError):
    pass


class OddDimension(InputError):
    pass


# -- mathematical failures ---------------------------------------------------

class StructureError(MathError):
    """The structure data does not define a complex (d*d != 0)."""


class OmegaNotClosed(MathError):
    pass


class NotClosed(MathError):
    """The input form is not closed under the twisted differential."""


class Degenerate(MathError):
    """The 2-form has vanishing top wedge power."""


class NoSolution(MathError):
    """No 1-form solves the conformal closure equation."""


class LeeNotClosed(MathError):
    """The conformal closure equation has a solution but it is not closed."""


class NotAutomorphism(MathError):
    pass


class CrossCheckError(MathError):
    """Two independent computation routes disagreed; indicates a bug."""
