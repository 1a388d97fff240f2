"""Exception hierarchy shared by all lieco modules."""

from __future__ import annotations


class LiecoError(Exception):
    """Base class for every error raised by lieco."""


class DimensionMismatch(LiecoError, ValueError):
    pass


class ValidationError(LiecoError, ValueError):
    """Structure constants do not define a Lie algebra."""


class AntisymmetryViolation(ValidationError):
    def __init__(self, i, j, k, message=None):
        self.i, self.j, self.k = i, j, k
        super().__init__(message or f"C^{k}_{i}{j} != -C^{k}_{j}{i}")


class JacobiViolation(ValidationError):
    def __init__(self, i, j, k, residual, message=None):
        self.i, self.j, self.k = i, j, k
        self.residual = residual
        shown = "(" + ", ".join(str(x) for x in residual) + ")"
        super().__init__(message or f"Jacobi identity fails on ({i}, {j}, {k}); residual {shown}")


class NotClosed(LiecoError, ValueError):
    """A 2-cochain fails the cocycle (closedness) condition."""


class NotACoboundary(LiecoError, ValueError):
    pass


class NotASubalgebra(LiecoError, ValueError):
    pass


class DivergenceError(LiecoError, ArithmeticError):
    def __init__(self, i, j, message=None):
        self.i, self.j = i, j
        super().__init__(message or f"contracted cocycle entry ({i}, {j}) diverges")


class ChartOverflow(LiecoError, ArithmeticError):
    """A group element left the coordinate chart of its realization."""


class UnsupportedDegree(LiecoError, ValueError):
    pass


class CatalogSelfTestFailure(LiecoError, RuntimeError):
    def __init__(self, group, invariant, detail=""):
        self.group, self.invariant = group, invariant
        super().__init__(f"{group}: self-test '{invariant}' failed {detail}".rstrip())


class ParseError(LiecoError, ValueError):
    def __init__(self, line, column, message):
        self.line, self.column, self.message = line, column, message
        super().__init__(f"line {line}, column {column}: {message}")
