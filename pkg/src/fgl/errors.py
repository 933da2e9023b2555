"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class FGLError(Exception):
    """Base class for all errors raised by :mod:`fgl`."""

    exit_code = 3


class ParseError(FGLError, ValueError):
    """Malformed expression; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class DescriptorError(FGLError, ValueError):
    """A ring descriptor or input file fails validation."""


class RingMismatch(FGLError, TypeError):
    """Operands live over different rings or variable lists."""


class UnsupportedRingClass(FGLError):
    """No decision procedure is implemented for this ring class."""

    exit_code = 2


class NotAUnit(FGLError, ArithmeticError):
    """An element required to be invertible is not (or could not be inverted)."""


class InexactDivision(FGLError, ArithmeticError):
    """A division by an integer is not exact in the coefficient ring."""

    def __init__(self, message, degree=None):
        self.degree = degree
        super().__init__(message)


class RelationViolation(FGLError):
    """A proposed ring homomorphism does not respect a defining relation."""

    exit_code = 1

    def __init__(self, message, generator=None):
        self.generator = generator
        super().__init__(message)


class AxiomViolation(FGLError):
    """A series fails one of the formal group law axioms."""

    exit_code = 1

    def __init__(self, message, axiom=None, exponent=None, coefficient=None):
        self.axiom = axiom
        self.exponent = exponent
        self.coefficient = coefficient
        super().__init__(message)


class HomomorphyFailure(FGLError):
    """phi(F1(x, y)) != F2(phi(x), phi(y)) at some bidegree."""

    exit_code = 1

    def __init__(self, message, exponent=None):
        self.exponent = exponent
        super().__init__(message)


class TruncationTooSmall(FGLError):
    """The truncation bound cannot see the coefficient a computation needs."""

    def __init__(self, message, required=None):
        self.required = required
        super().__init__(message)


class NonIntegral(FGLError, ArithmeticError):
    """A rational coefficient has a denominator that is not invertible in the target."""

    def __init__(self, message, degree=None):
        self.degree = degree
        super().__init__(message)
