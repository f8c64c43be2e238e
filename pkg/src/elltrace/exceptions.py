"""Exception hierarchy for elltrace.

Division by zero is reported with the builtin :class:`ZeroDivisionError`.
"""


class ElltraceError(Exception):
    """Base class for all library errors."""


class FieldMismatchError(ElltraceError, TypeError):
    """Operands live over different fields (or different extensions)."""


class ParseError(ElltraceError, ValueError):
    """Malformed element or polynomial text.

    ``position`` is a 0-based offset into ``text``.
    """

    def __init__(self, message, text="", position=0):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(self._render())

    @property
    def line(self):
        return self.text.count("\n", 0, self.position) + 1

    @property
    def column(self):
        return self.position - (self.text.rfind("\n", 0, self.position) + 1) + 1

    def _render(self):
        if not self.text:
            return self.message
        return f"{self.message} (line {self.line}, column {self.column}): {self.text!r}"


class ReducibleModulusError(ElltraceError, ValueError):
    """The modulus T(t) turned out not to be irreducible."""


class NotInSubfieldError(ElltraceError, ValueError):
    """An element does not lie in the requested subfield K(theta^(p^d))."""


class SingularCurveError(ElltraceError, ValueError):
    """The Weierstrass coefficients have zero discriminant."""


class NotOnCurveError(ElltraceError, ValueError):
    """A point does not satisfy the curve equation."""

    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)


class InconsistentInputError(ElltraceError, ValueError):
    """Raised by the trace algorithms when a precondition was violated.

    Typical causes: a reducible or inseparable modulus passed to the
    separable algorithm, or a point that is not on the curve.
    """


class GenerationError(ElltraceError, RuntimeError):
    """Rejection sampling in an instance generator exceeded its budget."""
