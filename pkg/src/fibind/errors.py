"""Exception hierarchy shared by every module of the package."""


class FibindError(Exception):
    pass


class CompositionError(FibindError):
    """Two finite functions (or morphisms) do not compose."""


class NotInCodomainError(FibindError):
    pass


class FinFnError(FibindError):
    """A function table is not total on its domain or leaves its codomain."""


class ShapeError(FibindError):
    """A value does not have the shape demanded by a functor code."""

    def __init__(self, code, value, reason=""):
        self.code = code
        self.value = value
        msg = f"value {value} is not well-shaped for {code}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class DecorationError(FibindError):
    pass


class PredicateError(FibindError):
    """Ill-formed predicate or predicate morphism, or a carrier mismatch."""


class UnsupportedCodeError(FibindError):
    pass


class SoundnessError(FibindError):
    """The carrier component of fold . psi differed from the input term."""

    def __init__(self, expected, got):
        self.expected = expected
        self.got = got
        super().__init__(f"induction rebuilt {got} instead of {expected}")


class ElSyntaxError(FibindError):
    def __init__(self, text, pos, message):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at offset {pos} in {text!r}")


class DeclError(FibindError):
    """Syntax or validity error in a datatype declaration file."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column}: {message}"
        super().__init__(message)


class OutOfScopeError(DeclError):
    pass
