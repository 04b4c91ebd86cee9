"""Exception types shared across the package."""


class ArityError(ValueError):
    """Operands disagree on the number of variables, or an index has the wrong length."""


class DomainError(ArithmeticError):
    """An elementary function was demanded outside its domain (log of a negative, 1/0, ...).

    ``function`` names the offending operation and ``point`` the scalar it was
    applied to, so callers can report where a lazily demanded coefficient blew up.
    """

    def __init__(self, function, point, reason=None):
        self.function = function
        self.point = point
        msg = f"{function} is undefined at {point!r}"
        if reason:
            msg = f"{msg} ({reason})"
        super().__init__(msg)
