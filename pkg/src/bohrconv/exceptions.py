"""Exception hierarchy shared across the package.

Callers that need to distinguish outcome classes (the command line front end
maps them to exit codes) should catch the base classes below rather than
inspecting messages.
"""


class BohrError(Exception):
    """Base class for domain-specific failures."""


class ValidityError(BohrError):
    """A closed form was requested outside its proven validity region."""


class DomainError(ValidityError):
    """Argument lies outside the mathematical domain of a special function."""


class OpenProblemError(ValidityError):
    """The requested quantity has no known value in this range."""


class NotApplicableError(ValidityError):
    """The requested bound degenerates for this operator."""


class NotInvertibleError(ValidityError):
    """Convolution operator has a vanishing coefficient on its support."""


class NoRootError(BohrError):
    """A root search exhausted its interval without finding a sign change."""


class BracketError(NoRootError):
    """Supplied bracket does not enclose a root."""
