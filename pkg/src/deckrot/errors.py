"""Exception types shared across the package."""


class DeckrotError(Exception):
    """Base class for all package errors."""


class SpaceMismatchError(DeckrotError):
    """Operands live on different base spaces."""


class ClassMismatchError(DeckrotError):
    """A path cocycle disagrees with the declared pairing on a basis loop."""


class DomainError(DeckrotError):
    """A point or path leaves the coordinate domain of its space."""


class UnsupportedFlavorError(DeckrotError):
    """Operation requires an exactly representable map and got something else."""


class NonInvertibleError(UnsupportedFlavorError):
    """Inverse requested for a flavor that does not support it."""


class PreconditionError(DeckrotError):
    """A documented operation precondition was violated."""


class ScenarioError(DeckrotError):
    """Scenario file failed to parse or references an unknown name."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
