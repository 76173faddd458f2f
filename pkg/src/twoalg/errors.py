"""Exception hierarchy shared by every module."""


class TwoAlgError(Exception):
    """Base class for all library errors."""


class DomainError(TwoAlgError, ValueError):
    """Inputs have the wrong shape, modulus or parent."""


class PreconditionError(TwoAlgError, ValueError):
    """A mathematical hypothesis of a construction does not hold."""


class NotFreeError(PreconditionError):
    """A submodule of (Z/m)^n is not free, so it cannot carry a basis."""


class ComposabilityError(TwoAlgError, ValueError):
    """Vertical composition requested for cells with t(a) != s(b)."""

    def __init__(self, target_of_a, source_of_b):
        self.target_of_a = tuple(int(v) for v in target_of_a)
        self.source_of_b = tuple(int(v) for v in source_of_b)
        super().__init__(
            f"cells not composable: t(a) = {self.target_of_a} but s(b) = {self.source_of_b}"
        )


class IntegrityError(TwoAlgError, RuntimeError):
    """A structure that should be valid by construction failed its check."""

    def __init__(self, message, report=None):
        self.report = report
        if report is not None:
            message = f"{message}\n{report}"
        super().__init__(message)


class CapExceeded(TwoAlgError, ValueError):
    """An enumeration would exceed its candidate cap."""

    def __init__(self, count, cap):
        self.count = count
        self.cap = cap
        super().__init__(f"enumeration refused: {count} candidates exceed cap {cap}")


class ParseError(TwoAlgError, ValueError):
    """Structure file could not be parsed; ``location`` names the field."""

    def __init__(self, message, location="$"):
        self.location = location
        super().__init__(f"{location}: {message}")
