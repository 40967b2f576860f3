"""Exception types shared across the package."""


class CycleParseError(ValueError):
    """Malformed cycle notation; carries the character position of the fault."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PolyParseError(ValueError):
    """Malformed polynomial text; carries the character position of the fault."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class CapacityError(RuntimeError):
    """Group closure grew past the configured element cap."""


class BudgetError(RuntimeError):
    """A step or wall-clock budget ran out before the computation finished.

    This signals an aborted computation, never a mathematical answer.
    """


class PrecisionError(ValueError):
    """A truncated series was too short for the requested operation."""


class CatalogError(ValueError):
    """Bad catalog file; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"{message} (line {line})")
        self.line = line
