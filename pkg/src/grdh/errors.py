"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class EnumerationCapExceeded(RuntimeError):
    """A brute-force enumeration would visit more candidates than allowed."""

    def __init__(self, size: int, cap: int, what: str = "candidates"):
        super().__init__(f"{what}: {size} exceeds enumeration cap {cap}")
        self.size = size
        self.cap = cap


class ConsistencyError(AssertionError):
    """An internal invariant failed; indicates a bug, never user error."""
