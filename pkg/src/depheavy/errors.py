"""Exception types shared across the package."""


class DepheavyError(Exception):
    """Base class for all errors raised by this package."""


class PackageNotFound(DepheavyError, KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.package = name

    def __str__(self) -> str:
        return f"unknown package: {self.package!r}"


class EdgeNotFound(DepheavyError, KeyError):
    def __init__(self, parent: str, child: str, relation: str = "strong"):
        super().__init__((parent, child))
        self.parent = parent
        self.child = child
        self.relation = relation

    def __str__(self) -> str:
        return f"no {self.relation} edge {self.parent!r} -> {self.child!r}"


class DomainError(DepheavyError, ValueError):
    """An argument violates an operation's precondition."""


class DepFieldError(DepheavyError, ValueError):
    """A dependency field entry could not be parsed (e.g. unbalanced parenthesis)."""


class EdgeListFormatError(DepheavyError, ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line
