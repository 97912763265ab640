"""Exception hierarchy shared by every module."""


class SymtopoError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SymtopoError, ValueError):
    """An argument lies outside the domain of the operation."""


class InadmissibleNodeError(DomainError):
    """A node address or label is not a node of the symplectic lattice."""


class SpecParseError(DomainError):
    """A topology spec string could not be parsed."""

    def __init__(self, text: str, token: str, reason: str):
        self.text = text
        self.token = token
        super().__init__(f"invalid spec {text!r}: {reason} (at {token!r})")


class CapacityError(SymtopoError):
    """The requested computation exceeds a configured enumeration budget."""


class DisconnectedGraphError(SymtopoError):
    """BFS failed to reach every node; the construction would be wrong."""
