"""Exception types shared across the package.

Everything mathematically meaningful derives from DomainError so the CLI
can map "the input made no sense" (exit 2) apart from usage errors (exit 1).
"""


class DomainError(Exception):
    pass


class InvalidIndex(DomainError):
    """Boundary index (i, S) that names no boundary divisor."""


class DimensionMismatch(DomainError):
    """Operands live on moduli spaces with different (g, n)."""


class WrongGenus(DomainError):
    pass


class BadSignature(DomainError):
    pass


class InvalidSpec(DomainError):
    """Test-curve parameters outside the admissible ranges."""


class OutOfCatalog(DomainError):
    """Stratum outside the classified range."""


class BadInput(DomainError):
    pass


class SingularSystem(DomainError):
    """The coefficient system does not determine the requested unknowns."""


class MissingResidueState(DomainError):
    pass


class MixedEdgeOrders(DomainError):
    """Two components joined by nodes with incompatible order comparisons."""


class DirectedLoop(DomainError):
    """Strict order relations between components form a cycle."""


class BudgetExceeded(DomainError):
    pass
