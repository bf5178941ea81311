"""Exception types shared across the package."""


class OrbitRingError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(OrbitRingError):
    """Operands live in spaces of different dimensions."""


class NotPositiveDefinite(OrbitRingError):
    """A Gram matrix failed the exact positive-definiteness test."""


class LatticeError(OrbitRingError):
    """Invalid lattice data (dependent basis, non-integral point, ...)."""


class RootSystemError(OrbitRingError):
    """Simple-system or root-system axioms are violated by the input."""


class LatticeNotPreserved(OrbitRingError):
    """A generated reflection does not map the lattice into itself."""


class OrderCapExceeded(OrbitRingError):
    """Group closure grew past the configured element cap."""


class NotDominant(OrbitRingError):
    """A weight required to lie in the fundamental domain does not."""


class GeometryError(OrbitRingError):
    """Invalid polytope or semigroup data (non-extreme vertex, bad mode, ...)."""


class ScenarioError(OrbitRingError):
    """A verification scenario violates its preconditions.

    Carries a machine-readable payload so front ends can surface the
    failing precondition without parsing the message.
    """

    def __init__(self, message: str, **payload):
        super().__init__(message)
        self.payload = dict(payload)
