"""Exception types raised by the geometry pipeline."""


class GeometryError(ValueError):
    """Degenerate or inconsistent geometric input."""


class DomainError(ValueError):
    """Parameter outside the range where a formula is defined."""


class VertexHit(GeometryError):
    """A straight development segment passes through a lattice vertex."""


class HemisphereError(GeometryError):
    """Points are not contained in the required open hemisphere."""


class NotConstructible(GeometryError):
    """A closed geodesic of the requested type cannot be built at this face angle."""


class NoBracket(RuntimeError):
    """No existence transition was found on the scan grid."""
