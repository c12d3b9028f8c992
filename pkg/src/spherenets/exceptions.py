"""Exception types raised by the geometry kernels."""


class GeometryError(ValueError):
    """Base class for all geometric precondition failures."""


class DegenerateConfigurationError(GeometryError):
    """Input is non-generic: a rank or intersection collapsed."""


class IncidenceError(GeometryError):
    """A required incidence (point on plane, meeting lines, ...) does not hold."""


class NonPlanarError(GeometryError):
    """A quadrilateral that must be planar is not."""


class NotIsotropicError(GeometryError):
    """A vector or line is expected to lie on the quadric but does not."""


class ImaginarySphereError(GeometryError):
    """A time-like Moebius representative, which is not a real sphere."""


class NotConicalError(GeometryError):
    """Four oriented planes do not touch a common cone of revolution."""


class DegenerateFamilyError(DegenerateConfigurationError):
    """A planar sphere family whose span carries a degenerate form."""


class UnsupportedSpaceError(GeometryError):
    """Operation requested in an ambient space that cannot support it."""


class SchemaError(ValueError):
    """Malformed net document."""
