"""Exception hierarchy shared by all modules."""


class QOPolarError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(QOPolarError, ValueError):
    pass


class IncomparableInclinations(QOPolarError, ValueError):
    """Two inclinations are not comparable under the coordinatewise order."""


class DimensionTooLarge(QOPolarError, ValueError):
    """Ambient dimension exceeds the configured convex-hull bound."""


class NotPolygonal(QOPolarError, ValueError):
    """A polyhedron has a compact face of dimension at least two."""


class NotAProfile(QOPolarError, ValueError):
    """A polyhedron cannot be written as a polygonal profile."""


class EndpointNotOnSegmentLattice(QOPolarError, ValueError):
    pass


class NotComparable(QOPolarError, ValueError):
    """Res_Y(f, h) is not a monomial times a unit."""

    def __init__(self, message, cofactor=None):
        super().__init__(message)
        self.cofactor = cofactor


class NonMonic(QOPolarError, ValueError):
    pass


class NotUnimodular(QOPolarError, ValueError):
    pass


class ShapeMismatch(QOPolarError, ValueError):
    pass


class DegreeOverflow(QOPolarError, ValueError):
    pass


class ValidationError(QOPolarError, ValueError):
    """Eggers-Wall input data violates a structural constraint.

    ``violations`` holds one human readable line per failed check.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class InconsistentProfiles(QOPolarError, ValueError):
    pass


class ReconstructionError(QOPolarError, ValueError):
    """A type matrix is not realizable by any Eggers-Wall tree."""


class GoodCoordinateError(QOPolarError, ValueError):
    pass


class ParseError(QOPolarError, ValueError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
