"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`PolymaError`,
which is what the command line front end maps to exit code 1.
"""


class PolymaError(Exception):
    """Base class for domain errors."""


class ZeroVector(PolymaError, ValueError):
    pass


class DimensionMismatch(PolymaError, ValueError):
    pass


class EmptyPolyhedron(PolymaError, ValueError):
    pass


class NotAFacet(PolymaError, ValueError):
    pass


class NotABoundedEdge(PolymaError, ValueError):
    pass


class DegenerateDimension(PolymaError, ValueError):
    pass


class PointOutsideSupport(PolymaError, ValueError):
    pass


class SupportsDiffer(PolymaError, ValueError):
    pass


class NotSimplicial(PolymaError, ValueError):
    pass


class NotARefinement(PolymaError, ValueError):
    pass


class InvalidComplex(PolymaError, ValueError):
    pass


class InvalidFunction(PolymaError, ValueError):
    pass


class CarrierMismatch(PolymaError, ValueError):
    pass


class WrongArity(PolymaError, ValueError):
    pass


class UnboundedIntegrand(PolymaError, ValueError):
    pass


class UnboundedDifference(PolymaError, ValueError):
    pass


class NotTopFace(PolymaError, ValueError):
    pass


class DimensionNotOne(PolymaError, ValueError):
    pass


class MassMismatch(PolymaError, ValueError):
    pass


class Disconnected(PolymaError, ValueError):
    pass


class NotPositiveAtInfinity(PolymaError, ValueError):
    pass


class NotBoundedPerturbation(PolymaError, ValueError):
    pass


class Infeasible(PolymaError, ValueError):
    pass


class NotACompetitor(PolymaError, ValueError):
    pass


class BadParameter(PolymaError, ValueError):
    pass


class FormatError(PolymaError, ValueError):
    pass
