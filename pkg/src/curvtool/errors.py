"""Exception types shared across the package.

Every domain error derives from CurvtoolError so the CLI can map failures to
stable exit codes in one place.
"""


class CurvtoolError(Exception):
    """Base class for all curvtool domain errors."""


# --- linear algebra ---------------------------------------------------------

class NotSymmetric(CurvtoolError):
    pass


class NotSkew(CurvtoolError):
    pass


class DimMismatch(CurvtoolError):
    pass


# --- curvature tensors ------------------------------------------------------

class BadInvolution(CurvtoolError):
    pass


class DegeneratePlane(CurvtoolError):
    pass


class OddMultiplicity(CurvtoolError):
    """Eigenvalue grouping produced an odd multiplicity: tolerance too tight."""


class InvalidCurvatureTensor(CurvtoolError):
    pass


# --- normed bilinear maps ---------------------------------------------------

class KernelNotOneDim(CurvtoolError):
    pass


# --- operator machinery -----------------------------------------------------

class KernelMismatch(CurvtoolError):
    pass


class DependentBasis(CurvtoolError):
    pass


# --- quotient ring ----------------------------------------------------------

class ZeroElement(CurvtoolError):
    pass


# --- 3-metric charts --------------------------------------------------------

class OutOfDomain(CurvtoolError):
    pass


class DegenerateWarp(CurvtoolError):
    pass


class RankNotOne(CurvtoolError):
    pass


class NotGeodesicFrame(CurvtoolError):
    pass


class SignChange(CurvtoolError):
    pass


# --- CLI / parsing ----------------------------------------------------------

class ParseError(CurvtoolError):
    pass


class UnknownMetric(CurvtoolError):
    pass


class UnknownIdentity(CurvtoolError):
    pass


class DimUnsupported(CurvtoolError):
    pass
