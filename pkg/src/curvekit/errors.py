"""Exception types raised by curvekit."""


class CurvekitError(Exception):
    """Base class for all curvekit errors."""


class InvalidSignature(CurvekitError):
    """Surface signature outside the supported range (need genus >= 2)."""


class UnknownLetter(CurvekitError):
    """A word token is not a generator of the given surface group."""


class NotAdmissible(CurvekitError):
    """An edge-weight vector violates the parity or triangle conditions."""


class InessentialComponent(CurvekitError):
    """A multicurve component is null-homotopic or boundary-parallel."""


class Inessential(CurvekitError):
    """Operation requires an essential curve."""


class VertexCollision(CurvekitError):
    """A transverse path illegally meets a vertex of the triangulation."""


class TrivialElement(CurvekitError):
    """Operation requires a non-trivial group element."""


class NotConjugate(CurvekitError):
    """Conjugator requested for a pair that is not conjugate."""


class NonPrimitive(CurvekitError):
    """Operation requires a primitive (non-power) conjugacy class."""


class NotSimple(CurvekitError):
    """Operation requires an embedded (simple) curve or multicurve."""


class NotFilling(CurvekitError):
    """Operation requires a filling curve."""


class NonInvertible(CurvekitError):
    """Mapping-class representative is not invertible."""


class NoCenter(CurvekitError):
    """The mapping class group of this surface has trivial center."""


class NoRealization(CurvekitError):
    """No homotopy equivalence with the prescribed boundary behaviour exists."""


class MalformedBijection(CurvekitError):
    """A supplied boundary bijection is not a bijection of the right sets."""


class NotSame(CurvekitError):
    """Automorphism equivalence requested for classes of different type."""


class NotInDomain(CurvekitError):
    """Coordinates violate the Dehn-Thurston domain conventions."""


class CalibrationMissing(CurvekitError):
    """The Dehn-Thurston calibration record is absent or unreadable."""


class ResourceLimit(CurvekitError):
    """A configured candidate or time cap was exceeded.

    Carries the partial statistics gathered before the cap fired.
    """

    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = dict(stats or {})
