"""Exception hierarchy shared by every module of the package."""


class GeometryError(Exception):
    """Base class for all errors raised by cameron_liebler."""


# finite fields
class NotPrime(GeometryError, ValueError):
    pass


class EvenCharacteristic(GeometryError, ValueError):
    pass


class ReduciblePolynomial(GeometryError, ValueError):
    pass


class MixedFields(GeometryError, ValueError):
    pass


class DivisionByZero(GeometryError, ZeroDivisionError):
    pass


class ZeroArgument(GeometryError, ValueError):
    pass


class SingularMatrix(GeometryError, ValueError):
    pass


# projective geometry
class TooLarge(GeometryError, ValueError):
    pass


class EqualPoints(GeometryError, ValueError):
    pass


class NonIncidentPair(GeometryError, ValueError):
    pass


class UnknownLine(GeometryError, ValueError):
    pass


# quadric
class NotElliptic(GeometryError, ValueError):
    pass


class NotTangent(GeometryError, ValueError):
    pass


# line classes
class NotIncident(NonIncidentPair):
    pass


class ConditionsViolated(GeometryError, ValueError):
    pass


class NoSolution(GeometryError, ValueError):
    pass


class NoSwitchablePair(GeometryError, LookupError):
    pass


# verification
class PartitionFailure(GeometryError, RuntimeError):
    pass


class SizeNotMultiple(GeometryError, ValueError):
    pass


class GeometryMismatch(GeometryError, ValueError):
    pass


class FileFormatError(GeometryError, ValueError):
    pass
