"""Exception hierarchy shared by every module."""


class CatAlgebraError(Exception):
    """Base class for all library errors."""


class Mismatch(CatAlgebraError):
    pass


class BadArrow(CatAlgebraError):
    pass


class BadObject(CatAlgebraError):
    pass


class NotComposable(BadArrow):
    pass


class NotAMonoid(CatAlgebraError):
    pass


class NotAPoset(CatAlgebraError):
    pass


class CyclicQuiver(CatAlgebraError):
    pass


class NoInverse(CatAlgebraError):
    pass


class NotIndiscrete(CatAlgebraError):
    pass


class InvalidDagger(CatAlgebraError):
    pass


class UnsupportedRig(CatAlgebraError):
    pass


class NotInvertible(CatAlgebraError):
    pass


class ShapeMismatch(CatAlgebraError):
    pass


class NotSymmetric(CatAlgebraError):
    pass


class NotHermitian(CatAlgebraError):
    pass


class NoConvergence(CatAlgebraError):
    pass


class SingularMatrix(CatAlgebraError):
    pass


class NotPSD(CatAlgebraError):
    pass


class NotCentral(CatAlgebraError):
    pass


class NotAState(CatAlgebraError):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class InversionFailure(CatAlgebraError):
    pass


class ParseError(CatAlgebraError):
    pass


class SchemaError(CatAlgebraError):
    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class UnknownRig(SchemaError):
    pass


class BadLiteral(SchemaError):
    pass
