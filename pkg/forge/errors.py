class ForgeError(Exception):
    """Base class for every failure raised by the engine.

    ``code`` is the exit status the management commands report.
    """

    code = 2

    def __init__(self, message: str = "", **context):
        super().__init__(message or self.__class__.__name__)
        self.context = context


class DivisionByZero(ForgeError):
    pass


class PoleAtValue(ForgeError):
    pass


class ParseError(ForgeError):
    pass


class NotNormalizable(ForgeError):
    pass


class ZeroPatternAsymmetric(ForgeError):
    pass


class SizeTooLarge(ForgeError):
    pass


class InternalInconsistency(ForgeError):
    code = 1


class NotStabilized(ForgeError):
    code = 1


class WrongCharacteristic(ForgeError):
    pass


class NotOdd(ForgeError):
    pass


class UndefinedReflection(ForgeError):
    pass


class NonIntegerCoefficient(ForgeError):
    pass


class NotIsotropic(ForgeError):
    pass


class OrbitCapExceeded(ForgeError):
    code = 3


class CapExceeded(ForgeError):
    code = 3


class NotASymmetry(ForgeError):
    pass


class ExtensionFailure(ForgeError):
    code = 1


class Degenerate(ForgeError):
    pass


class InvalidParams(ForgeError):
    pass


class WrongShape(ForgeError):
    pass


class ExpectationFileInvalid(ForgeError):
    pass
