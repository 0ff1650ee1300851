from typing import Any, Optional


class EpsilonLabError(Exception):
    exit_code: int = 3


class ModelParseError(EpsilonLabError):
    exit_code = 1


class PresentationError(EpsilonLabError):
    exit_code = 2


class ComputationError(EpsilonLabError):
    exit_code = 3


class NotStochastic(PresentationError):
    pass


class NotUnifilar(PresentationError):
    pass


class AlphabetMismatch(PresentationError):
    pass


class MultipleRecurrentClasses(PresentationError):
    pass


class NotADistribution(PresentationError):
    pass


class ShapeMismatch(PresentationError):
    pass


class UnknownName(PresentationError):
    pass


class ParamOutOfRange(PresentationError):
    pass


class UnknownFigure(PresentationError):
    pass


class ConfigurationError(PresentationError):
    pass


class NonConvergence(ComputationError):

    def __init__(self, message: str, estimate: Any = None, residual: Optional[float] = None):
        super().__init__(message)
        self.estimate = estimate
        self.residual = residual


class NotPSD(ComputationError):
    pass


class SaturationInfeasible(ComputationError):

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


class OutputStateCorrespondenceAmbiguous(ComputationError):
    pass


class ZeroDivisor(ComputationError):
    pass


class DegenerateParameters(ComputationError):
    pass


class TargetOutOfRange(ComputationError):
    pass


class MissingE(ComputationError):
    pass


class TooShort(ComputationError):
    pass
