"""Errors raised by the twistor constructions."""


class TwistorError(Exception):
    pass


class DegenerateParameter(TwistorError, ValueError):
    pass


class IncompatibleParameters(TwistorError, ValueError):
    pass


class FixtureError(TwistorError):
    pass


class UnknownObject(TwistorError, KeyError):
    pass


class TranscriptionSelfCheckFailed(TwistorError):
    pass


class CrossCheckFailed(TwistorError):
    pass


class KindMismatch(TwistorError, TypeError):
    pass


class NotASymmetry(TwistorError):
    pass


class SignCalibrationFailed(TwistorError):
    pass


class VerificationFailed(TwistorError):
    pass


class NotClosed(TwistorError):
    def __init__(self, pair, residual):
        super().__init__(f"bracket of generators {pair} leaves the span")
        self.pair = pair
        self.residual = residual


class MatchFailed(TwistorError):
    pass


class InconsistentEDS(TwistorError):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class AmbiguousCurvature(TwistorError):
    pass
