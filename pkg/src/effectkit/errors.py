"""Exception types shared across the package."""


class EffectKitError(Exception):
    """Base class for all errors raised by effectkit."""


class RankMismatchError(EffectKitError):
    """A vector's rank does not match the ambient group."""


class CarrierError(EffectKitError):
    """An element is outside the carrier it was used with."""


class UndefinedSumError(EffectKitError):
    """A partial sum or difference was requested where it is not defined."""


class NotEnumerableError(EffectKitError):
    """The carrier is infinite or not provably finite."""


class NotRieszError(EffectKitError):
    """A quotient was requested modulo an ideal not known to be Riesz."""


class UnsupportedOperationError(EffectKitError):
    """The operation is not available for this carrier representation."""


class DocumentError(EffectKitError):
    """Syntax or semantic error in an algebra document."""

    def __init__(self, message, line=None):
        self.line = line
        self.message = message
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
