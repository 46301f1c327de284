"""Exception types raised across fusionkit."""


class FusionKitError(Exception):
    """Base class for all package errors."""


class TooLarge(FusionKitError):
    """An exhaustive computation was requested beyond its size bound."""


class InconsistentPresentation(FusionKitError):
    """A power-commutator presentation does not define a group of order 2^n."""


class NotAutomorphism(FusionKitError):
    pass


class Singular(FusionKitError):
    """A matrix expected to be invertible is singular."""


class SearchExhausted(FusionKitError):
    pass


class NotACocycle(FusionKitError):
    pass


class ShapeMismatch(FusionKitError):
    """Extension data does not have the hyperplane-stabilizer shape required."""


class NoFpfElement(FusionKitError):
    pass


class NotInSylow(FusionKitError):
    pass


class NotWeaklyClosed(FusionKitError):
    pass
