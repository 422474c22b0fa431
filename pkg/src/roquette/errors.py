"""Exception hierarchy shared by every module of the package."""


class RoquetteError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameter(RoquetteError, ValueError):
    """A family or type parameter is out of range."""


class GroupTooLarge(RoquetteError):
    """A concrete group would exceed the configured order bound."""

    def __init__(self, order, bound):
        super().__init__(f"group of order {order} exceeds the order bound {bound}")
        self.order = order
        self.bound = bound


class PrimeMismatch(RoquetteError, ValueError):
    """Two operands live over different primes."""


class NotNormal(RoquetteError, ValueError):
    """A subgroup was expected to be normal and is not."""


class NoCentralSubgroup(RoquetteError, ValueError):
    """No central subgroup of order p exists (trivial group)."""


class NotRoquetteError(RoquetteError, ValueError):
    """A group that had to be Roquette is not."""


class CentralProductUndefined(RoquetteError, ValueError):
    """The central product is not determined, or has no symbolic rule."""


class OddPrimeRequired(RoquetteError, ValueError):
    """The operation is only meaningful for odd primes."""


class UnknownFunctor(RoquetteError, KeyError):
    """No functor table is registered under the requested name."""


class ParseError(RoquetteError, ValueError):
    """Syntax error in a group expression."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SemanticError(RoquetteError, ValueError):
    """A well-formed group expression names an invalid group."""
