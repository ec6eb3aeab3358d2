"""Exception types shared across the package."""


class Circ16Error(Exception):
    """Base class for all errors raised by circ16."""


class InternalInvariantViolation(Circ16Error):
    """A computed result contradicts an identity that must always hold (a bug)."""


class FactorizationTimeout(Circ16Error):
    """A composite cofactor survived the configured factoring effort."""


class IndeterminateFactorization(Circ16Error):
    """Membership could not be decided because factoring did not finish."""


class InvalidResidue(Circ16Error, ValueError):
    """Input prime lies in the wrong residue class for the requested representation."""


class NotOdd(Circ16Error, ValueError):
    pass


class NotClassPM3(InvalidResidue):
    """Prime is 1 mod 8 but its two-squares representation has a +- b = +-1 mod 8."""


class SearchExhausted(Circ16Error):
    pass


class NotMember(Circ16Error, ValueError):
    pass


class BudgetExceeded(Circ16Error):
    pass


class NotFoundInBox(Circ16Error):
    pass
