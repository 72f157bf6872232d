"""Exception types raised by dealercomp."""


class DealerCompError(Exception):
    """Base class for all library errors."""


class InvalidQueryError(DealerCompError, ValueError):
    """A query or rule set violates its documented bounds."""


class RegimeError(DealerCompError, ValueError):
    """A closed-form routine was called outside the range where it applies."""


class OverlongSequenceError(DealerCompError, ValueError):
    """A card sequence continues after the dealer has already stood or busted."""
