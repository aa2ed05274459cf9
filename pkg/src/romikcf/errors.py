"""Exception types shared across the package."""


class RomikError(Exception):
    """Base class for all domain errors raised by this package."""


class OutOfDomain(RomikError):
    """Input lies outside the interval the operation is defined on."""


class PoleError(RomikError):
    """A Moebius transformation was evaluated at its pole."""


class ZeroDenominator(RomikError):
    """A scalar was constructed with denominator zero."""


class MixedRadicals(RomikError):
    """Arithmetic between surds over different square-free radicands."""


class InvalidPrefix(RomikError):
    """A (delta, epsilon) cylinder prefix contains the impossible pair (-1, -1)."""


class InvalidDigits(RomikError):
    """A digit sequence violates the {0,2}-expansion adjacency constraints."""


class TerminalOrbit(RomikError):
    """The orbit terminated before the requested iterate exists."""


class PrefixTooShort(RomikError):
    """The computed expansion prefix is too short to certify the answer."""


class NeedMoreDigits(RomikError):
    """An expansion rewrite needs digits that are not available."""


class NotApplicable(RomikError):
    """A rewrite operator's precondition does not hold at the given position."""


class SingularRect(RomikError):
    """A cross-ratio factor of the rectangle measure vanishes (infinite measure)."""


class SeamPoint(RomikError):
    """The planar point lies on a measure-zero seam where the inverse is ambiguous."""


class CapExceeded(RomikError):
    """An iteration cap was reached before the stopping condition."""


class NoReturn(RomikError):
    """The orbit never reaches the inducing region."""


class DegenerateOrbit(RomikError):
    """A floating-point orbit collapsed onto an exact fixed point."""
