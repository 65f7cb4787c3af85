"""Exception types shared across the package."""


class AltCsitError(Exception):
    """Base class for every error raised by this package."""


class InvalidDimension(AltCsitError, ValueError):
    """A count, length or shape does not match what the operation needs."""


class SlotOutOfRange(AltCsitError, IndexError):
    """A slot index falls outside the channel process."""


class AccessDenied(AltCsitError):
    """A transmitter asked for channel knowledge it does not have.

    Parameters
    ----------
    reason : str
        One of ``"FutureSlot"``, ``"NoCsitAtSlot"``,
        ``"DelayedNotYetAvailable"`` or ``"ForeignColumn"``.
    """

    REASONS = ("FutureSlot", "NoCsitAtSlot", "DelayedNotYetAvailable", "ForeignColumn")

    def __init__(self, reason, message=""):
        if reason not in self.REASONS:
            raise ValueError(f"unknown AccessDenied reason {reason!r}")
        self.reason = reason
        super().__init__(f"{reason}: {message}" if message else reason)


class PatternMismatch(AltCsitError, ValueError):
    """The CSIT pattern does not dominate the scheme's minimal pattern."""


class NotIdentifiable(AltCsitError):
    """Some desired symbols cannot be recovered from the received signals.

    Attributes
    ----------
    symbols : list
        The unresolvable symbol references.
    """

    def __init__(self, symbols):
        self.symbols = list(symbols)
        super().__init__(f"{len(self.symbols)} desired symbol(s) not identifiable")


class InvalidWeights(AltCsitError, ValueError):
    """Time-sharing weights are negative or do not sum to one."""


class UnboundedRegion(AltCsitError, ValueError):
    """The half-space description does not define a bounded polytope."""


class InvalidSweep(AltCsitError, ValueError):
    """The power sweep is too short, too narrow or not increasing."""
