"""Exception hierarchy shared by all modules."""


class VdcertError(Exception):
    pass


class DomainViolation(VdcertError, ValueError):
    """An operation was applied outside its domain (log of a non-positive
    interval, division by an interval containing zero, a pole of tan...)."""


class PrecisionExhausted(VdcertError):
    pass


class BracketError(VdcertError, ValueError):
    """No certified sign change on the supplied bracket."""


class TailError(VdcertError):
    """The tail majorant of a ray maximisation is not dominated by the
    scanned maximum, so the scan window is too short."""


class CapExceeded(VdcertError):
    """A brute-force computation would exceed its configured term cap."""


class CertificateFailure(VdcertError):
    """A certified inequality failed. ``certificate`` carries the term
    breakdown for inspection."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class ConfigError(VdcertError, ValueError):
    pass
