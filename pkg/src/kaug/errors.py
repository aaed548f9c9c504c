"""Exception hierarchy shared by all solver modules."""


class KaugError(Exception):
    """Base class for every error raised by this package."""


class AdjacentTerminals(KaugError):
    """A node cut was requested between two adjacent nodes."""


class SizeLimit(KaugError):
    """An enumeration would exceed its configured budget."""


class NotDeficient(KaugError):
    pass


class NotMeetingPoint(KaugError):
    pass


class Infeasible(KaugError):
    """No finite-cost augmentation reaches the requested connectivity."""


class IterationLimit(KaugError):
    pass


class EmptySupport(KaugError):
    pass


class BadTerminalCount(KaugError):
    pass


class NoRogueFound(KaugError):
    """Rogue extraction failed; the fractional point violated its precondition."""


class RegimeViolation(KaugError):
    """Guaranteed mode was requested on an instance with too few nodes."""


class RestartBudgetExceeded(KaugError):
    pass


class GuaranteeViolated(KaugError):
    """A step that the analysis proves infallible did fail."""


class BudgetExceeded(KaugError):
    pass


class FormatError(KaugError, ValueError):
    pass
