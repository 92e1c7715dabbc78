"""Exception types shared across the package."""


class OmlBellError(Exception):
    """Base class for all package-specific errors."""


class SizeCapError(OmlBellError):
    """A requested structure exceeds the configured size cap."""


class ConstructionError(OmlBellError):
    """A lattice construction did not produce a valid OML.

    Carries the validation report (when available) so callers can see
    which axiom failed and on which elements.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class DiagramError(OmlBellError):
    """A Greechie diagram violates its structural invariants."""


class ConsistencyError(OmlBellError):
    """An internal cross-check failed (signals corrupt input slipped through)."""


class FormulaError(OmlBellError):
    """A counterfactual formula falls outside the supported two-literal grammar."""


class DocumentError(OmlBellError):
    """A lattice/map document is malformed or fails validation on load."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
