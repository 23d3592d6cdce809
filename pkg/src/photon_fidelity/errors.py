"""Exception taxonomy shared across the package."""


class PhotonFidelityError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(PhotonFidelityError, ValueError):
    """A constructor or operation received an out-of-domain parameter."""


class ConvergenceError(PhotonFidelityError):
    """Refinement exhausted without meeting the requested tolerance.

    Carries the best value and error estimate so callers can decide
    whether the partial result is still usable.
    """

    def __init__(self, message, best_value=None, error_estimate=None):
        super().__init__(message)
        self.best_value = best_value
        self.error_estimate = error_estimate


class DegenerateStateError(PhotonFidelityError):
    """A fidelity was requested for a state with (numerically) zero norm."""


class UndefinedPhaseError(PhotonFidelityError):
    """arg of an overlap was requested but the overlap is numerically zero."""


class AxisSingularityError(PhotonFidelityError):
    """Polarization vector requested on or too near the k_z axis."""


class IncompatibleGridError(PhotonFidelityError):
    """Two position fields live on different grids."""


class ResourceLimitError(PhotonFidelityError):
    """An operation would exceed its documented size budget."""


class InconsistentTransformError(PhotonFidelityError):
    """A transform's field matrix and momentum map disagree (non-unimodular phase)."""


class BranchUndefinedError(PhotonFidelityError):
    """A phase formula was evaluated exactly on its singular set."""


class NoCrossingError(PhotonFidelityError):
    """The fidelity curve never crosses the threshold inside the bracket."""


class AmbiguousRootError(PhotonFidelityError):
    """The bracketed fidelity curve is not monotone, so the root is ambiguous."""
