"""Exception hierarchy shared by all clusterknit modules."""


class ClusterKnitError(Exception):
    """Base class for all errors raised by this package."""


# -- quiver ------------------------------------------------------------

class LoopError(ClusterKnitError):
    pass


class CycleError(ClusterKnitError):
    pass


class DisconnectedError(ClusterKnitError):
    pass


class TooSmallError(ClusterKnitError):
    pass


class NotAdaptedError(ClusterKnitError):
    pass


class NotReducedError(ClusterKnitError):
    pass


# -- mesh --------------------------------------------------------------

class TerminalConstraintError(ClusterKnitError):
    pass


class DynkinOverflowError(ClusterKnitError):
    pass


# -- exchange / cluster ------------------------------------------------

class TwoCycleError(ClusterKnitError):
    pass


class FrozenMutationError(ClusterKnitError):
    pass


class AmbiguityError(ClusterKnitError):
    """Both mutation branches are total-tied but differ; refusing to guess."""


# -- laurent -----------------------------------------------------------

class ArityMismatchError(ClusterKnitError):
    pass


class NotDivisibleError(ClusterKnitError):
    """Exact division failed.  In mutation context this signals a broken
    invariant, never an expected condition."""


class NegativeExponentSubstitutionError(ClusterKnitError):
    pass


# -- rigidpath ---------------------------------------------------------

class ScheduleMismatchError(ClusterKnitError):
    pass


# -- euler -------------------------------------------------------------

class NonIntegralError(ClusterKnitError):
    pass


class NotThinError(ClusterKnitError):
    pass


# -- minors ------------------------------------------------------------

class ShapeError(ClusterKnitError):
    pass
