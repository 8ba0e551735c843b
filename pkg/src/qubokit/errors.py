"""Exception types shared across the package."""


class QubokitError(Exception):
    """Base class for package-specific failures."""


class DataError(QubokitError):
    """An input file or dataset violates its contract."""


class SolverGuardError(QubokitError):
    """A solver refused the problem, e.g. exhaustive search beyond its size cap."""
