"""Exception taxonomy, mirrored by the CLI exit codes."""


class DfbenchError(Exception):
    """Base class for all engine errors."""


class DataError(DfbenchError):
    """Malformed files, invariant violations, manifest mismatches. Exit code 2."""


class TrainingError(DfbenchError):
    """Numerical failure while fitting a model. Exit code 3."""


class UsageError(DfbenchError):
    """Bad configuration or flags. Exit code 1."""
