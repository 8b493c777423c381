from typing import Optional


class FairWorldError(Exception):
    """
    Base class for every error raised by fair_world.
    """

    pass


class DatasetError(FairWorldError):
    """
    An exception raised when a dataset violates its construction invariants.
    """

    pass


class IngestionError(FairWorldError):
    """
    An exception raised when a source file is missing or malformed.
    """

    def __init__(self, message: str, path: Optional[str] = None, row: Optional[int] = None):
        super().__init__(message)
        self.path = path
        self.row = row


class BiasInjectionError(FairWorldError):
    """
    An exception raised when a bias cannot be injected (bad intensity, constant scores).
    """

    pass


class LearnerError(FairWorldError):
    """
    An exception raised when a learner fails to fit or is queried for something it cannot provide.
    """

    pass


class MitigationError(FairWorldError):
    """
    Base class for bias mitigation errors.
    """

    pass


class MethodFailedError(MitigationError):
    """
    An exception raised when a mitigation method cannot produce a result for the data it was given.

    The pipeline records the cell as ``method_failed`` instead of aborting the run.
    """

    def __init__(self, method: str, reason: str):
        super().__init__(f"{method} failed: {reason}")
        self.method = method
        self.reason = reason


class ConfigError(FairWorldError):
    """
    An exception raised when a run configuration is invalid.
    """

    pass


class RecordStoreError(FairWorldError):
    """
    An exception raised by result stores.
    """

    pass


class RunNotFoundError(RecordStoreError):
    """
    An exception raised when a run is not found in the store.
    """

    pass


class EmptySelectionError(FairWorldError):
    """
    An exception raised when a plot or table selection matches no aggregates.
    """

    pass
