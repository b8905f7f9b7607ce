"""Exception types shared across the pipeline.

The CLI maps these onto exit codes: InputError -> 2, ConsistencyError -> 3.
"""


class AttnPeaksError(Exception):
    """Base class for all pipeline errors."""


class InputError(AttnPeaksError):
    """A file, row, or configuration value is malformed or missing."""


class ConsistencyError(AttnPeaksError):
    """An internal invariant was violated (e.g. series and corpus disagree)."""
