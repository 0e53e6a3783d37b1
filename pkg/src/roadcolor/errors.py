"""Exception hierarchy shared by every module.

The CLI maps each class to a fixed exit code, so callers that want to
distinguish failure kinds should catch the specific subclass.
"""


class RoadColorError(Exception):
    exit_code = 1


class InputError(RoadColorError, ValueError):
    """Malformed input: bad matrix, bad mapping, bad probability."""

    exit_code = 2

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class StructureError(RoadColorError):
    """A structural precondition failed (connectivity, period, sync verdict)."""

    exit_code = 3


class PreconditionError(StructureError):
    pass


class UnsupportedError(StructureError):
    pass


class InsufficientDataError(RoadColorError):
    """A simulated window did not contain enough pattern occurrences."""

    exit_code = 4
