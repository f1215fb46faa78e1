"""Exception hierarchy.

Everything the caller did wrong derives from :class:`InputError` (CLI exit
code 2); a violated internal identity raises :class:`InternalCheckError`
(exit code 3).
"""


class ConstellationError(Exception):
    pass


class InputError(ConstellationError, ValueError):
    pass


class LabelError(InputError):
    pass


class TailError(InputError):
    pass


class DegreeBoundError(InputError):
    pass


class ModuleError(InputError):
    pass


class PresentationError(InputError):
    pass


class WindowError(InputError):
    pass


class ExplosionError(InputError):
    pass


class PairingError(InputError):
    """The stability pairing <theta, h> is not zero."""

    def __init__(self, value, message=None):
        self.value = value
        super().__init__(message or f"<theta, h> = {value} != 0")


class ProblemSyntaxError(InputError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


class InternalCheckError(ConstellationError, AssertionError):
    pass


def check(condition, message):
    if not condition:
        raise InternalCheckError(message)
