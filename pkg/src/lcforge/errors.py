"""Exception hierarchy shared across the package."""

from __future__ import annotations


class LcForgeError(Exception):
    """Base class for every error raised by lcforge."""

    stage: str | None = None

    def with_stage(self, stage: str) -> "LcForgeError":
        if self.stage is None:
            self.stage = stage
        return self


class RingMismatchError(LcForgeError, ValueError):
    pass


class ResourceExhausted(LcForgeError):
    """A Groebner computation hit its reduction-step limit."""

    def __init__(self, steps: int, limit: int):
        super().__init__(f"resource_exhausted: {steps} reduction steps exceeded limit {limit}")
        self.steps = steps
        self.limit = limit


class NonHomogeneousError(LcForgeError, ValueError):
    pass


class GenericityFailure(LcForgeError):
    """Every sampled coefficient vector failed verification."""

    def __init__(self, message: str, failures: list | None = None):
        super().__init__(f"genericity_failure: {message}")
        self.failures = failures or []


class SpecialVerificationFailure(LcForgeError):
    def __init__(self, message: str, subsets: list | None = None):
        super().__init__(f"special_verification_failure: {message}")
        self.subsets = subsets or []


class InputError(LcForgeError, ValueError):
    """Problem input rejected before any computation started."""


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
        self.bare_message = message


class CertificateFormatError(LcForgeError, ValueError):
    def __init__(self, message: str, position: str | None = None):
        super().__init__(f"{position}: {message}" if position else message)
        self.position = position
