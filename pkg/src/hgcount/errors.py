"""Exception hierarchy.

Every error carries a ``stage`` naming the part of the pipeline that failed,
so the CLI can report it and pick an exit code.
"""

from __future__ import annotations


class HGError(Exception):
    stage = "engine"

    def __init__(self, message: str, *, stage: str | None = None, spec: str | None = None):
        super().__init__(message)
        if stage is not None:
            self.stage = stage
        self.spec = spec

    def __str__(self) -> str:
        msg = super().__str__()
        if self.spec:
            msg = f"{msg} [spec: {self.spec}]"
        return f"{self.stage}: {msg}"


class ParseError(HGError, ValueError):
    stage = "parse"


class DegreeMismatch(HGError, ValueError):
    stage = "parse"


class NotASubgroup(HGError, ValueError):
    stage = "enumerate"


class CatalogError(HGError, LookupError):
    stage = "catalog"


class CapExceeded(HGError, RuntimeError):
    """A size or effort bound was hit; the instance is out of desk scale."""

    stage = "enumerate"


class StrategyMismatch(HGError, RuntimeError):
    """Two independent enumeration routes disagreed. Always a bug."""

    stage = "enumerate"
