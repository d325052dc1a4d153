"""Resource caps and the error types shared by every module."""
from __future__ import annotations

import contextlib
from dataclasses import dataclass, replace


class HfpError(Exception):
    """Base class for library errors."""


class InvalidInput(HfpError, ValueError):
    """An input violates a documented invariant or precondition."""


class CapExceeded(HfpError):
    """A configured resource cap was hit.  ``cap`` names which one."""

    def __init__(self, cap: str, limit: int, detail: str = ""):
        self.cap = cap
        self.limit = limit
        msg = f"cap {cap}={limit} exceeded"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


@dataclass(frozen=True)
class Caps:
    simplices: int = 100_000
    order: int = 100
    enum: int = 10_000_000


_current = Caps()


def get_caps() -> Caps:
    return _current


def set_caps(**kw) -> Caps:
    global _current
    _current = replace(_current, **kw)
    return _current


@contextlib.contextmanager
def caps_override(**kw):
    global _current
    old = _current
    _current = replace(old, **{k: v for k, v in kw.items() if v is not None})
    try:
        yield _current
    finally:
        _current = old


def check_simplices(count: int, what: str = "") -> None:
    if count > _current.simplices:
        raise CapExceeded("simplices", _current.simplices, what)


def check_order(order: int, what: str = "") -> None:
    if order > _current.order:
        raise CapExceeded("order", _current.order, what)


class Budget:
    """Counter of candidate checks against the enumeration cap."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = None):
        self.limit = _current.enum if limit is None else limit
        self.used = 0

    def spend(self, k: int = 1) -> None:
        self.used += k
        if self.used > self.limit:
            raise CapExceeded("enum", self.limit, f"{self.used} candidate checks")
