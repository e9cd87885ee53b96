"""Check results, validation errors and JSON-safe witness rendering."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator


@dataclass(frozen=True)
class Violation:
    """A single broken law, with the data that breaks it."""

    code: str
    witness: Any = None
    message: str = ""

    def __str__(self) -> str:
        text = f"{self.code}{jsonable(self.witness)!r}"
        return f"{text}: {self.message}" if self.message else text


class ValidationError(ValueError):
    """Raised when a table fails validation; carries every violation found."""

    def __init__(self, violations: Iterable[Violation], what: str = "structure"):
        self.violations = list(violations)
        self.what = what
        lines = "; ".join(str(v) for v in self.violations[:8])
        more = len(self.violations) - 8
        if more > 0:
            lines += f"; ... {more} more"
        super().__init__(f"invalid {what}: {lines}")

    @property
    def codes(self) -> set[str]:
        return {v.code for v in self.violations}


class NotLeftCancellative(ValidationError):
    def __init__(self, witness):
        super().__init__([Violation("NotLeftCancellative", witness)], "left-cancellative category")


class TooLarge(RuntimeError):
    """An enumeration exceeded its candidate budget."""


@dataclass(frozen=True)
class Check:
    """Outcome of one named check. Truthy iff it passed."""

    name: str
    ok: bool
    witness: Any = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        out = {"name": self.name, "ok": self.ok}
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class Verdict:
    """An ordered collection of checks; passes iff every check passes."""

    checks: tuple[Check, ...] = field(default_factory=tuple)

    def __init__(self, checks: Iterable[Check] = ()):
        object.__setattr__(self, "checks", tuple(checks))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def __iter__(self) -> Iterator[Check]:
        return iter(self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_dict() for c in self.checks]}


def jsonable(x: Any) -> Any:
    """Render witnesses deterministically: sets are sorted, tuples become lists."""
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (set, frozenset)):
        return sorted((jsonable(v) for v in x), key=repr)
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x
