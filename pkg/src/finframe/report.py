from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of a check.

    Truthy exactly when ``ok``. ``witness`` names the counterexample of a failed
    predicate (or the certificate of a successful one, e.g. the open set that
    makes a point locally closed). ``details`` holds JSON-friendly extras.
    """

    ok: bool
    witness: Any = None
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def as_dict(self) -> dict[str, Any]:
        out = {"ok": self.ok, "witness": _plain(self.witness)}
        out.update({k: _plain(v) for k, v in self.details.items()})
        return out


def _plain(value: Any) -> Any:
    if isinstance(value, Report):
        return value.as_dict()
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        return sorted(_plain(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value
