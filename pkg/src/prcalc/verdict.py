from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
PROVED = "proved"
UNRESOLVED = "unresolved"


@dataclass
class Verdict:
    name: str
    status: str
    witness: str | None = None
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """Unresolved counts as not-failed: bounded search is only semi-decisive."""
        return self.status in (PASS, PROVED, UNRESOLVED)

    def __bool__(self):
        return self.status in (PASS, PROVED)
