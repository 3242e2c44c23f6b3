from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = 'pass'
FAIL = 'fail'
MAX_WITNESSES = 10


@dataclass
class VerificationReport:
    """Outcome of one verification: named checks, an optional intersection
    profile, counterexample witnesses and metadata describing the input."""
    name: str
    checks: dict[str, bool] = field(default_factory=dict)
    profile: dict[int, int] = field(default_factory=dict)
    kind_profile: dict[tuple[str, int], int] = field(default_factory=dict)
    witnesses: list[Any] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def verdict(self) -> str:
        return PASS if self.passed else FAIL

    def check(self, name: str, ok: bool, witness: Any = None) -> bool:
        ok = bool(ok)
        self.checks[name] = self.checks.get(name, True) and ok
        if not ok and witness is not None:
            self.add_witness(witness)
        return ok

    def add_witness(self, witness: Any):
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(witness)

    def merge(self, other: VerificationReport, prefix: str | None = None):
        """Fold another report's checks (and witnesses) into this one."""
        for name, ok in other.checks.items():
            self.check(f'{prefix or other.name}.{name}', ok)
        for witness in other.witnesses:
            self.add_witness(witness)
        return self
