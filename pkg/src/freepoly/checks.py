"""Named pass/fail records collected by reports and certificates."""

from __future__ import annotations

from typing import NamedTuple


class Check(NamedTuple):
    name: str
    passed: bool
    witness: object = None

    def to_json(self) -> dict:
        return {"name": self.name, "pass": bool(self.passed), "witness": self.witness}


def all_passed(checks) -> bool:
    return all(c.passed for c in checks)
