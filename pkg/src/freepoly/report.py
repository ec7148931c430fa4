"""The invariant report and its JSON / text renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .checks import Check
from .cones import Cone, OrderSpec
from .cyclotomic import CycNum

__all__ = ["InvariantReport", "emit_report", "to_jsonable", "emit_payload"]


@dataclass
class InvariantReport:
    n: int
    e: int
    h: int
    order: OrderSpec
    characteristic_exponents: list
    D: list
    d: list
    e_seq: list
    r: list
    generators: list
    pseudo_root_orders: list
    approx_root_orders: list
    checks: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def invariants(self) -> dict:
        """The precision-independent part of the report."""
        d = self.to_dict()
        d.pop("checks")
        for k in list(self.extras):
            d.pop(k, None)
        return d

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "e": self.e,
            "h": self.h,
            "order": self.order.to_json(),
            "characteristic_exponents": self.characteristic_exponents,
            "D": self.D,
            "d": self.d,
            "e_seq": self.e_seq,
            "r": self.r,
            "generators": self.generators,
            "pseudo_root_orders": self.pseudo_root_orders,
            "approx_root_orders": self.approx_root_orders,
            "checks": [c.to_json() if isinstance(c, Check) else c for c in self.checks],
        }
        out.update(self.extras)
        return to_jsonable(out)


def to_jsonable(obj):
    """Tuples become lists, rationals become "p/q" strings (integers stay numbers)."""
    if isinstance(obj, Check):
        return to_jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, int):
        return obj
    if isinstance(obj, CycNum):
        return str(obj)
    if isinstance(obj, OrderSpec):
        return obj.to_json()
    if isinstance(obj, Cone):
        return obj.literal()
    if isinstance(obj, (str, float)):
        return obj
    return str(obj)


def _vec_text(v) -> str:
    if isinstance(v, (list, tuple)):
        return "(" + ",".join(_vec_text(x) for x in v) + ")"
    return str(v)


def _text_lines(payload: dict, indent: str = "") -> list[str]:
    lines = []
    for k, v in payload.items():
        if k == "checks" and isinstance(v, list):
            lines.append(f"{indent}checks:")
            for c in v:
                mark = "PASS" if c.get("pass") else "FAIL"
                wit = c.get("witness")
                tail = "" if wit in (None, {}, []) else f"  {json.dumps(wit, separators=(',', ':'))}"
                lines.append(f"{indent}  [{mark}] {c.get('name')}{tail}")
        elif isinstance(v, dict):
            if k == "order" and "weight" in v:
                lines.append(f"{indent}order: weight {_vec_text(v['weight'])}, {v.get('tiebreak')} tiebreak")
            else:
                lines.append(f"{indent}{k}:")
                lines.extend(_text_lines(v, indent + "  "))
        elif isinstance(v, list):
            if v and all(isinstance(x, list) for x in v):
                lines.append(f"{indent}{k}: " + ", ".join(_vec_text(x) for x in v))
            else:
                lines.append(f"{indent}{k}: " + ", ".join(str(x) for x in v))
        else:
            lines.append(f"{indent}{k}: {v}")
    return lines


def emit_payload(payload: dict, fmt: str = "json") -> str:
    payload = to_jsonable(payload)
    if fmt == "json":
        return json.dumps(payload, separators=(",", ":"))
    if fmt == "text":
        return "\n".join(_text_lines(payload))
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(report: InvariantReport, fmt: str = "json") -> str:
    return emit_payload(report.to_dict(), fmt)
