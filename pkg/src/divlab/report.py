"""Property reports: every claim backed by a completed scan, emitted as JSON.

All counts are serialized as decimal strings so big values survive any JSON
reader. Timing lives under ``"volatile"`` and is the only field that may
differ between runs on the same input.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .setfam import (
    Family,
    degree_profile,
    diversity,
    is_intersecting,
    is_regular,
    is_upset,
)

SCHEMA = "divlab.report/1"
ALL_CHECKS = ("intersecting", "regular", "upset", "diversity")


def _set(s) -> list[int]:
    return list(s.elements)


@dataclass
class PropertyReport:
    kind: str
    params: dict
    family: Family
    checks: dict = field(default_factory=dict)
    required: list = field(default_factory=list)
    cross_checks: list = field(default_factory=list)
    values: dict = field(default_factory=dict)
    duration_s: float = 0.0

    def run_checks(self, names=ALL_CHECKS, workers: int | None = None) -> "PropertyReport":
        fam = self.family
        needs_profile = {"regular", "diversity"} & set(names)
        profile = degree_profile(fam, workers) if needs_profile and len(fam) else None
        for name in ALL_CHECKS:
            if name not in names:
                continue
            if name == "intersecting":
                r = is_intersecting(fam, workers=workers)
                self.checks[name] = {
                    "holds": r.intersecting,
                    "witness": [_set(a) for a in r.witness] if r.witness else None,
                }
            elif name == "regular":
                r = is_regular(fam, profile) if len(fam) else None
                self.checks[name] = {
                    "holds": bool(r),
                    "degree": str(r.degree) if r else None,
                    "witness": list(r.witness) if r is not None and r.witness else None,
                }
            elif name == "upset":
                r = is_upset(fam)
                self.checks[name] = {
                    "holds": r.upset,
                    "witness": (
                        {"set": _set(r.witness[0]), "element": r.witness[1]} if r.witness else None
                    ),
                }
            elif name == "diversity":
                if len(fam):
                    d = diversity(fam, profile)
                    self.checks[name] = {
                        "value": str(d.diversity),
                        "argmax_element": str(d.argmax_element),
                        "max_degree": str(d.max_degree),
                    }
                else:
                    self.checks[name] = {"value": None}
        return self

    def cross_check(self, name: str, expected, actual) -> None:
        self.cross_checks.append(
            {
                "name": name,
                "expected": str(expected),
                "actual": str(actual),
                "pass": str(expected) == str(actual),
            }
        )

    @property
    def passed(self) -> bool:
        ok = all(self.checks[r]["holds"] for r in self.required if r in self.checks)
        return ok and all(c["pass"] for c in self.cross_checks)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "construction": {
                "kind": self.kind,
                "params": {k: str(v) for k, v in self.params.items()},
            },
            "n": str(self.family.n),
            "family_size": str(len(self.family)),
            "checks": self.checks,
            "required": list(self.required),
            "cross_checks": self.cross_checks,
            "values": {k: str(v) for k, v in self.values.items()},
            "passed": self.passed,
            "volatile": {"duration_s": f"{self.duration_s:.6f}"},
        }


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def stable(payload: dict) -> dict:
    """Copy without the volatile block, for comparisons across runs."""
    return {k: v for k, v in payload.items() if k != "volatile"}


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        return False
