"""Deterministic verification reports.

A report is an ordered collection of named checks.  Tier-1 checks are
assertions; Tier-2 entries are measurements that are recorded verbatim and
never decide the pass/fail status.  Serialisation is canonical (sorted keys,
fixed separators) so identical inputs give byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable

from .core import FockVector, Params


def vec_json(v: FockVector) -> list[dict]:
    return v.to_json()


@dataclass
class Check:
    name: str
    instances: int = 0
    failures: int = 0
    certificate: dict | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, certificate: Callable[[], dict] | None = None) -> bool:
        self.instances += 1
        if not ok:
            self.failures += 1
            if self.certificate is None and certificate is not None:
                self.certificate = certificate()
        return ok

    def to_json(self) -> dict:
        d = {"name": self.name, "instances": self.instances, "failures": self.failures, "passed": self.passed}
        if self.certificate is not None:
            d["certificate"] = self.certificate
        return d


@dataclass
class VerificationReport:
    suite: str
    params: Params | None = None
    settings: dict = field(default_factory=dict)
    checks: dict[str, Check] = field(default_factory=dict)
    skipped: list[dict] = field(default_factory=list)
    tier2: dict[str, Any] = field(default_factory=dict)

    def check(self, name: str) -> Check:
        if name not in self.checks:
            self.checks[name] = Check(name)
        return self.checks[name]

    def skip(self, name: str, reason: str) -> None:
        self.skipped.append({"check": name, "reason": reason})

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failed_checks(self) -> list[str]:
        return [c.name for c in self.checks.values() if not c.passed]

    def merge(self, other: "VerificationReport", prefix: str = "") -> None:
        for name, c in other.checks.items():
            key = prefix + name
            mine = self.check(key)
            mine.instances += c.instances
            mine.failures += c.failures
            if mine.certificate is None and c.certificate is not None:
                mine.certificate = c.certificate
        self.skipped.extend({"check": prefix + s["check"], "reason": s["reason"]} for s in other.skipped)
        for k, v in other.tier2.items():
            self.tier2[prefix + k] = v

    def to_json(self) -> dict:
        d = {
            "suite": self.suite,
            "passed": self.passed,
            "settings": self.settings,
            "checks": [c.to_json() for c in self.checks.values()],
            "skipped": self.skipped,
            "tier2": self.tier2,
        }
        if self.params is not None:
            d["params"] = self.params.to_dict()
        return d

    def dumps(self) -> str:
        return canonical_dumps(self.to_json())

    def summary_lines(self) -> list[str]:
        lines = []
        for c in self.checks.values():
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"{status} {self.suite}:{c.name} ({c.instances - c.failures}/{c.instances})")
        for s in self.skipped:
            lines.append(f"SKIP {self.suite}:{s['check']} ({s['reason']})")
        return lines


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, separators=(",", ": "), ensure_ascii=False) + "\n"
