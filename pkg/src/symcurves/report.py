"""Schema-versioned command reports with text, JSON and CSV renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Any

SCHEMA_VERSION = 1


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tail = f": {self.detail}" if self.detail else ""
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}{tail}"


@dataclass
class Report:
    command: list[str]
    results: list[dict[str, Any]] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    runtime: dict[str, float] | None = None
    text: list[str] = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        if d["runtime"] is None:
            del d["runtime"]
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> Report:
        version = d.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema version {version!r}")
        return cls(
            command=list(d["command"]),
            results=list(d.get("results", [])),
            checks=[Check(**c) for c in d.get("checks", [])],
            skipped=list(d.get("skipped", [])),
            runtime=d.get("runtime"),
            text=list(d.get("text", [])),
            schema_version=version,
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        """Flattened ``record,key,value`` rows: one block per result, then checks."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["record", "key", "value"])
        for idx, rec in enumerate(self.results):
            for key, value in _flatten(rec):
                w.writerow([idx, key, value])
        for c in self.checks:
            w.writerow(["check", c.name, "pass" if c.passed else "fail"])
        for s in self.skipped:
            w.writerow(["skipped", s, ""])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = list(self.text)
        if not lines:
            for rec in self.results:
                lines.append("  ".join(f"{k}={v}" for k, v in _flatten(rec)))
        lines += [c.line() for c in self.checks]
        lines += [f"SKIP {s}" for s in self.skipped]
        if self.checks:
            lines.append(f"{len(self.checks) - len(self.failures)}/{len(self.checks)} checks passed")
        if self.runtime:
            lines.append("runtime: " + ", ".join(f"{k}={v:.3f}s" for k, v in sorted(self.runtime.items())))
        return "\n".join(lines) + "\n"


def _flatten(value: Any, prefix: str = "") -> list[tuple[str, Any]]:
    if isinstance(value, dict):
        out: list[tuple[str, Any]] = []
        for k in value:
            out += _flatten(value[k], f"{prefix}.{k}" if prefix else str(k))
        return out
    if isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        out = []
        for i, v in enumerate(value):
            out += _flatten(v, f"{prefix}[{i}]")
        return out
    return [(prefix, json.dumps(value) if isinstance(value, list) else value)]


def fmt_real(x: float) -> str:
    """Six significant digits."""
    return f"{x:.6g}"
