"""Report containers and JSON/CSV/Markdown emitters for the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    status: str               # "pass" | "fail"
    residual: float | None = None
    detail: str = ""

    @classmethod
    def from_bool(cls, name: str, ok: bool, residual: float | None = None, detail: str = ""):
        return cls(name, "pass" if ok else "fail", residual, detail)


@dataclass
class Report:
    command: str
    seed: int | None
    tol: float
    checks: list[CheckResult] = field(default_factory=list)
    extras: dict = field(default_factory=dict)
    wall_time_s: float = 0.0

    @property
    def overall(self) -> str:
        return "pass" if all(c.status == "pass" for c in self.checks) else "fail"

    def add(self, name: str, ok: bool, residual: float | None = None, detail: str = ""):
        self.checks.append(CheckResult.from_bool(name, ok, residual, detail))

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "seed": self.seed,
            "tol": self.tol,
            "overall": self.overall,
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "residual": c.residual,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
            "extras": self.extras,
            "wall_time_s": self.wall_time_s,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        lines = [f"# command={self.command} seed={self.seed} tol={self.tol!r} overall={self.overall}"]
        lines.append("check,status,residual,detail")
        for c in self.checks:
            res = "" if c.residual is None else repr(c.residual)
            detail = c.detail.replace(",", ";")
            lines.append(f"{c.name},{c.status},{res},{detail}")
        lines.append(f"# wall_time_s={self.wall_time_s!r}")
        return "\n".join(lines) + "\n"

    def to_md(self) -> str:
        lines = [f"# {self.command}", ""]
        lines.append(f"- seed: {self.seed}")
        lines.append(f"- tol: {self.tol!r}")
        lines.append(f"- overall: **{self.overall}**")
        lines.append("")
        lines.append("| check | status | residual | detail |")
        lines.append("|---|---|---|---|")
        for c in self.checks:
            res = "" if c.residual is None else f"{c.residual:.3e}"
            lines.append(f"| {c.name} | {c.status} | {res} | {c.detail} |")
        if self.extras:
            lines.append("")
            lines.append("```json")
            lines.append(json.dumps(self.extras, indent=2, sort_keys=True))
            lines.append("```")
        lines.append("")
        lines.append(f"wall time: {self.wall_time_s:.3f} s")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "md":
            return self.to_md()
        raise ValueError(f"unknown format {fmt!r}")
