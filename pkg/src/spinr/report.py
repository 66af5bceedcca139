"""Verification reports: one named check, its parameters, and any witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of one verification; failures carry enough data to reproduce."""

    check: str
    params: dict[str, object] = field(default_factory=dict)
    passed: bool = True
    failures: list[dict[str, object]] = field(default_factory=list)
    details: dict[str, object] = field(default_factory=dict)

    def fail(self, **witness: object) -> None:
        self.passed = False
        self.failures.append(witness)

    def to_json(self) -> dict:
        out: dict[str, object] = {
            "check": self.check,
            "params": self.params,
            "status": "pass" if self.passed else "fail",
        }
        if self.failures:
            out["witness"] = self.failures[0]
            out["failures"] = self.failures
        if self.details:
            out["details"] = self.details
        return out

    def summary(self) -> str:
        tag = "pass" if self.passed else "FAIL"
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        line = f"{self.check}({args}): {tag}"
        if not self.passed:
            line += f"  witness: {self.failures[0]}"
        return line
