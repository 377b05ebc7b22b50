"""Pass/fail bookkeeping for the identity suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int = 0
    witness: str = ""


@dataclass
class Report:
    title: str = ""
    results: dict[str, CheckResult] = field(default_factory=dict)

    def record(self, name: str, ok: bool, witness: str = "") -> bool:
        r = self.results.setdefault(name, CheckResult(name, True))
        r.cases += 1
        if not ok and r.passed:
            r.passed = False
            r.witness = witness
        return ok

    def skip(self, name: str, reason: str) -> None:
        self.results.setdefault(name, CheckResult(name, True, 0, f"n/a: {reason}"))

    def merge(self, other: Report) -> Report:
        for name, r in other.results.items():
            mine = self.results.get(name)
            if mine is None:
                self.results[name] = CheckResult(r.name, r.passed, r.cases, r.witness)
            else:
                mine.cases += r.cases
                if mine.passed and not r.passed:
                    mine.passed, mine.witness = False, r.witness
        return self

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results.values())

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results.values() if not r.passed]

    def filtered(self, prefix: str) -> Report:
        prefix = prefix.lower()
        return Report(
            self.title,
            {k: v for k, v in self.results.items() if k.lower().startswith(prefix)},
        )

    def lines(self) -> list[str]:
        out = []
        for r in self.results.values():
            tag = "PASS" if r.passed else "FAIL"
            extra = f"  [{r.witness}]" if r.witness else ""
            out.append(f"{tag}  {r.name:<28} cases={r.cases}{extra}")
        return out

    def __str__(self) -> str:
        head = [self.title] if self.title else []
        return "\n".join(head + self.lines())
