from typing import List, Optional

from pydantic import BaseModel


class CheckResult(BaseModel):
    name: str
    value: float
    threshold: float
    passed: bool
    applicable: bool = True
    note: Optional[str] = None

    @classmethod
    def below(cls, name: str, value: float, threshold: float, note: str = None) -> "CheckResult":
        return cls(name=name, value=value, threshold=threshold, passed=value <= threshold, note=note)

    @classmethod
    def informational(cls, name: str, value: float, threshold: float, note: str) -> "CheckResult":
        """A measurement reported without a verdict because the identity does not apply."""
        return cls(name=name, value=value, threshold=threshold, passed=True, applicable=False, note=note)

    @property
    def status(self) -> str:
        if not self.applicable:
            return "INFO"
        return "PASS" if self.passed else "FAIL"

    def line(self) -> str:
        text = f"{self.status:<5} {self.name}: {self.value:.3e} (threshold {self.threshold:.1e})"
        return f"{text} {self.note}" if self.note else text


class SymmetryReport(BaseModel):
    title: str
    checks: List[CheckResult] = []

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks if check.applicable)

    @property
    def available_checks(self) -> List[CheckResult]:
        return [check for check in self.checks if check.applicable]

    def lines(self) -> List[str]:
        return [f"# {self.title}"] + [check.line() for check in self.checks]
