"""Check results with witnesses.

Every verification routine returns a :class:`Report`; failures are data,
never exceptions.
"""

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool = True
    witness: Any = None
    count: int = 0
    detail: str = ""
    skipped: bool = False

    def fail(self, witness):
        """Record the first counterexample only (load-order first)."""
        if self.passed:
            self.passed = False
            self.witness = witness

    def to_dict(self):
        d = {"name": self.name, "passed": self.passed, "count": self.count}
        if self.skipped:
            d["skipped"] = True
        if self.witness is not None:
            d["witness"] = _plain(self.witness)
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, name, detail=""):
        c = Check(name, detail=detail)
        self.checks.append(c)
        return c

    def extend(self, other, prefix=None):
        for c in other.checks:
            if prefix:
                c = Check(f"{prefix}.{c.name}", c.passed, c.witness, c.count, c.detail, c.skipped)
            self.checks.append(c)
        return self

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name):
        return any(c.name == name for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        return {
            "suite": self.suite,
            "passed": self.passed,
            "meta": _plain(self.meta),
            "checks": [c.to_dict() for c in self.checks],
        }

    def __str__(self):
        lines = [f"[{'PASS' if self.passed else 'FAIL'}] {self.suite}"]
        for c in self.checks:
            tag = "skip" if c.skipped else ("ok" if c.passed else "FAIL")
            line = f"  {tag:4} {c.name} ({c.count})"
            if not c.passed:
                line += f" witness={c.witness}"
            lines.append(line)
        return "\n".join(lines)


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if hasattr(x, "item"):
        return x.item()
    return str(x)
