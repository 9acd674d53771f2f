from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum


class Severity(str, Enum):
    ADVISORY = "advisory"
    WARNING = "warning"
    ERROR = "error"

    @property
    def rank(self) -> int:
        return _RANK[self]


_RANK = {Severity.ADVISORY: 0, Severity.WARNING: 1, Severity.ERROR: 2}


@dataclass(frozen=True)
class Diagnostic:
    """One finding. ``span`` is an inclusive, 1-based EDU interval."""

    code: str
    severity: Severity
    message: str
    node_id: str | None = None
    span: tuple[int, int] | None = None
    manual_section: str = ""

    def to_dict(self) -> dict:
        out = asdict(self)
        out["severity"] = self.severity.value
        out["span"] = list(self.span) if self.span else None
        return out

    def format(self) -> str:
        where = []
        if self.node_id is not None:
            where.append(f"node {self.node_id}")
        if self.span is not None:
            where.append(f"edus {self.span[0]}-{self.span[1]}")
        locus = ", ".join(where) or "tree"
        section = f" [see {self.manual_section}]" if self.manual_section else ""
        return f"{self.severity.value:8} {self.code:20} {locus}: {self.message}{section}"
