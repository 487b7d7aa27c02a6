"""Machine-readable verification reports."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .exactfield import LinMap, unravel


@dataclass
class Entry:
    label: str
    ok: bool
    witness: tuple | None = None
    detail: str = ""
    values: dict | None = None

    def to_json(self):
        out = {"label": self.label, "ok": self.ok}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.detail:
            out["detail"] = self.detail
        if self.values:
            out["values"] = self.values
        return out


@dataclass
class Report:
    title: str
    entries: list = dc_field(default_factory=list)
    derived: dict = dc_field(default_factory=dict)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and all(e.ok for e in self.entries)

    @property
    def verdict(self) -> str:
        if self.error is not None:
            return "error"
        return "pass" if self.ok else "fail"

    def add(self, label, ok, witness=None, detail=""):
        self.entries.append(Entry(label, bool(ok), witness, detail))
        return ok

    def extend(self, other: "Report", prefix: str = ""):
        for e in other.entries:
            self.entries.append(Entry(prefix + e.label, e.ok, e.witness, e.detail, e.values))
        return other.ok

    def entry(self, label) -> Entry:
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(label)

    def failed(self) -> list[str]:
        return [e.label for e in self.entries if not e.ok]

    def to_json(self):
        out = {"title": self.title, "verdict": self.verdict,
               "entries": [e.to_json() for e in self.entries]}
        if self.derived:
            out["derived"] = self.derived
        if self.error is not None:
            out["error"] = self.error
        return out

    def __bool__(self):
        return self.ok


def compare(report: Report, label: str, lhs: LinMap, rhs: LinMap, dims=None, detail: str = ""):
    """Record whether two maps agree; the witness is the first differing input.

    ``dims`` lists the factor dimensions of the common domain so the witness
    can be given as a 1-based multi-index.
    """
    if lhs.shape != rhs.shape:
        return report.add(label, False, None, f"shape {lhs.shape} vs {rhs.shape}")
    col = (lhs - rhs).first_nonzero_column()
    if col is None:
        return report.add(label, True, None, detail)
    witness = unravel(col, dims) if dims else (col + 1,)
    fmt = lhs.field.format
    values = {"lhs": [fmt(x) for x in lhs.column(col)], "rhs": [fmt(x) for x in rhs.column(col)]}
    report.entries.append(Entry(label, False, witness, detail, values))
    return False
