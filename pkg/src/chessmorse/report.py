"""Deterministic plain-text reports.

A report is a command echo, an optional input digest, any number of
``== name ==`` sections holding aligned tables or free text, and a trailing
``key = value`` block for scripts.  Nothing time- or host-dependent goes in,
so identical inputs give byte-identical output.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field


def digest(data: str | bytes) -> str:
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


def table(header: list[str], rows: list[list[object]]) -> list[str]:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    fmt = lambda r: "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
    return [fmt(header), fmt(["-" * w for w in widths])] + [fmt(r) for r in cells[1:]]


@dataclass
class Report:
    command: str
    input_digest: str | None = None
    sections: list[tuple[str, list[str]]] = field(default_factory=list)
    values: list[tuple[str, str]] = field(default_factory=list)

    def section(self, name: str, lines: list[str] | str) -> None:
        if isinstance(lines, str):
            lines = lines.splitlines()
        self.sections.append((name, list(lines)))

    def table(self, name: str, header: list[str], rows: list[list[object]]) -> None:
        self.section(name, table(header, rows))

    def put(self, key: str, value: object) -> None:
        self.values.append((key, str(value)))

    def render(self) -> str:
        out = [f"# command: {self.command}"]
        if self.input_digest is not None:
            out.append(f"# input sha256: {self.input_digest}")
        for name, lines in self.sections:
            out.append("")
            out.append(f"== {name} ==")
            out.extend(lines)
        if self.values:
            out.append("")
            out.append("== values ==")
            out.extend(f"{k} = {v}" for k, v in self.values)
        return "\n".join(out) + "\n"


def parse_values(text: str) -> dict[str, str]:
    """Read back the ``key = value`` block of a rendered report."""
    out: dict[str, str] = {}
    inside = False
    for line in text.splitlines():
        if line.startswith("== "):
            inside = line == "== values =="
            continue
        if inside and " = " in line:
            k, v = line.split(" = ", 1)
            out[k] = v
    return out
