"""Betti tables: text rendering, CSV, metadata."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path

from . import __version__

CSV_HEADER = ("p", "degree", "dim")


def conventions_hash() -> str:
    text = resources.files("curvedhh").joinpath("CONVENTIONS.md").read_bytes()
    return hashlib.sha256(text).hexdigest()[:16]


@dataclass
class BettiReport:
    """Rows keyed by truncation level p, each a {homological degree: dim} map."""

    rows: dict[int, dict[int, int]]
    field: str = "Q"
    input_hash: str = ""
    kind: str = "hochschild"
    version: str = __version__
    conventions: str = dc_field(default_factory=conventions_hash)

    def __post_init__(self):
        self.rows = {int(p): {int(k): int(v) for k, v in sorted(r.items()) if v}
                     for p, r in sorted(self.rows.items())}

    def __eq__(self, other):
        if not isinstance(other, BettiReport):
            return NotImplemented
        return self.rows == other.rows and self.field == other.field

    def degrees(self) -> list[int]:
        return sorted({k for r in self.rows.values() for k in r})

    @property
    def metadata(self) -> dict:
        return {"kind": self.kind, "field": self.field, "input_hash": self.input_hash,
                "version": self.version, "conventions": self.conventions,
                "p_values": sorted(self.rows)}

    # -- text --------------------------------------------------------------

    def table(self, label: str = "p") -> str:
        """Degrees as columns, most negative on the left, blank for zero."""
        degs = self.degrees()
        head = [label] + [str(k) for k in degs]
        body = [[str(p)] + [str(r.get(k, "")) for k in degs] for p, r in self.rows.items()]
        widths = [max(len(row[i]) for row in [head] + body) for i in range(len(head))]
        fmt = lambda row: "  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip()  # noqa: E731
        return "\n".join([fmt(head)] + [fmt(r) for r in body])

    # -- csv -----------------------------------------------------------------

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for p, r in self.rows.items():
            for k, v in r.items():
                w.writerow((p, k, v))
        return buf.getvalue()

    def write(self, path: str | Path) -> None:
        path = Path(path)
        path.write_text(self.to_csv())
        path.with_suffix(path.suffix + ".meta.json").write_text(json.dumps(self.metadata, indent=2, sort_keys=True)
                                                                  + "\n")

    @classmethod
    def from_csv(cls, text: str, meta: dict | None = None) -> "BettiReport":
        rd = csv.reader(io.StringIO(text))
        header = next(rd, None)
        if tuple(header or ()) != CSV_HEADER:
            raise ValueError(f"expected header {','.join(CSV_HEADER)}, got {header}")
        meta = meta or {}
        rows: dict[int, dict[int, int]] = {p: {} for p in meta.get("p_values", [])}
        for rec in rd:
            if not rec:
                continue
            p, k, v = (int(x) for x in rec)
            rows.setdefault(p, {})[k] = v
        return cls(rows, meta.get("field", "Q"), meta.get("input_hash", ""), meta.get("kind", "hochschild"),
                   meta.get("version", __version__), meta.get("conventions", conventions_hash()))

    @classmethod
    def read(cls, path: str | Path) -> "BettiReport":
        path = Path(path)
        side = path.with_suffix(path.suffix + ".meta.json")
        meta = json.loads(side.read_text()) if side.exists() else None
        return cls.from_csv(path.read_text(), meta)
