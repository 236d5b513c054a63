"""Deterministic report assembly: primary text plus CSV per table."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

from .util import fmt

SCHEMA_TAG = "deckrot report v1"


def render_value(value):
    """Format any evidence value deterministically."""
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(render_value(v) for v in value) + ")"
    if hasattr(value, "value") and value.__class__.__name__.endswith("Verdict"):
        return value.value
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, str):
        return value
    return fmt(value)


@dataclass
class Table:
    name: str
    header: tuple
    rows: list


@dataclass
class Section:
    label: str
    op: str
    lines: list = field(default_factory=list)
    tables: list = field(default_factory=list)

    def add(self, key, value):
        self.lines.append(f"{key} = {render_value(value)}")

    def note(self, text):
        self.lines.append(text)

    def add_certificate(self, cert):
        """Flat key-value block for a certificate."""
        self.lines.append(f"certificate.verdict = {cert.verdict.value}")
        self.lines.append(f"certificate.mechanism = {cert.mechanism.value}")
        self.lines.append(
            f"certificate.tau_lower_bound = {render_value(cert.tau_lower_bound)}"
        )
        self.lines.append(
            f"certificate.seminorm_rate = {render_value(cert.seminorm_rate)}"
        )
        self.lines.append(
            f"certificate.generator_constant = {render_value(cert.generator_constant)}"
        )
        for key in sorted(cert.evidence):
            self.lines.append(
                f"certificate.evidence.{key} = {render_value(cert.evidence[key])}"
            )


@dataclass
class Report:
    header: list = field(default_factory=list)
    sections: list = field(default_factory=list)

    def section(self, label, op) -> Section:
        sec = Section(label, op)
        self.sections.append(sec)
        return sec

    def render_text(self) -> str:
        out = [SCHEMA_TAG]
        out.extend(self.header)
        for sec in self.sections:
            out.append("")
            out.append(f"== {sec.label} ({sec.op}) ==")
            out.extend(sec.lines)
            for table in sec.tables:
                out.append(f"[table {table.name}.csv: {len(table.rows)} rows]")
        out.append("")
        return "\n".join(out)

    def csv_blobs(self) -> dict:
        blobs = {}
        for sec in self.sections:
            for table in sec.tables:
                buf = io.StringIO()
                writer = csv.writer(buf, lineterminator="\n")
                writer.writerow(table.header)
                for row in table.rows:
                    writer.writerow([render_value(v) for v in row])
                blobs[f"{table.name}.csv"] = buf.getvalue()
        return blobs

    def write(self, out_dir) -> list:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        written = []
        text_path = out_dir / "report.txt"
        text_path.write_text(self.render_text(), encoding="utf-8")
        written.append(text_path)
        for name, blob in self.csv_blobs().items():
            p = out_dir / name
            p.write_text(blob, encoding="utf-8")
            written.append(p)
        return written
