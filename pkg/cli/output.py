import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from cli.schemas import OutputFormat
from markov_dyck.errors import InputError
from markov_dyck.spectra import CertifiedReal


@dataclass
class CommandResult:
    payload: dict[str, Any]
    rows: list[dict[str, Any]] = field(default_factory=list)
    dot: str | None = None
    mismatch: bool = False


def to_plain(value: Any) -> Any:
    """Exact rationals become "p/q" strings and certified reals [lo, hi] decimal strings."""
    if isinstance(value, CertifiedReal):
        return value.decimal()
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [to_plain(v) for v in value]
    return value


def _csv(rows: list[dict[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: json.dumps(v) if isinstance(v, list | dict) else v
                         for k, v in to_plain(row).items()})
    return buffer.getvalue()


def _text(result: CommandResult) -> str:
    lines = []
    for key, value in to_plain(result.payload).items():
        if isinstance(value, list | dict):
            continue
        lines.append(f"{key}: {value}")
    if result.rows:
        columns = list(result.rows[0])
        table = [[str(to_plain(row.get(c, ""))) for c in columns] for row in result.rows]
        widths = [max(len(c), *(len(r[i]) for r in table)) for i, c in enumerate(columns)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
        lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in table]
    return "\n".join(lines) + "\n"


def emit_report(result: CommandResult, fmt: OutputFormat) -> str:
    match fmt:
        case OutputFormat.json:
            return json.dumps(to_plain(result.payload), indent=2) + "\n"
        case OutputFormat.csv:
            if not result.rows:
                raise InputError("This report has no tabular form; use --format json")
            return _csv(result.rows)
        case OutputFormat.text:
            return _text(result)
        case OutputFormat.dot:
            if result.dot is None:
                raise InputError("Only the graph command has DOT output")
            return result.dot
    raise InputError(f"Unsupported output format: {fmt}")
