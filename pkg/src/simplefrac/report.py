"""Machine-readable run reports.

Every CLI subcommand emits one RunReport.  Serialization is deterministic:
keys sorted, floats printed with 17 significant digits (parse -> re-serialize
is byte-identical), complex values as [re, im] pairs, LF line endings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError

SCHEMA_VERSION = "1"


def fmt_float(x: float, digits: int = 17) -> str:
    if not math.isfinite(x):
        raise DomainError(f"refusing to serialize non-finite value {x!r}")
    return f"{x:.{digits}g}"


def _simplify(value):
    """Normalize a value tree to str/int/float/bool/None/list."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, dict):
        return {str(k): _simplify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_simplify(v) for v in value]
    if hasattr(value, "item"):  # numpy scalars
        return _simplify(value.item())
    raise DomainError(f"cannot serialize value of type {type(value).__name__}")


def _to_json(value, digits: int) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return fmt_float(value, digits)
    if isinstance(value, str):
        escaped = (
            value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        )
        return f'"{escaped}"'
    if isinstance(value, list):
        return "[" + ",".join(_to_json(v, digits) for v in value) + "]"
    if isinstance(value, dict):
        items = sorted(value.items())
        return "{" + ",".join(f'"{k}":{_to_json(v, digits)}' for k, v in items) + "}"
    raise DomainError(f"cannot serialize value of type {type(value).__name__}")


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)
    schema_version: str = SCHEMA_VERSION

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": _simplify(self.inputs),
            "outputs": _simplify(self.outputs),
            "diagnostics": [str(d) for d in self.diagnostics],
            "schema_version": self.schema_version,
        }

    def to_json(self, digits: int = 17) -> str:
        return _to_json(self.as_dict(), digits)

    def to_csv(self, digits: int = 17) -> str:
        """Flat key,value rows (lists indexed, dicts dotted), LF endings."""
        rows: list[str] = ["key,value"]

        def emit(prefix: str, value):
            if isinstance(value, dict):
                for k in sorted(value):
                    emit(f"{prefix}.{k}" if prefix else str(k), value[k])
            elif isinstance(value, list):
                for i, v in enumerate(value):
                    emit(f"{prefix}[{i}]", v)
            else:
                if isinstance(value, float):
                    text = fmt_float(value, digits)
                elif isinstance(value, bool):
                    text = "true" if value else "false"
                elif value is None:
                    text = ""
                else:
                    text = str(value)
                if "," in text or '"' in text:
                    text = '"' + text.replace('"', '""') + '"'
                rows.append(f"{prefix},{text}")

        emit("", self.as_dict())
        return "\n".join(rows) + "\n"

    def to_human(self, digits: int = 7) -> str:
        lines = [f"command: {self.command}  (schema {self.schema_version})"]

        def emit(prefix: str, value, indent: int):
            pad = "  " * indent
            if isinstance(value, dict):
                lines.append(f"{pad}{prefix}:")
                for k in sorted(value):
                    emit(str(k), value[k], indent + 1)
            elif isinstance(value, list):
                if all(not isinstance(v, (dict, list)) for v in value):
                    body = ", ".join(
                        fmt_float(v, digits) if isinstance(v, float) else str(v)
                        for v in value
                    )
                    lines.append(f"{pad}{prefix}: [{body}]")
                else:
                    lines.append(f"{pad}{prefix}:")
                    for i, v in enumerate(value):
                        emit(f"[{i}]", v, indent + 1)
            elif isinstance(value, float):
                lines.append(f"{pad}{prefix}: {fmt_float(value, digits)}")
            else:
                lines.append(f"{pad}{prefix}: {value}")

        data = self.as_dict()
        emit("inputs", data["inputs"], 0)
        emit("outputs", data["outputs"], 0)
        if data["diagnostics"]:
            emit("diagnostics", data["diagnostics"], 0)
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json() + "\n"
        if fmt == "csv":
            return self.to_csv()
        if fmt == "human":
            return self.to_human()
        raise DomainError(f"unknown format {fmt!r}")
