"""Report containers and deterministic JSON/CSV emission.

Reports hold named check results, each carrying the tolerance it was
judged against.  Serialization is byte-stable: field order is fixed,
floats are printed with 17 significant digits (enough to round-trip a
double), and the timestamp is the only field that varies between
identical runs.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

FLOAT_FORMAT = ".17g"


def format_float(x):
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        raise ValueError("reports carry finite numbers only, got %r" % x)
    return format(x, FLOAT_FORMAT)


@dataclass(frozen=True)
class CheckResult:
    """One named value, the method that produced it, and its verdict."""

    name: str
    method: str
    value: float
    tolerance: float
    passed: bool


@dataclass
class Report:
    tool_version: str
    command: str
    timestamp: str
    inputs: dict
    results: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def add(self, name, method, value, tolerance, passed):
        self.results.append(
            CheckResult(name, method, float(value), float(tolerance),
                        bool(passed))
        )

    def warn(self, message):
        if message not in self.warnings:
            self.warnings.append(message)

    def to_mapping(self):
        return {
            "tool_version": self.tool_version,
            "command": self.command,
            "timestamp": self.timestamp,
            "inputs": dict(self.inputs),
            "results": [
                {
                    "name": r.name,
                    "method": r.method,
                    "value": r.value,
                    "tolerance": r.tolerance,
                    "passed": r.passed,
                }
                for r in self.results
            ],
            "warnings": list(self.warnings),
            "passed": self.passed,
        }


# json.dump cannot pin float formatting (it always emits repr), so the
# report schema is serialized by hand; insertion order is the schema
# order.

def _emit(obj, out, level):
    pad = "  " * level
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        last = len(obj) - 1
        for i, (key, val) in enumerate(obj.items()):
            if not isinstance(key, str):
                raise TypeError("report keys must be strings")
            out.append(pad + "  " + _quote(key) + ": ")
            _emit(val, out, level + 1)
            out.append(",\n" if i != last else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        last = len(obj) - 1
        for i, val in enumerate(obj):
            out.append(pad + "  ")
            _emit(val, out, level + 1)
            out.append(",\n" if i != last else "\n")
        out.append(pad + "]")
    elif isinstance(obj, str):
        out.append(_quote(obj))
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif obj is None:
        out.append("null")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    else:
        raise TypeError("cannot serialize %r" % type(obj))


_ESCAPES = {
    "\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t",
    "\b": "\\b", "\f": "\\f",
}


def _quote(s):
    parts = ['"']
    for ch in s:
        if ch in _ESCAPES:
            parts.append(_ESCAPES[ch])
        elif ord(ch) < 0x20:
            parts.append("\\u%04x" % ord(ch))
        else:
            parts.append(ch)
    parts.append('"')
    return "".join(parts)


def dumps(obj):
    out = []
    _emit(obj, out, 0)
    out.append("\n")
    return "".join(out)


def render_report(report):
    return dumps(report.to_mapping())


def write_profile_csv(stream, header, rows):
    """Rows of floats under the given header, 17 significant digits."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) for v in row])
