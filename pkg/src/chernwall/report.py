"""Run reports: protobuf ``Struct`` for structured output, aligned lines for text output."""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import google.protobuf.struct_pb2 as structpb
from google.protobuf import json_format

from chernwall.vanish import Certificate

__all__ = [
    "REPORT_VERSION",
    "Report",
    "StageRecord",
    "from_struct",
    "parse_structured",
    "render",
    "render_structured",
    "render_text",
    "report_from_certificates",
    "to_struct",
]

REPORT_VERSION = "1"


@dataclass(frozen=True)
class StageRecord:
    name: str
    claimed: str
    computed: str
    match: bool
    ms: Optional[float] = None
    sign: int = 1
    stats: Mapping[str, int] = field(default_factory=dict)
    notes: Tuple[str, ...] = ()
    diff: Tuple[str, ...] = ()
    values: Mapping[str, str] = field(default_factory=dict)

    @classmethod
    def from_certificate(cls, certificate: Certificate) -> "StageRecord":
        return cls(
            name=certificate.stage,
            claimed=certificate.claimed,
            computed=certificate.computed,
            match=certificate.match,
            ms=certificate.elapsed_ms,
            sign=certificate.sign,
            stats=dict(certificate.stats),
            notes=tuple(certificate.notes),
            diff=tuple(str(d) for d in certificate.diff),
            values=dict(certificate.values),
        )


@dataclass(frozen=True)
class Report:
    """
    Attributes
    ----
    version     Report schema version.
    command     The command line that produced the report.
    stages      Verification records; empty for table commands.
    summary     Headline results by name.
    rows        Table rows for the stability commands.
    """

    version: str
    command: str
    stages: Tuple[StageRecord, ...] = ()
    summary: Mapping[str, str] = field(default_factory=dict)
    rows: Tuple[Mapping[str, str], ...] = ()

    @property
    def ok(self) -> bool:
        return all(s.match for s in self.stages)


def report_from_certificates(command: str, certificates: Sequence[Certificate]) -> Report:
    stages = tuple(StageRecord.from_certificate(c) for c in certificates)
    summary: Dict[str, str] = {
        "stages": str(len(stages)),
        "failed": ", ".join(s.name for s in stages if not s.match) or "none",
        "status": "ok" if all(s.match for s in stages) else "failed",
    }
    for s in stages:
        for key, value in s.values.items():
            summary[f"{s.name}.{key}"] = value
    return Report(version=REPORT_VERSION, command=command, stages=stages, summary=summary)


def _as_plain(report: Report) -> Dict[str, Any]:
    return {
        "version": report.version,
        "command": report.command,
        "stages": [
            {
                "name": s.name,
                "claimed": s.claimed,
                "computed": s.computed,
                "match": s.match,
                "ms": s.ms,
                "sign": s.sign,
                "stats": dict(s.stats),
                "notes": list(s.notes),
                "diff": list(s.diff),
                "values": dict(s.values),
            }
            for s in report.stages
        ],
        "summary": dict(report.summary),
        "rows": [dict(r) for r in report.rows],
    }


def to_struct(report: Report) -> structpb.Struct:
    plain = _as_plain(report)
    try:
        json.dumps(plain)
    except (TypeError, ValueError) as error:
        raise TypeError("Report is not JSON serializable") from error
    return serialize_value(plain).struct_value


def serialize_value(value: object) -> structpb.Value:
    # `Mapping` is not a `Sequence` but `str` is, so mappings and strings go first
    if isinstance(value, Mapping):
        struct_value = structpb.Struct()
        for k, v in value.items():
            struct_value.fields[k].CopyFrom(serialize_value(v))
        return structpb.Value(struct_value=struct_value)
    elif isinstance(value, str):
        return structpb.Value(string_value=value)
    elif isinstance(value, Sequence):
        list_value = structpb.ListValue(values=(serialize_value(v) for v in value))
        return structpb.Value(list_value=list_value)
    # `bool` is subclass of `int` so this check must come first
    elif isinstance(value, bool):
        return structpb.Value(bool_value=value)
    elif isinstance(value, (int, float)):
        return structpb.Value(number_value=float(value))
    elif value is None:
        return structpb.Value(null_value=structpb.NullValue.NULL_VALUE)
    else:
        raise TypeError(f"Cannot serialize {type(value).__name__} into a report")


def from_struct(struct: structpb.Struct) -> Report:
    plain = json_format.MessageToDict(struct)
    stages = tuple(
        StageRecord(
            name=s["name"],
            claimed=s["claimed"],
            computed=s["computed"],
            match=bool(s["match"]),
            ms=None if s.get("ms") is None else float(s["ms"]),
            sign=int(s.get("sign", 1)),
            stats={k: int(v) for k, v in s.get("stats", {}).items()},
            notes=tuple(s.get("notes", [])),
            diff=tuple(s.get("diff", [])),
            values=dict(s.get("values", {})),
        )
        for s in plain.get("stages", [])
    )
    return Report(
        version=plain["version"],
        command=plain["command"],
        stages=stages,
        summary=dict(plain.get("summary", {})),
        rows=tuple(dict(r) for r in plain.get("rows", [])),
    )


def render_structured(report: Report) -> str:
    return json_format.MessageToJson(to_struct(report), sort_keys=True, indent=2) + "\n"


def parse_structured(text: str) -> Report:
    return from_struct(json_format.Parse(text, structpb.Struct()))


def _field(label: str, value: str) -> List[str]:
    # multi-line values start on their own line, indented under the label
    if "\n" not in value:
        return [f"      {label}{value}"]
    return [f"      {label.rstrip()}", *(f"        {line}" for line in value.split("\n"))]


def render_text(report: Report) -> str:
    lines: List[str] = [f"chernwall report v{report.version}: {report.command}"]
    if report.stages:
        width = max(len(s.name) for s in report.stages)
        for s in report.stages:
            verdict = "match" if s.match else "MISMATCH"
            timing = "" if s.ms is None else f"  {s.ms!r} ms"
            sign = "" if s.sign == 1 else f"  sign {s.sign}"
            lines.append(f"  {s.name:<{width}}  {verdict}{sign}{timing}")
            lines.extend(_field("claimed: ", s.claimed))
            lines.extend(_field("computed: ", s.computed))
            if s.stats:
                stats = ", ".join(f"{k}={s.stats[k]}" for k in sorted(s.stats))
                lines.append(f"      stats: {stats}")
            for key in sorted(s.values):
                lines.extend(_field(f"{key} = ", s.values[key]))
            for note in s.notes:
                lines.extend(_field("note: ", note))
            for d in s.diff:
                lines.extend(_field("diff: ", d))
    for row in report.rows:
        inline = {k: v for k, v in row.items() if "\n" not in v}
        lines.append("  " + "  ".join(f"{k}={v}" for k, v in inline.items()))
        for key, value in row.items():
            if key not in inline:
                lines.extend(_field(f"{key}: ", value))
    if report.summary:
        width = max(len(k) for k in report.summary)
        for key in sorted(report.summary):
            lines.append(f"{key:<{width}}  {report.summary[key]}")
    return "\n".join(lines) + "\n"


def render(report: Report, output_format: str) -> str:
    if output_format == "structured":
        return render_structured(report)
    return render_text(report)
