from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, assert_never, cast, override

from tomlkit import aot, document, dumps, table

from gruenbaum.coloring import FaceTwoColoring, OddCycle
from gruenbaum.constants import (
    HEADER_COLORING,
    HEADER_DUAL,
    HEADER_FACES,
    HEADER_ROTATION,
)
from gruenbaum.maps import face_cycles, from_faces, from_rotation

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from gruenbaum.coloring import EdgeColoring
    from gruenbaum.dual import DualGraph
    from gruenbaum.maps import DAngulationReport, EmbeddedMap, SurfaceInfo
    from gruenbaum.search import ScanRecord, ScanReport
    from gruenbaum.types import MapFormat, Method, Part, Vertex


@dataclass(kw_only=True, slots=True)
class ParseError(Exception):
    line: int
    message: str

    @override
    def __str__(self) -> str:
        return f"Line {self.line}: {self.message}"


##


def load_map(path: Path, /) -> EmbeddedMap:
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as error:
        raise ParseError(line=1, message=f"not UTF-8 text ({error.reason})") from None
    return parse_map(text)


def parse_map(text: str, /) -> EmbeddedMap:
    lines = text.splitlines()
    for index, raw in enumerate(lines):
        header = raw.strip()
        if header == "":
            continue
        if header == HEADER_ROTATION:
            return _parse_rotation(lines, index + 1)
        if header == HEADER_FACES:
            return _parse_faces(lines, index + 1)
        raise ParseError(
            line=index + 1,
            message=f"expected {HEADER_ROTATION!r} or {HEADER_FACES!r}; got {header!r}",
        )
    raise ParseError(line=len(lines) + 1, message="file has no header")


def _body(lines: Sequence[str], start: int, /) -> list[tuple[int, str]]:
    body: list[tuple[int, str]] = []
    for number, raw in enumerate(lines[start:], start=start + 1):
        line = raw.strip()
        if (line != "") and not line.startswith("#"):
            body.append((number, line))
    return body


def _ints(number: int, text: str, /) -> tuple[int, ...]:
    try:
        values = tuple(int(t) for t in text.split())
    except ValueError:
        raise ParseError(line=number, message=f"expected integers; got {text!r}") from None
    if any(v < 0 for v in values):
        raise ParseError(line=number, message=f"labels must be non-negative; got {text!r}")
    return values


def _parse_rotation(lines: Sequence[str], start: int, /) -> EmbeddedMap:
    rotations: dict[Vertex, tuple[Vertex, ...]] = {}
    seen_at: dict[Vertex, int] = {}
    negative: list[tuple[Vertex, Vertex]] = []
    for number, line in _body(lines, start):
        if line.startswith("~"):
            ends = _ints(number, line[1:])
            if len(ends) != 2:
                raise ParseError(line=number, message="expected '~ u v'")
            negative.append((ends[0], ends[1]))
        elif ":" in line:
            head, _, tail = line.partition(":")
            head_ints = _ints(number, head)
            if len(head_ints) != 1:
                raise ParseError(line=number, message="expected one vertex before ':'")
            vertex = head_ints[0]
            if vertex in rotations:
                raise ParseError(line=number, message=f"vertex {vertex} listed twice")
            rotations[vertex] = _ints(number, tail)
            seen_at[vertex] = number
        else:
            raise ParseError(line=number, message="expected 'v: n1 n2 ...' or '~ u v'")
    if len(rotations) == 0:
        raise ParseError(line=len(lines), message="no rotation lines")
    for vertex, neighbors in rotations.items():
        for neighbor in neighbors:
            if neighbor not in rotations:
                raise ParseError(
                    line=seen_at[vertex],
                    message=f"neighbor {neighbor} has no rotation line",
                )
    return from_rotation(rotations, negative=negative)


def _parse_faces(lines: Sequence[str], start: int, /) -> EmbeddedMap:
    faces: list[tuple[Vertex, ...]] = []
    for number, line in _body(lines, start):
        face = _ints(number, line)
        if len(face) < 3:
            raise ParseError(
                line=number, message=f"a face needs at least 3 vertices; got {face}"
            )
        faces.append(face)
    if len(faces) == 0:
        raise ParseError(line=len(lines), message="no face lines")
    return from_faces(faces)


##


def render_map(map_: EmbeddedMap, format_: MapFormat, /) -> str:
    match format_:
        case "rotation":
            return render_rotation(map_)
        case "faces":
            return render_faces(map_)
        case never:
            assert_never(never)


def render_rotation(map_: EmbeddedMap, /) -> str:
    lines = [HEADER_ROTATION]
    lines.extend(
        f"{v}: {' '.join(map(str, map_.neighbors(v)))}"
        for v in range(map_.num_vertices)
    )
    lines.extend(
        f"~ {min(u, w)} {max(u, w)}"
        for (u, w), sign in zip(map_.edges, map_.edge_sign, strict=True)
        if sign < 0
    )
    return _join(lines)


def render_faces(map_: EmbeddedMap, /) -> str:
    lines = [HEADER_FACES]
    lines.extend(" ".join(map(str, c)) for c in face_cycles(map_))
    return _join(lines)


def render_dual(dual: DualGraph, /) -> str:
    lines = [HEADER_DUAL]
    lines.extend(
        f"# face {f}: {' '.join(map(str, face.vertices))}"
        for f, face in enumerate(dual.faces)
    )
    lines.extend(
        f"{f}: {' '.join(str(dual.across(f, e)) for e in face.edges)}"
        for f, face in enumerate(dual.faces)
    )
    return _join(lines)


def render_face_coloring(coloring: FaceTwoColoring | OddCycle, /) -> str:
    match coloring:
        case FaceTwoColoring():
            return _join([f"{f}: {c}" for f, c in enumerate(coloring.color)])
        case OddCycle():
            return _join([f"odd cycle: {' '.join(map(str, coloring.faces))}"])
        case never:
            assert_never(never)


def render_coloring(
    map_: EmbeddedMap,
    coloring: EdgeColoring,
    /,
    *,
    method: Method,
    names: Sequence[str] | None = None,
) -> str:
    lines = [f"{HEADER_COLORING} d={coloring.d} method={method}"]
    for (u, w), color in zip(map_.edges, coloring.color, strict=True):
        label = str(color) if names is None else names[color]
        lines.append(f"{u} {w} : {label}")
    return _join(lines)


def render_check(
    map_: EmbeddedMap,
    info: SurfaceInfo,
    report: DAngulationReport,
    /,
    *,
    dual_simple: bool,
) -> str:
    parities = {d % 2 for d in map_.degrees}
    match sorted(parities):
        case [0]:
            parity = "all even"
        case [1]:
            parity = "all odd"
        case _:
            parity = "mixed"
    three_connected = (
        "n/a" if report.three_connected is None else _bool(report.three_connected)
    )
    return _join([
        f"vertices: {map_.num_vertices}",
        f"edges: {map_.num_edges}",
        f"faces: {len(report.face_sizes)}",
        f"euler_characteristic: {info.euler_characteristic}",
        f"orientable: {_bool(info.orientable)}",
        f"genus: {info.genus}",
        f"d: {report.d}",
        f"d_angulation: {_bool(report.ok)}",
        f"three_connected: {three_connected}",
        f"dual_simple: {_bool(dual_simple)}",
        f"degree_parity: {parity}",
    ])


##


def parse_parts(text: str, /) -> dict[Vertex, Part]:
    """Read lines ``A: v1 v2 ...`` for the parts A, B and C."""
    parts: dict[Vertex, Part] = {}
    for number, line in _body(text.splitlines(), 0):
        head, sep, tail = line.partition(":")
        name = head.strip()
        if (sep == "") or (name not in {"A", "B", "C"}):
            raise ParseError(line=number, message="expected 'A: v1 v2 ...'")
        for vertex in _ints(number, tail):
            if vertex in parts:
                raise ParseError(
                    line=number, message=f"vertex {vertex} is in two parts"
                )
            parts[vertex] = cast("Part", name)
    return dict(sorted(parts.items()))


##


def render_scan_text(report: ScanReport, /) -> str:
    lines = [_scan_line(r) for r in report.records]
    counts = ", ".join(f"{m}={c}" for m, c in report.counts_by_method.items())
    lines.extend([
        f"# maps: {len(report.records)}",
        f"# methods: {counts}",
        f"# flagged: {len(report.flagged)}",
        f"# theorem violations: {len(report.theorem_violations)}",
    ])
    return _join(lines)


def _scan_line(record: ScanRecord, /) -> str:
    if record.error is not None:
        return f"{record.name}: skipped ({record.error})"
    fields = [
        f"V={record.num_vertices}",
        f"E={record.num_edges}",
        f"F={record.num_faces}",
        f"chi={record.euler_characteristic}",
        f"orientable={_optional(record.orientable)}",
        f"d={record.d}",
        f"face_chromatic={_optional(record.face_chromatic)}",
        f"gruenbaum={_optional(record.gruenbaum)}",
        f"method={record.method}",
    ]
    if record.fallback_colors is not None:
        fields.append(f"fallback_colors={record.fallback_colors}")
    if record.flag is not None:
        fields.append(f"flag={record.flag!r}")
    return f"{record.name}: {' '.join(fields)}"


def render_scan_table(report: ScanReport, /) -> str:
    doc = document()
    records = aot()
    for record in report.records:
        entry = table()
        entry["name"] = record.name
        entry["method"] = record.method
        for key, value in [
            ("vertices", record.num_vertices),
            ("edges", record.num_edges),
            ("faces", record.num_faces),
            ("euler_characteristic", record.euler_characteristic),
            ("orientable", record.orientable),
            ("d", record.d),
            ("face_chromatic", record.face_chromatic),
            ("face_two_colorable", record.face_two_colorable),
            ("gruenbaum", record.gruenbaum),
            ("fallback_colors", record.fallback_colors),
            ("flag", record.flag),
            ("error", record.error),
        ]:
            if value is not None:
                entry[key] = value
        records.append(entry)
    doc["maps"] = records
    return dumps(doc)


def _optional(value: bool | int | None, /) -> str:  # noqa: FBT001
    match value:
        case None:
            return "?"
        case bool():
            return _bool(value)
        case int():
            return str(value)
        case never:
            assert_never(never)


def _bool(value: bool, /) -> str:  # noqa: FBT001
    return "true" if value else "false"


def _join(lines: Sequence[str], /) -> str:
    return "\n".join(lines) + "\n"


__all__ = [
    "ParseError",
    "load_map",
    "parse_map",
    "parse_parts",
    "render_check",
    "render_coloring",
    "render_dual",
    "render_face_coloring",
    "render_faces",
    "render_map",
    "render_rotation",
    "render_scan_table",
    "render_scan_text",
]
