from __future__ import annotations

from typing import TYPE_CHECKING

from pytest import mark, param, raises
from tomlkit import parse

from gruenbaum.coloring import EdgeColoring, FaceTwoColoring, OddCycle
from gruenbaum.dual import build_dual
from gruenbaum.formats import (
    ParseError,
    load_map,
    parse_map,
    parse_parts,
    render_check,
    render_coloring,
    render_dual,
    render_face_coloring,
    render_map,
    render_rotation,
    render_scan_table,
    render_scan_text,
)
from gruenbaum.generators import k6_projective, k7_torus, platonic
from gruenbaum.maps import (
    BadInvolutionError,
    EdgeMultiplicityError,
    canonical_faces,
    from_rotation,
    is_d_angulation,
    surface_info,
)
from gruenbaum.search import CONJECTURE_2B, ScanRecord, ScanReport

if TYPE_CHECKING:
    from pathlib import Path

    from gruenbaum.maps import EmbeddedMap
    from gruenbaum.types import MapFormat

_TRIANGLE = """
# rotation
0: 1 2
1: 2 0
2: 0 1
"""


class TestParseMap:
    def test_rotation(self) -> None:
        map_ = parse_map(_TRIANGLE)
        assert map_.num_vertices == 3
        assert map_.edges == ((0, 1), (0, 2), (1, 2))
        assert surface_info(map_).euler_characteristic == 2

    def test_comments(self) -> None:
        text = "# faces\n# the tetrahedron\n0 1 2\n0 2 3\n\n0 3 1\n1 3 2\n"
        assert canonical_faces(parse_map(text)) == canonical_faces(
            platonic("tetrahedron")
        )

    def test_load(self, *, tmp_path: Path) -> None:
        path = tmp_path.joinpath("triangle.txt")
        _ = path.write_text(_TRIANGLE)
        assert load_map(path) == parse_map(_TRIANGLE)

    def test_load_binary(self, *, tmp_path: Path) -> None:
        path = tmp_path.joinpath("binary.bin")
        _ = path.write_bytes(b"\xff\xfe\x00# faces\n")
        with raises(ParseError, match=r"not UTF-8 text") as exc_info:
            _ = load_map(path)
        assert exc_info.value.line == 1

    @mark.parametrize(
        ("text", "line", "match"),
        [
            param("", 1, r"file has no header", id="empty"),
            param("# spheres\n", 1, r"expected '# rotation' or '# faces'", id="header"),
            param("\n# rotation\n0: 1 x\n", 3, r"expected integers", id="integers"),
            param("# rotation\n0: 1 -2\n", 2, r"non-negative", id="negative"),
            param("# rotation\n~ 0\n0: 1\n1: 0\n", 2, r"expected '~ u v'", id="sign"),
            param("# rotation\n0 1: 2\n", 2, r"one vertex before", id="head"),
            param("# rotation\n0: 1\n0: 1\n1: 0\n", 3, r"listed twice", id="twice"),
            param(
                "# rotation\n0: 1 2\n1: 0\n", 2, r"neighbor 2 has no", id="neighbor"
            ),
            param("# rotation\n0 1 2\n", 2, r"expected 'v: n1", id="colon"),
            param("# rotation\n# only a comment\n", 2, r"no rotation lines", id="none"),
            param("# faces\n0 1 2\n0 1\n", 3, r"at least 3 vertices", id="short"),
            param("# faces\n", 1, r"no face lines", id="no faces"),
        ],
    )
    def test_error(self, *, text: str, line: int, match: str) -> None:
        with raises(ParseError, match=match) as exc_info:
            _ = parse_map(text)
        assert exc_info.value.line == line

    def test_validation_errors_pass_through(self) -> None:
        with raises(EdgeMultiplicityError):
            _ = parse_map("# faces\n0 1 2\n")
        with raises(BadInvolutionError):
            _ = parse_map("# rotation\n0: 1\n1: 2\n2: 1\n")


class TestRenderMap:
    @mark.parametrize(
        "map_",
        [
            param(platonic("cube"), id="cube"),
            param(k6_projective(), id="k6"),
            param(k7_torus(), id="k7"),
        ],
    )
    @mark.parametrize("format_", [param("rotation"), param("faces")])
    def test_main(self, *, map_: EmbeddedMap, format_: MapFormat) -> None:
        parsed = parse_map(render_map(map_, format_))
        assert canonical_faces(parsed) == canonical_faces(map_)
        assert surface_info(parsed) == surface_info(map_)

    def test_rotation(self) -> None:
        result = render_rotation(from_rotation({0: (1, 2), 1: (2, 0), 2: (0, 1)}))
        assert result == "# rotation\n0: 1 2\n1: 0 2\n2: 0 1\n"

    def test_negative_edges(self) -> None:
        lines = render_rotation(k6_projective()).splitlines()
        negative = [line for line in lines if line.startswith("~")]
        assert len(negative) == sum(1 for s in k6_projective().edge_sign if s < 0)
        assert len(negative) >= 1


class TestRenderDual:
    def test_main(self) -> None:
        dual = build_dual(parse_map(_TRIANGLE))
        lines = render_dual(dual).splitlines()
        assert lines[0] == "# dual"
        assert all(line.startswith("# face ") for line in lines[1:3])
        assert lines[3:] == ["0: 1 1 1", "1: 0 0 0"]

    def test_round_trip_degrees(self) -> None:
        dual = build_dual(platonic("cube"))
        lines = render_dual(dual).splitlines()[1 + dual.num_vertices :]
        assert len(lines) == 6
        assert all(len(line.split(":")[1].split()) == 4 for line in lines)


class TestRenderFaceColoring:
    def test_two_coloring(self) -> None:
        coloring = FaceTwoColoring(color=("black", "white"))
        assert render_face_coloring(coloring) == "0: black\n1: white\n"

    def test_odd_cycle(self) -> None:
        result = render_face_coloring(OddCycle(faces=(0, 3, 5)))
        assert result == "odd cycle: 0 3 5\n"


class TestRenderColoring:
    def test_main(self) -> None:
        map_ = parse_map(_TRIANGLE)
        coloring = EdgeColoring(color=(0, 1, 2), d=3)
        result = render_coloring(map_, coloring, method="koenig")
        assert result == "# coloring d=3 method=koenig\n0 1 : 0\n0 2 : 1\n1 2 : 2\n"

    def test_names(self) -> None:
        map_ = parse_map(_TRIANGLE)
        coloring = EdgeColoring(color=(2, 1, 0), d=3)
        result = render_coloring(
            map_, coloring, method="exact", names=["red", "green", "blue"]
        )
        assert result.splitlines()[1:] == ["0 1 : blue", "0 2 : green", "1 2 : red"]


class TestRenderCheck:
    @mark.parametrize(
        ("name", "d", "expected"),
        [
            param(
                "octahedron",
                3,
                [
                    "vertices: 6",
                    "edges: 12",
                    "faces: 8",
                    "euler_characteristic: 2",
                    "orientable: true",
                    "genus: 0",
                    "d: 3",
                    "d_angulation: true",
                    "three_connected: true",
                    "dual_simple: true",
                    "degree_parity: all even",
                ],
            ),
            param(
                "cube",
                3,
                [
                    "vertices: 8",
                    "edges: 12",
                    "faces: 6",
                    "euler_characteristic: 2",
                    "orientable: true",
                    "genus: 0",
                    "d: 3",
                    "d_angulation: false",
                    "three_connected: true",
                    "dual_simple: true",
                    "degree_parity: all odd",
                ],
            ),
        ],
    )
    def test_main(self, *, name: str, d: int, expected: list[str]) -> None:
        map_ = platonic(name)
        result = render_check(
            map_,
            surface_info(map_),
            is_d_angulation(map_, d),
            dual_simple=build_dual(map_).simple,
        )
        assert result.splitlines() == expected

    def test_small(self) -> None:
        map_ = parse_map(_TRIANGLE)
        result = render_check(
            map_, surface_info(map_), is_d_angulation(map_, 3), dual_simple=False
        )
        assert "three_connected: n/a" in result.splitlines()
        assert "dual_simple: false" in result.splitlines()


class TestParseParts:
    def test_main(self) -> None:
        text = "# parts\nA: 0 5\nB: 1 3\n\nC: 2 4\n"
        assert parse_parts(text) == {
            0: "A",
            1: "B",
            2: "C",
            3: "B",
            4: "C",
            5: "A",
        }

    @mark.parametrize(
        ("text", "match"),
        [
            param("D: 0 1\n", r"expected 'A: v1 v2"),
            param("A 0 1\n", r"expected 'A: v1 v2"),
            param("A: 0 1\nB: 1\n", r"vertex 1 is in two parts"),
            param("A: 0 x\n", r"expected integers"),
        ],
    )
    def test_error(self, *, text: str, match: str) -> None:
        with raises(ParseError, match=match):
            _ = parse_parts(text)


_REPORT = ScanReport(
    records=(
        ScanRecord(
            name="k6",
            method="exact",
            num_vertices=6,
            num_edges=15,
            num_faces=10,
            euler_characteristic=1,
            orientable=False,
            d=3,
            face_chromatic=3,
            face_two_colorable=False,
            gruenbaum=False,
            flag=CONJECTURE_2B,
        ),
        ScanRecord(name="pyramid", method="skipped", error="not a d-angulation"),
    )
)


class TestRenderScanText:
    def test_main(self) -> None:
        k6 = " ".join([
            "k6: V=6 E=15 F=10 chi=1 orientable=false d=3 face_chromatic=3",
            "gruenbaum=false method=exact flag='conjecture-2(b) tension'",
        ])
        assert render_scan_text(_REPORT).splitlines() == [
            k6,
            "pyramid: skipped (not a d-angulation)",
            "# maps: 2",
            "# methods: exact=1, skipped=1",
            "# flagged: 1",
            "# theorem violations: 0",
        ]

    def test_unknown_values(self) -> None:
        record = ScanRecord(
            name="big",
            method="fallback",
            num_vertices=40,
            num_edges=114,
            num_faces=76,
            euler_characteristic=2,
            orientable=True,
            d=3,
            fallback_colors=4,
        )
        line = render_scan_text(ScanReport(records=(record,))).splitlines()[0]
        assert "face_chromatic=? gruenbaum=?" in line
        assert line.endswith("method=fallback fallback_colors=4")


class TestRenderScanTable:
    def test_main(self) -> None:
        result = parse(render_scan_table(_REPORT)).unwrap()
        first, second = result["maps"]
        assert first["name"] == "k6"
        assert first["face_chromatic"] == 3
        assert first["orientable"] is False
        assert first["flag"] == CONJECTURE_2B
        assert "fallback_colors" not in first
        assert second == {
            "name": "pyramid",
            "method": "skipped",
            "error": "not a d-angulation",
        }
