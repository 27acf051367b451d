from __future__ import annotations

from typing import TYPE_CHECKING

import networkx as nx
from hypothesis import given, settings
from hypothesis.strategies import integers, sampled_from
from pytest import mark, param, raises

from gruenbaum.coloring import (
    FaceTwoColoring,
    face_two_color,
    is_proper_edge_coloring,
    verify_gruenbaum,
)
from gruenbaum.dual import TooLargeError, build_dual, heawood_graph, petersen_graph
from gruenbaum.generators import (
    find_knnn,
    flip_walk,
    k6_projective,
    k7_torus,
    platonic,
    torus_grid,
)
from gruenbaum.maps import from_faces, to_graph
from gruenbaum.search import (
    CONJECTURE_2B,
    BudgetExceededError,
    ColorCountError,
    NotDAngulationError,
    ScanRecord,
    chromatic_number,
    conjecture2_scan,
    edge_chromatic_exact,
    edge_chromatic_number,
    gruenbaum_exact,
    scan_map,
    three_coloring_parts,
    vertex_chromatic_exact,
)

if TYPE_CHECKING:
    from gruenbaum.maps import EmbeddedMap

_PYRAMID = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1), (1, 4, 3, 2)]
_THETA_FOUR = [(0, 2, 1, 3), (0, 3, 1, 4), (0, 4, 1, 2)]
_THETA_TEN = [
    (0, 2, 3, 4, 5, 1, 9, 8, 7, 6),
    (0, 6, 7, 8, 9, 1, 13, 12, 11, 10),
    (0, 10, 11, 12, 13, 1, 5, 4, 3, 2),
]


def _assert_searches_agree(map_: EmbeddedMap, d: int, /) -> None:
    dual = build_dual(map_)
    two = isinstance(face_two_color(dual), FaceTwoColoring)
    assert two is (vertex_chromatic_exact(dual.adjacency_graph(), 2) is not None)
    if dual.simple:
        found = gruenbaum_exact(map_, d)
        edge = edge_chromatic_exact(dual.simple_graph(), d)
        assert (found is None) is (edge is None)


class TestChromaticNumber:
    @mark.parametrize(
        ("graph", "expected"),
        [
            param(nx.empty_graph(3), 1, id="empty"),
            param(nx.cycle_graph(6), 2, id="even cycle"),
            param(nx.cycle_graph(7), 3, id="odd cycle"),
            param(petersen_graph(), 3, id="petersen"),
            param(heawood_graph(), 2, id="heawood"),
            param(nx.complete_graph(4), 4, id="k4"),
            param(nx.complete_graph(9), None, id="k9"),
        ],
    )
    def test_main(self, *, graph: nx.Graph, expected: int | None) -> None:
        assert chromatic_number(graph) == expected


class TestVertexChromaticExact:
    def test_main(self) -> None:
        graph = petersen_graph()
        coloring = vertex_chromatic_exact(graph, 3)
        assert coloring is not None
        assert all(coloring[u] != coloring[w] for u, w in graph.edges)
        assert set(coloring.values()) == {0, 1, 2}

    def test_unsat(self) -> None:
        assert vertex_chromatic_exact(petersen_graph(), 2) is None

    def test_loop(self) -> None:
        graph = nx.Graph([(0, 0), (0, 1)])
        assert vertex_chromatic_exact(graph, 3) is None

    @mark.parametrize("k", [param(0), param(9)])
    def test_error_colors(self, *, k: int) -> None:
        with raises(ColorCountError):
            _ = vertex_chromatic_exact(nx.cycle_graph(3), k)

    def test_error_too_large(self) -> None:
        with raises(TooLargeError):
            _ = vertex_chromatic_exact(nx.path_graph(65), 2)

    def test_error_budget(self) -> None:
        with raises(BudgetExceededError, match=r"budget of 5 nodes"):
            _ = vertex_chromatic_exact(nx.complete_graph(8), 7, budget=5)


class TestEdgeChromatic:
    @mark.parametrize(
        ("graph", "expected"),
        [
            param(petersen_graph(), 4, id="petersen"),
            param(heawood_graph(), 3, id="heawood"),
            param(nx.complete_graph(4), 3, id="k4"),
            param(nx.complete_graph(5), 5, id="k5"),
            param(nx.cycle_graph(5), 3, id="c5"),
            param(nx.empty_graph(2), 0, id="empty"),
        ],
    )
    def test_number(self, *, graph: nx.Graph, expected: int) -> None:
        assert edge_chromatic_number(graph) == expected

    def test_exact(self) -> None:
        graph = petersen_graph()
        assert edge_chromatic_exact(graph, 3) is None
        coloring = edge_chromatic_exact(graph, 4)
        assert coloring is not None
        edges = list(coloring)
        assert is_proper_edge_coloring(edges, [coloring[e] for e in edges])


class TestGruenbaumExact:
    @mark.parametrize(
        ("name", "d"),
        [
            param("tetrahedron", 3),
            param("cube", 4),
            param("icosahedron", 3),
        ],
    )
    def test_main(self, *, name: str, d: int) -> None:
        map_ = platonic(name)
        coloring = gruenbaum_exact(map_, d)
        assert coloring is not None
        assert verify_gruenbaum(map_, coloring, d).ok

    def test_projective_unsat(self) -> None:
        assert gruenbaum_exact(k6_projective(), 3) is None

    def test_error_budget(self) -> None:
        with raises(BudgetExceededError):
            _ = gruenbaum_exact(platonic("icosahedron"), 3, budget=1)

    def test_error_not_d_angulation(self) -> None:
        with raises(NotDAngulationError, match=r"Every face must have size 3"):
            _ = gruenbaum_exact(platonic("cube"), 3)


class TestThreeColoringParts:
    def test_main(self) -> None:
        map_ = platonic("octahedron")
        parts = three_coloring_parts(map_)
        assert parts is not None
        assert all(parts[u] != parts[w] for u, w in to_graph(map_).edges)

    def test_none(self) -> None:
        assert three_coloring_parts(platonic("icosahedron")) is None


class TestExactSearchesAgree:
    @mark.parametrize(
        ("map_", "d"),
        [
            param(k6_projective(), 3, id="k6"),
            param(k7_torus(), 3, id="k7"),
            param(platonic("octahedron"), 3, id="octahedron"),
            param(platonic("icosahedron"), 3, id="icosahedron"),
            param(platonic("cube"), 4, id="cube"),
            param(torus_grid(4, 4), 4, id="torus"),
            param(find_knnn(2), 3, id="knnn2"),
            param(find_knnn(3), 3, id="knnn3"),
        ],
    )
    def test_main(self, *, map_: EmbeddedMap, d: int) -> None:
        _assert_searches_agree(map_, d)

    @given(
        name=sampled_from(["octahedron", "icosahedron"]),
        seed=integers(min_value=0, max_value=1000),
    )
    @settings(max_examples=5, deadline=None)
    def test_flip_walks(self, *, name: str, seed: int) -> None:
        for map_ in flip_walk(platonic(name), 20, seed=seed):
            _assert_searches_agree(map_, 3)


class TestScanMap:
    def test_koenig(self) -> None:
        record = scan_map("octahedron", platonic("octahedron"))
        assert record.method == "koenig"
        assert record.face_chromatic == 2
        assert record.face_two_colorable is True
        assert record.gruenbaum is True
        assert record.flag is None
        assert not record.theorem_violation

    def test_projective(self) -> None:
        record = scan_map("k6", k6_projective())
        assert record.method == "exact"
        assert record.orientable is False
        assert record.euler_characteristic == 1
        assert record.face_chromatic == 3
        assert record.gruenbaum is False
        assert record.flag == CONJECTURE_2B

    @mark.parametrize(
        ("name", "method", "face_chromatic"),
        [
            param("tetrahedron", "exact", 4),
            param("cube", "exact", 3),
            param("icosahedron", "exact", 3),
        ],
    )
    def test_exact(self, *, name: str, method: str, face_chromatic: int) -> None:
        record = scan_map(name, platonic(name))
        assert record.method == method
        assert record.face_chromatic == face_chromatic
        assert record.gruenbaum is True
        assert record.flag is None

    def test_fallback(self) -> None:
        record = scan_map("k6", k6_projective(), budget=1)
        assert record.method == "fallback"
        assert record.gruenbaum is None
        assert record.face_chromatic is None
        assert record.fallback_colors == 4
        assert record.flag is None

    def test_not_triangulation_unflagged(self) -> None:
        record = scan_map("theta", from_faces(_THETA_FOUR))
        assert record.d == 4
        assert record.face_two_colorable is False
        assert record.face_chromatic == 3
        assert record.gruenbaum is False
        assert record.flag is None

    def test_too_many_colors(self) -> None:
        record = scan_map("theta", from_faces(_THETA_TEN))
        assert record.d == 10
        assert record.face_two_colorable is False
        assert record.method == "fallback"
        assert record.gruenbaum is None
        assert record.flag is None

    def test_skipped(self) -> None:
        record = scan_map("pyramid", from_faces(_PYRAMID))
        assert record.method == "skipped"
        assert record.error == "not a d-angulation"
        assert record.num_faces == 5


class TestConjecture2Scan:
    def test_main(self) -> None:
        corpus = [
            ("k6", k6_projective()),
            ("k7", k7_torus()),
            ("octahedron", platonic("octahedron")),
        ]
        report = conjecture2_scan(corpus)
        assert [r.name for r in report.records] == ["k6", "k7", "octahedron"]
        assert [r.name for r in report.flagged] == ["k6"]
        assert report.theorem_violations == ()
        assert report.counts_by_method == {"exact": 1, "koenig": 2}

    def test_empty(self) -> None:
        report = conjecture2_scan([])
        assert report.records == ()
        assert report.counts_by_method == {}

    def test_too_many_colors(self) -> None:
        corpus = [
            ("theta", from_faces(_THETA_TEN)),
            ("octahedron", platonic("octahedron")),
        ]
        report = conjecture2_scan(corpus)
        assert report.counts_by_method == {"fallback": 1, "koenig": 1}
        assert report.flagged == ()

    def test_workers(self) -> None:
        corpus = [("k6", k6_projective()), ("octahedron", platonic("octahedron"))]
        serial = conjecture2_scan(corpus, workers=1)
        parallel = conjecture2_scan(corpus, workers=2)
        assert parallel.records == serial.records

    def test_theorem_violation(self) -> None:
        record = ScanRecord(
            name="x", method="koenig", face_two_colorable=True, gruenbaum=False
        )
        assert record.theorem_violation

