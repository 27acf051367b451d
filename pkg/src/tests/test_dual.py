from __future__ import annotations

import networkx as nx
from pytest import mark, param, raises

from gruenbaum.dual import (
    NotSimpleDualError,
    TooLargeError,
    build_dual,
    check_regularity,
    dual_map,
    heawood_graph,
    is_isomorphic,
    petersen_graph,
)
from gruenbaum.generators import k6_projective, k7_torus, platonic
from gruenbaum.maps import NotOrientableError, from_rotation, to_graph


class TestBuildDual:
    @mark.parametrize(
        ("name", "num_vertices", "d"),
        [
            param("tetrahedron", 4, 3),
            param("octahedron", 8, 3),
            param("cube", 6, 4),
            param("icosahedron", 20, 3),
            param("dodecahedron", 12, 5),
        ],
    )
    def test_main(self, *, name: str, num_vertices: int, d: int) -> None:
        map_ = platonic(name)
        dual = build_dual(map_)
        assert dual.num_vertices == num_vertices
        assert len(dual.edges) == map_.num_edges
        assert dual.simple
        assert check_regularity(dual, d)

    def test_edges_cross_their_primal_edge(self) -> None:
        map_ = platonic("cube")
        dual = build_dual(map_)
        for f, g, e in dual.edges:
            assert e in dual.faces[f].edges
            assert e in dual.faces[g].edges
            assert dual.across(f, e) == g

    def test_parallel_edges(self) -> None:
        dual = build_dual(from_rotation({0: (1, 2), 1: (2, 0), 2: (0, 1)}))
        assert dual.num_vertices == 2
        assert not dual.simple
        assert dual.loops == ()
        assert dual.to_networkx().number_of_edges() == 3
        with raises(NotSimpleDualError):
            _ = dual.simple_graph()


class TestDualIdentities:
    def test_petersen(self) -> None:
        dual = build_dual(k6_projective())
        assert is_isomorphic(dual.simple_graph(), petersen_graph())

    def test_heawood(self) -> None:
        dual = build_dual(k7_torus())
        assert is_isomorphic(dual.simple_graph(), heawood_graph())

    @mark.parametrize(
        ("name", "other"),
        [
            param("cube", "octahedron"),
            param("octahedron", "cube"),
            param("icosahedron", "dodecahedron"),
            param("tetrahedron", "tetrahedron"),
        ],
    )
    def test_platonic(self, *, name: str, other: str) -> None:
        dual = build_dual(platonic(name))
        assert is_isomorphic(dual.simple_graph(), to_graph(platonic(other)))


class TestDualMap:
    def test_main(self) -> None:
        map_ = dual_map(platonic("cube"))
        assert map_.num_vertices == 6
        assert is_isomorphic(to_graph(map_), to_graph(platonic("octahedron")))

    def test_twice(self) -> None:
        cube = platonic("cube")
        assert is_isomorphic(to_graph(dual_map(dual_map(cube))), to_graph(cube))

    def test_error_nonorientable(self) -> None:
        with raises(NotOrientableError):
            _ = dual_map(k6_projective())

    def test_error_not_simple(self) -> None:
        with raises(NotSimpleDualError):
            _ = dual_map(from_rotation({0: (1, 2), 1: (2, 0), 2: (0, 1)}))


class TestIsIsomorphic:
    def test_main(self) -> None:
        assert is_isomorphic(nx.cycle_graph(5), nx.cycle_graph([4, 2, 0, 3, 1]))

    def test_different(self) -> None:
        assert not is_isomorphic(petersen_graph(), heawood_graph())
        assert not is_isomorphic(nx.cycle_graph(6), nx.complete_bipartite_graph(3, 3))

    def test_error(self) -> None:
        with raises(TooLargeError, match=r"Number of vertices must be at most 64"):
            _ = is_isomorphic(nx.path_graph(65), nx.path_graph(65))
