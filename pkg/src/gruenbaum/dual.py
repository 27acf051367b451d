from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, override

import networkx as nx
from utilities.inflect import counted_noun

from gruenbaum.constants import MAX_ISOMORPHISM_VERTICES
from gruenbaum.logging import LOGGER
from gruenbaum.maps import from_rotation, orient, trace_faces

if TYPE_CHECKING:
    from gruenbaum.maps import EmbeddedMap, Face
    from gruenbaum.types import EdgeId, FaceId


@dataclass(frozen=True, kw_only=True, slots=True)
class DualGraph:
    """The face adjacency multigraph of a map.

    Dual vertex ``f`` is ``faces[f]``; dual edge ``e`` crosses primal edge ``e``.
    """

    faces: tuple[Face, ...]
    edges: tuple[tuple[FaceId, FaceId, EdgeId], ...]

    @property
    def num_vertices(self) -> int:
        return len(self.faces)

    @property
    def incidence(self) -> tuple[tuple[EdgeId, ...], ...]:
        return tuple(f.edges for f in self.faces)

    @property
    def loops(self) -> tuple[EdgeId, ...]:
        return tuple(e for f, g, e in self.edges if f == g)

    @property
    def simple(self) -> bool:
        if len(self.loops) >= 1:
            return False
        pairs = Counter((min(f, g), max(f, g)) for f, g, _ in self.edges)
        return all(c == 1 for c in pairs.values())

    def degree(self, face: FaceId, /) -> int:
        return self.faces[face].size

    def across(self, face: FaceId, edge: EdgeId, /) -> FaceId:
        f, g, _ = self.edges[edge]
        return g if f == face else f

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.num_vertices))
        for f, g, e in self.edges:
            _ = graph.add_edge(f, g, key=e)
        return graph

    def adjacency_graph(self) -> nx.Graph:
        """Face adjacency with parallel edges merged; loops are kept."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.num_vertices))
        graph.add_edges_from((f, g) for f, g, _ in self.edges)
        return graph

    def simple_graph(self) -> nx.Graph:
        if not self.simple:
            raise NotSimpleDualError(loops=self.loops)
        return self.adjacency_graph()


##


@dataclass(kw_only=True, slots=True)
class DualError(Exception): ...


@dataclass(kw_only=True, slots=True)
class NotSimpleDualError(DualError):
    loops: tuple[EdgeId, ...]

    @override
    def __str__(self) -> str:
        return f"Dual must be simple; got loops across {self.loops} or parallel edges"


@dataclass(kw_only=True, slots=True)
class TooLargeError(DualError):
    what: str
    value: int
    maximum: int

    @override
    def __str__(self) -> str:
        return f"{self.what} must be at most {self.maximum}; got {self.value}"


##


def build_dual(map_: EmbeddedMap, /) -> DualGraph:
    faces = trace_faces(map_)
    sides: list[list[FaceId]] = [[] for _ in range(map_.num_edges)]
    for index, face in enumerate(faces):
        for edge in face.edges:
            sides[edge].append(index)
    dual = DualGraph(
        faces=faces, edges=tuple((f, g, e) for e, (f, g) in enumerate(sides))
    )
    if len(loops := dual.loops) >= 1:
        LOGGER.warning(
            "Dual has %s; primal edges %s have one face on both sides",
            counted_noun(loops, "loop"),
            loops,
        )
    elif not dual.simple:
        LOGGER.warning("Dual has parallel edges")
    return dual


def check_regularity(dual: DualGraph, d: int, /) -> bool:
    return all(dual.degree(f) == d for f in range(dual.num_vertices))


def dual_map(map_: EmbeddedMap, /) -> EmbeddedMap:
    """Re-embed the dual of an orientable map with a simple dual."""
    dual = build_dual(orient(map_))
    if not dual.simple:
        raise NotSimpleDualError(loops=dual.loops)
    return from_rotation({
        f: tuple(dual.across(f, e) for e in face.edges)
        for f, face in enumerate(dual.faces)
    })


##


def is_isomorphic(first: nx.Graph, second: nx.Graph, /) -> bool:
    for graph in [first, second]:
        if graph.number_of_nodes() > MAX_ISOMORPHISM_VERTICES:
            raise TooLargeError(
                what="Number of vertices",
                value=graph.number_of_nodes(),
                maximum=MAX_ISOMORPHISM_VERTICES,
            )
    degrees = [sorted(d for _, d in g.degree) for g in [first, second]]
    if degrees[0] != degrees[1]:
        return False
    return nx.is_isomorphic(first, second)


def petersen_graph() -> nx.Graph:
    return nx.petersen_graph()


def heawood_graph() -> nx.Graph:
    return nx.heawood_graph()


__all__ = [
    "DualError",
    "DualGraph",
    "NotSimpleDualError",
    "TooLargeError",
    "build_dual",
    "check_regularity",
    "dual_map",
    "heawood_graph",
    "is_isomorphic",
    "petersen_graph",
]
