from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import count
from math import inf
from typing import TYPE_CHECKING, override

from utilities.inflect import counted_noun

from gruenbaum.dual import check_regularity
from gruenbaum.logging import LOGGER
from gruenbaum.maps import NotTriangulationError, trace_faces, tree_cycle

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    import networkx as nx

    from gruenbaum.dual import DualGraph
    from gruenbaum.maps import EmbeddedMap
    from gruenbaum.types import Color, EdgeId, FaceColor, FaceId, Part, Vertex


@dataclass(frozen=True, kw_only=True, slots=True)
class FaceTwoColoring:
    color: tuple[FaceColor, ...]

    def faces(self, color: FaceColor, /) -> tuple[FaceId, ...]:
        return tuple(f for f, c in enumerate(self.color) if c == color)


@dataclass(frozen=True, kw_only=True, slots=True)
class OddCycle:
    """Faces forming a closed walk of odd length in the dual."""

    faces: tuple[FaceId, ...]


@dataclass(frozen=True, kw_only=True, slots=True)
class BipartiteGraph:
    """A bipartite multigraph; edge ``i`` joins ``edges[i][0]`` on the left to
    ``edges[i][1]`` on the right."""

    num_left: int
    num_right: int
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True, kw_only=True, slots=True)
class Matching:
    edges: tuple[int, ...]


@dataclass(frozen=True, kw_only=True, slots=True)
class OneFactorization:
    factor: tuple[int, ...]
    d: int

    def classes(self) -> tuple[tuple[EdgeId, ...], ...]:
        return tuple(
            tuple(e for e, f in enumerate(self.factor) if f == i) for i in range(self.d)
        )


@dataclass(frozen=True, kw_only=True, slots=True)
class EdgeColoring:
    """A color per primal edge, drawn from ``range(d)``."""

    color: tuple[Color, ...]
    d: int

    @property
    def num_colors_used(self) -> int:
        return len(set(self.color))


@dataclass(frozen=True, kw_only=True, slots=True)
class GruenbaumCheck:
    ok: bool
    face: FaceId | None = None
    colors: tuple[Color, ...] | None = None


##


@dataclass(kw_only=True, slots=True)
class ColoringError(Exception): ...


@dataclass(kw_only=True, slots=True)
class DisconnectedDualError(ColoringError):
    reached: int
    total: int

    @override
    def __str__(self) -> str:
        return f"Dual must be connected; reached {self.reached} of {self.total} faces"


@dataclass(kw_only=True, slots=True)
class UnequalPartsError(ColoringError):
    num_left: int
    num_right: int

    @override
    def __str__(self) -> str:
        return f"Parts must have equal sizes; got {self.num_left} and {self.num_right}"


@dataclass(kw_only=True, slots=True)
class NoPerfectMatchingError(ColoringError):
    """A left set ``violator`` whose neighborhood is smaller than itself."""

    violator: tuple[int, ...]
    neighborhood: tuple[int, ...]

    @override
    def __str__(self) -> str:
        return f"Hall's condition fails; left vertices {self.violator} only reach {self.neighborhood}"


@dataclass(kw_only=True, slots=True)
class NotRegularError(ColoringError):
    d: int

    @override
    def __str__(self) -> str:
        return f"Dual must be {self.d}-regular"


@dataclass(kw_only=True, slots=True)
class InternalContractError(ColoringError):
    detail: str

    @override
    def __str__(self) -> str:
        return f"Internal contract violated: {self.detail}"


@dataclass(kw_only=True, slots=True)
class ColoringSizeError(ColoringError):
    num_colors: int
    num_edges: int

    @override
    def __str__(self) -> str:
        return f"Coloring must have {self.num_edges} entries; got {self.num_colors}"


@dataclass(kw_only=True, slots=True)
class BadRangeError(ColoringError):
    edge: EdgeId
    color: Color
    d: int

    @override
    def __str__(self) -> str:
        return f"Edge {self.edge} has color {self.color}, outside 0..{self.d - 1}"


@dataclass(kw_only=True, slots=True)
class NotTripartiteError(ColoringError):
    ends: tuple[Vertex, Vertex]
    part: Part | None

    @override
    def __str__(self) -> str:
        if self.part is None:
            return f"Edge {self.ends} has an endpoint with no part"
        return f"Edge {self.ends} has both endpoints in part {self.part}"


##


def face_two_color(dual: DualGraph, /) -> FaceTwoColoring | OddCycle:
    """Two-color the faces by BFS from face 0, or return an odd dual cycle."""
    total = dual.num_vertices
    if total == 0:
        raise DisconnectedDualError(reached=0, total=0)
    side: dict[FaceId, int] = {0: 0}
    parent: dict[FaceId, FaceId] = {0: 0}
    depth: dict[FaceId, int] = {0: 0}
    queue = deque([0])
    while len(queue) >= 1:
        face = queue.popleft()
        for edge in sorted(dual.incidence[face]):
            other = dual.across(face, edge)
            if other not in side:
                side[other], parent[other], depth[other] = (
                    1 - side[face],
                    face,
                    depth[face] + 1,
                )
                queue.append(other)
            elif side[other] == side[face]:
                cycle = tree_cycle(parent, depth, face, other)
                LOGGER.debug("Dual has an odd cycle through faces %s", cycle)
                return OddCycle(faces=cycle)
    if len(side) < total:
        raise DisconnectedDualError(reached=len(side), total=total)
    return FaceTwoColoring(
        color=tuple("black" if side[f] == 0 else "white" for f in range(total))
    )


##


def perfect_matching(graph: BipartiteGraph, /) -> Matching:
    """A perfect matching by Hopcroft-Karp, as the matched edge of each left vertex."""
    if graph.num_left != graph.num_right:
        raise UnequalPartsError(num_left=graph.num_left, num_right=graph.num_right)
    matcher = _HopcroftKarp(graph)
    size = matcher.run()
    if size < graph.num_left:
        violator, neighborhood = matcher.hall_witness()
        raise NoPerfectMatchingError(violator=violator, neighborhood=neighborhood)
    return Matching(edges=tuple(e for e in matcher.match_left if e is not None))


class _HopcroftKarp:
    def __init__(self, graph: BipartiteGraph, /) -> None:
        super().__init__()
        self._edges = graph.edges
        self._adjacent: list[list[int]] = [[] for _ in range(graph.num_left)]
        for edge, (left, _) in enumerate(graph.edges):
            self._adjacent[left].append(edge)
        self.match_left: list[int | None] = [None] * graph.num_left
        self._match_right: list[int | None] = [None] * graph.num_right
        self._dist: list[float] = [inf] * graph.num_left
        self._found: float = inf

    def run(self) -> int:
        size = 0
        while self._bfs():
            for left in range(len(self._adjacent)):
                if (self.match_left[left] is None) and self._dfs(left):
                    size += 1
        return size

    def hall_witness(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Left vertices reachable by alternating paths from the free ones."""
        free = [v for v, e in enumerate(self.match_left) if e is None]
        reached_left, reached_right = set(free), set[int]()
        queue = deque(free)
        while len(queue) >= 1:
            left = queue.popleft()
            for edge in self._adjacent[left]:
                right = self._edges[edge][1]
                if right in reached_right:
                    continue
                reached_right.add(right)
                if (partner := self._match_right[right]) is not None:
                    other = self._edges[partner][0]
                    if other not in reached_left:
                        reached_left.add(other)
                        queue.append(other)
        return tuple(sorted(reached_left)), tuple(sorted(reached_right))

    def _bfs(self) -> bool:
        queue: deque[int] = deque()
        for left, edge in enumerate(self.match_left):
            if edge is None:
                self._dist[left] = 0
                queue.append(left)
            else:
                self._dist[left] = inf
        self._found = inf
        while len(queue) >= 1:
            left = queue.popleft()
            if self._dist[left] >= self._found:
                continue
            for edge in self._adjacent[left]:
                partner = self._match_right[self._edges[edge][1]]
                if partner is None:
                    self._found = min(self._found, self._dist[left] + 1)
                    continue
                other = self._edges[partner][0]
                if self._dist[other] == inf:
                    self._dist[other] = self._dist[left] + 1
                    queue.append(other)
        return self._found != inf

    def _dfs(self, left: int, /) -> bool:
        for edge in self._adjacent[left]:
            partner = self._match_right[self._edges[edge][1]]
            if partner is None:
                augments = self._found == self._dist[left] + 1
            else:
                other = self._edges[partner][0]
                augments = (self._dist[other] == self._dist[left] + 1) and self._dfs(
                    other
                )
            if augments:
                left_end, right_end = self._edges[edge]
                self.match_left[left_end] = edge
                self._match_right[right_end] = edge
                return True
        self._dist[left] = inf
        return False


##


def koenig_factorize(
    dual: DualGraph, coloring: FaceTwoColoring, d: int, /
) -> OneFactorization:
    """Split a d-regular bipartite dual into d perfect matchings."""
    if not check_regularity(dual, d):
        raise NotRegularError(d=d)
    black, white = coloring.faces("black"), coloring.faces("white")
    left = {f: i for i, f in enumerate(black)}
    right = {f: i for i, f in enumerate(white)}
    for f, g, e in dual.edges:
        if coloring.color[f] == coloring.color[g]:
            raise InternalContractError(
                detail=f"dual edge {e} joins two faces of the same color"
            )
    remaining = list(range(len(dual.edges)))
    factor = [-1] * len(dual.edges)
    for round_ in range(d):
        ends = tuple(
            (left[f], right[g]) if f in left else (left[g], right[f])
            for f, g, _ in (dual.edges[e] for e in remaining)
        )
        graph = BipartiteGraph(num_left=len(black), num_right=len(white), edges=ends)
        try:
            matching = perfect_matching(graph)
        except (NoPerfectMatchingError, UnequalPartsError) as error:
            raise InternalContractError(
                detail=f"round {round_} of {d}: {error}"
            ) from None
        chosen = {remaining[i] for i in matching.edges}
        for edge in chosen:
            factor[edge] = round_
        remaining = [e for e in remaining if e not in chosen]
        _check_residual(dual, remaining, d - round_ - 1)
        LOGGER.debug("Extracted one-factor %d of %d", round_ + 1, d)
    return OneFactorization(factor=tuple(factor), d=d)


def _check_residual(dual: DualGraph, remaining: Sequence[EdgeId], d: int, /) -> None:
    degrees = Counter(f for e in remaining for f in dual.edges[e][:2])
    for face in range(dual.num_vertices):
        if degrees[face] != d:
            raise InternalContractError(
                detail=f"residual degree of face {face} is {degrees[face]}, not {d}"
            )


def gruenbaum_from_factorization(
    map_: EmbeddedMap, factorization: OneFactorization, /
) -> EdgeColoring:
    if len(factorization.factor) != map_.num_edges:
        raise ColoringSizeError(
            num_colors=len(factorization.factor), num_edges=map_.num_edges
        )
    return EdgeColoring(color=factorization.factor, d=factorization.d)


def verify_gruenbaum(
    map_: EmbeddedMap, coloring: EdgeColoring, d: int, /
) -> GruenbaumCheck:
    """Check that every face has size d and its boundary carries all d colors."""
    if len(coloring.color) != map_.num_edges:
        raise ColoringSizeError(
            num_colors=len(coloring.color), num_edges=map_.num_edges
        )
    for edge, color in enumerate(coloring.color):
        if not (0 <= color < d):
            raise BadRangeError(edge=edge, color=color, d=d)
    for index, face in enumerate(trace_faces(map_)):
        colors = tuple(sorted(coloring.color[e] for e in face.edges))
        if (face.size != d) or (set(colors) != set(range(d))):
            return GruenbaumCheck(ok=False, face=index, colors=colors)
    return GruenbaumCheck(ok=True)


_PAIR_COLORS: dict[frozenset[str], Color] = {
    frozenset("AB"): 0,
    frozenset("BC"): 1,
    frozenset("AC"): 2,
}


def tripartite_gruenbaum(
    map_: EmbeddedMap, parts: Mapping[Vertex, Part], /
) -> EdgeColoring:
    """Color each edge of a tripartite triangulation by the parts it joins."""
    if any((f.size != 3) or not f.is_simple for f in trace_faces(map_)):
        raise NotTriangulationError
    colors: list[Color] = []
    for u, w in map_.edges:
        try:
            first, second = parts[u], parts[w]
        except KeyError:
            raise NotTripartiteError(ends=(u, w), part=None) from None
        if first == second:
            raise NotTripartiteError(ends=(u, w), part=first)
        colors.append(_PAIR_COLORS[frozenset({first, second})])
    return EdgeColoring(color=tuple(colors), d=3)


##


def vizing_fallback(dual: DualGraph, d: int, /) -> EdgeColoring:
    """A proper edge coloring of a simple dual with at most max(d, degree) + 1 colors."""
    graph = dual.simple_graph()
    colors = _MisraGries(graph).run()
    palette = max([d, *(dual.degree(f) for f in range(dual.num_vertices))]) + 1
    result = tuple(colors[min(f, g), max(f, g)] for f, g, _ in dual.edges)
    if not is_proper_edge_coloring([(f, g) for f, g, _ in dual.edges], result):
        raise InternalContractError(detail="edge coloring fallback is not proper")
    LOGGER.info(
        "Edge coloring fallback used %s", counted_noun(len(set(result)), "color")
    )
    return EdgeColoring(color=result, d=palette)


class _MisraGries:
    """Edge coloring with at most one color more than the maximum degree."""

    def __init__(self, graph: nx.Graph, /) -> None:
        super().__init__()
        self._edges = sorted((min(u, w), max(u, w)) for u, w in graph.edges)
        self._neighbors: dict[Vertex, list[Vertex]] = {
            v: sorted(graph[v]) for v in graph
        }
        self._color: dict[tuple[Vertex, Vertex], Color] = {}
        self._at: dict[Vertex, dict[Color, Vertex]] = {v: {} for v in graph}

    def run(self) -> dict[tuple[Vertex, Vertex], Color]:
        for u, w in self._edges:
            self._color_edge(u, w)
        return dict(sorted(self._color.items()))

    def _get(self, u: Vertex, w: Vertex, /) -> Color | None:
        return self._color.get((min(u, w), max(u, w)))

    def _set(self, u: Vertex, w: Vertex, color: Color, /) -> None:
        self._color[min(u, w), max(u, w)] = color
        self._at[u][color] = w
        self._at[w][color] = u

    def _unset(self, u: Vertex, w: Vertex, /) -> None:
        color = self._color.pop((min(u, w), max(u, w)))
        del self._at[u][color]
        del self._at[w][color]

    def _is_free(self, vertex: Vertex, color: Color, /) -> bool:
        return color not in self._at[vertex]

    def _first_free(self, vertex: Vertex, /) -> Color:
        return next(c for c in count() if self._is_free(vertex, c))

    def _fan(self, x: Vertex, first: Vertex, /) -> list[Vertex]:
        fan, used = [first], {first}
        extended = True
        while extended:
            extended = False
            for y in self._neighbors[x]:
                if y in used:
                    continue
                color = self._get(x, y)
                if (color is not None) and self._is_free(fan[-1], color):
                    fan.append(y)
                    used.add(y)
                    extended = True
                    break
        return fan

    def _is_fan(self, x: Vertex, fan: Sequence[Vertex], /) -> bool:
        for before, after in zip(fan, fan[1:], strict=False):
            color = self._get(x, after)
            if (color is None) or not self._is_free(before, color):
                return False
        return True

    def _invert_path(self, x: Vertex, c: Color, d: Color, /) -> None:
        path: list[tuple[Vertex, Vertex, Color]] = []
        vertex, color = x, d
        while (after := self._at[vertex].get(color)) is not None:
            path.append((vertex, after, color))
            vertex, color = after, (c if color == d else d)
        for u, w, _ in path:
            self._unset(u, w)
        for u, w, color in path:
            self._set(u, w, c if color == d else d)

    def _color_edge(self, x: Vertex, first: Vertex, /) -> None:
        fan = self._fan(x, first)
        c, d = self._first_free(x), self._first_free(fan[-1])
        if c != d:
            self._invert_path(x, c, d)
        try:
            w = next(
                i
                for i in range(len(fan))
                if self._is_fan(x, fan[: i + 1]) and self._is_free(fan[i], d)
            )
        except StopIteration:
            raise InternalContractError(
                detail=f"no fan rotation for edge {(x, first)}"
            ) from None
        shifted = [self._get(x, fan[j + 1]) for j in range(w)]
        for j in range(1, w + 1):
            self._unset(x, fan[j])
        for j, color in enumerate(shifted):
            if color is None:
                raise InternalContractError(detail=f"fan edge {(x, fan[j + 1])} is uncolored")
            self._set(x, fan[j], color)
        self._set(x, fan[w], d)


def is_proper_edge_coloring(
    edges: Sequence[tuple[Vertex, Vertex]], colors: Sequence[Color], /
) -> bool:
    seen: set[tuple[Vertex, Color]] = set()
    for (u, w), color in zip(edges, colors, strict=True):
        for vertex in {u, w}:
            if (vertex, color) in seen:
                return False
            seen.add((vertex, color))
    return True


__all__ = [
    "BadRangeError",
    "BipartiteGraph",
    "ColoringError",
    "ColoringSizeError",
    "DisconnectedDualError",
    "EdgeColoring",
    "FaceTwoColoring",
    "GruenbaumCheck",
    "InternalContractError",
    "Matching",
    "NoPerfectMatchingError",
    "NotRegularError",
    "NotTripartiteError",
    "OddCycle",
    "OneFactorization",
    "UnequalPartsError",
    "face_two_color",
    "gruenbaum_from_factorization",
    "is_proper_edge_coloring",
    "koenig_factorize",
    "perfect_matching",
    "tripartite_gruenbaum",
    "verify_gruenbaum",
    "vizing_fallback",
]
