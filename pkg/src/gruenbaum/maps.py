from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass, replace
from itertools import chain, combinations
from typing import TYPE_CHECKING, assert_never, override

import networkx as nx
from utilities.inflect import counted_noun
from utilities.iterables import one

from gruenbaum.logging import LOGGER

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence

    from gruenbaum.types import Dart, EdgeId, Vertex


@dataclass(frozen=True, kw_only=True, slots=True)
class EmbeddedMap:
    """A signed rotation system.

    Edge ``e`` owns the darts ``2e`` and ``2e + 1``, so the edge involution is
    ``dart ^ 1``. ``rotation`` sends each dart to the next dart around its
    owner; ``edge_sign`` holds +1 or -1 per edge.
    """

    num_vertices: int
    dart_owner: tuple[Vertex, ...]
    rotation: tuple[Dart, ...]
    edge_sign: tuple[int, ...]

    @property
    def num_darts(self) -> int:
        return len(self.dart_owner)

    @property
    def num_edges(self) -> int:
        return len(self.edge_sign)

    @property
    def edges(self) -> tuple[tuple[Vertex, Vertex], ...]:
        return tuple(self.edge_ends(e) for e in range(self.num_edges))

    @property
    def degrees(self) -> tuple[int, ...]:
        counts = Counter(self.dart_owner)
        return tuple(counts[v] for v in range(self.num_vertices))

    def degree(self, vertex: Vertex, /) -> int:
        return self.dart_owner.count(vertex)

    def edge_ends(self, edge: EdgeId, /) -> tuple[Vertex, Vertex]:
        return self.dart_owner[2 * edge], self.dart_owner[2 * edge + 1]

    def neighbors(self, vertex: Vertex, /) -> tuple[Vertex, ...]:
        return tuple(self.dart_owner[d ^ 1] for d in self.rotation_lists()[vertex])

    def rotation_lists(self) -> tuple[tuple[Dart, ...], ...]:
        """The darts around each vertex, in rotation order from the smallest."""
        firsts: dict[Vertex, Dart] = {}
        for dart, owner in enumerate(self.dart_owner):
            _ = firsts.setdefault(owner, dart)
        lists: list[tuple[Dart, ...]] = []
        for vertex in range(self.num_vertices):
            try:
                first = firsts[vertex]
            except KeyError:
                lists.append(())
                continue
            cycle = [first]
            dart = self.rotation[first]
            while dart != first:
                cycle.append(dart)
                dart = self.rotation[dart]
            lists.append(tuple(cycle))
        return tuple(lists)


@dataclass(frozen=True, kw_only=True, slots=True)
class Face:
    boundary: tuple[Dart, ...]
    vertices: tuple[Vertex, ...]

    @property
    def size(self) -> int:
        return len(self.boundary)

    @property
    def edges(self) -> tuple[EdgeId, ...]:
        return tuple(d // 2 for d in self.boundary)

    @property
    def is_simple(self) -> bool:
        return (self.size >= 3) and (len(set(self.vertices)) == self.size)


@dataclass(frozen=True, kw_only=True, slots=True)
class SurfaceInfo:
    euler_characteristic: int
    orientable: bool
    genus: int


@dataclass(frozen=True, kw_only=True, slots=True)
class DAngulationReport:
    d: int
    face_sizes: tuple[int, ...]
    nonsimple_faces: tuple[int, ...]
    three_connected: bool | None

    @property
    def ok(self) -> bool:
        return all(s == self.d for s in self.face_sizes) and (
            len(self.nonsimple_faces) == 0
        )


##


@dataclass(kw_only=True, slots=True)
class MapError(Exception): ...


@dataclass(kw_only=True, slots=True)
class EmptyMapError(MapError):
    @override
    def __str__(self) -> str:
        return "Map must have at least one vertex"


@dataclass(kw_only=True, slots=True)
class VertexLabelError(MapError):
    vertices: tuple[Vertex, ...]

    @override
    def __str__(self) -> str:
        return f"Vertices must be labelled 0, ..., {len(self.vertices) - 1}; got {self.vertices}"


@dataclass(kw_only=True, slots=True)
class IsolatedVertexError(MapError):
    vertex: Vertex

    @override
    def __str__(self) -> str:
        return f"Vertex {self.vertex} has no incident edges"


@dataclass(kw_only=True, slots=True)
class NonSimpleError(MapError):
    vertex: Vertex | None
    items: tuple[Vertex, ...]

    @override
    def __str__(self) -> str:
        if self.vertex is None:
            return f"Face {self.items} is not a simple cycle"
        return f"Vertex {self.vertex} has a loop or a repeated neighbor in {self.items}"


@dataclass(kw_only=True, slots=True)
class BadInvolutionError(MapError):
    vertex: Vertex
    neighbor: Vertex

    @override
    def __str__(self) -> str:
        return f"Vertex {self.vertex} lists {self.neighbor}, which does not list it back"


@dataclass(kw_only=True, slots=True)
class UnknownEdgeError(MapError):
    ends: tuple[Vertex, Vertex]

    @override
    def __str__(self) -> str:
        return f"{self.ends} is not an edge"


@dataclass(kw_only=True, slots=True)
class EdgeMultiplicityError(MapError):
    ends: tuple[Vertex, Vertex]
    count: int

    @override
    def __str__(self) -> str:
        return f"Edge {self.ends} must lie in exactly 2 faces; got {self.count}"


@dataclass(kw_only=True, slots=True)
class PinchedVertexError(MapError):
    vertex: Vertex

    @override
    def __str__(self) -> str:
        return f"The faces around vertex {self.vertex} do not link into a single cycle"


@dataclass(kw_only=True, slots=True)
class FaceTraceError(MapError):
    total: int
    expected: int

    @override
    def __str__(self) -> str:
        return f"Face sizes must sum to {self.expected}; got {self.total}"


@dataclass(kw_only=True, slots=True)
class TooSmallError(MapError):
    what: str
    value: int
    minimum: int

    @override
    def __str__(self) -> str:
        return f"{self.what} must be at least {self.minimum}; got {self.value}"


@dataclass(kw_only=True, slots=True)
class NotOrientableError(MapError):
    cycle: tuple[Vertex, ...]

    @override
    def __str__(self) -> str:
        return f"Map is not orientable; cycle {self.cycle} has negative sign product"


@dataclass(kw_only=True, slots=True)
class NotTriangulationError(MapError):
    @override
    def __str__(self) -> str:
        return "Map must be a triangulation with simple faces"


@dataclass(kw_only=True, slots=True)
class FlipBlockedError(MapError):
    edge: EdgeId
    reason: str

    @override
    def __str__(self) -> str:
        return f"Edge {self.edge} cannot be flipped: {self.reason}"


##


def from_rotation(
    rotations: Mapping[Vertex, Sequence[Vertex]],
    /,
    *,
    negative: Iterable[tuple[Vertex, Vertex]] = (),
) -> EmbeddedMap:
    if len(rotations) == 0:
        raise EmptyMapError
    vertices = tuple(sorted(rotations))
    if vertices != tuple(range(len(vertices))):
        raise VertexLabelError(vertices=vertices)
    lists = [tuple(rotations[v]) for v in vertices]
    for vertex, neighbors in enumerate(lists):
        if len(neighbors) == 0:
            raise IsolatedVertexError(vertex=vertex)
        if (vertex in neighbors) or (len(set(neighbors)) < len(neighbors)):
            raise NonSimpleError(vertex=vertex, items=neighbors)
        for neighbor in neighbors:
            if not (0 <= neighbor < len(lists)) or (vertex not in lists[neighbor]):
                raise BadInvolutionError(vertex=vertex, neighbor=neighbor)
    keys: set[tuple[Vertex, Vertex]] = set()
    for u, w in negative:
        if not (0 <= u < len(lists)) or (w not in lists[u]):
            raise UnknownEdgeError(ends=(u, w))
        keys.add(_edge_key(u, w))
    return _build_map(lists, keys)


def from_faces(faces: Iterable[Sequence[Vertex]], /) -> EmbeddedMap:
    cycles = [tuple(f) for f in faces]
    if len(cycles) == 0:
        raise EmptyMapError
    for cycle in cycles:
        if (len(cycle) < 3) or (len(set(cycle)) < len(cycle)) or (min(cycle) < 0):
            raise NonSimpleError(vertex=None, items=cycle)
    counts = Counter(
        _edge_key(c[i - 1], c[i]) for c in cycles for i in range(len(c))
    )
    for ends, count in sorted(counts.items()):
        if count != 2:
            raise EdgeMultiplicityError(ends=ends, count=count)
    num_vertices = max(max(c) for c in cycles) + 1
    corners: list[list[tuple[Vertex, Vertex]]] = [[] for _ in range(num_vertices)]
    for cycle in cycles:
        for i, vertex in enumerate(cycle):
            corners[vertex].append((cycle[i - 1], cycle[(i + 1) % len(cycle)]))
    rotations: list[tuple[Vertex, ...]] = []
    for vertex, corners_i in enumerate(corners):
        if len(corners_i) == 0:
            raise IsolatedVertexError(vertex=vertex)
        rotations.append(_link_cycle(vertex, corners_i))
    successor = [
        {n: r[(i + 1) % len(r)] for i, n in enumerate(r)} for r in rotations
    ]

    def local_sign(vertex: Vertex, before: Vertex, after: Vertex, /) -> int:
        return 1 if successor[vertex][before] == after else -1

    negative: set[tuple[Vertex, Vertex]] = set()
    for cycle in cycles:
        size = len(cycle)
        for i in range(size):
            x, y = cycle[i], cycle[(i + 1) % size]
            sign = local_sign(x, cycle[i - 1], y) * local_sign(
                y, x, cycle[(i + 2) % size]
            )
            if sign < 0:
                negative.add(_edge_key(x, y))
    return _build_map(rotations, negative)


def _link_cycle(
    vertex: Vertex, corners: Sequence[tuple[Vertex, Vertex]], /
) -> tuple[Vertex, ...]:
    by_neighbor: defaultdict[Vertex, list[int]] = defaultdict(list)
    for i, (before, after) in enumerate(corners):
        by_neighbor[before].append(i)
        by_neighbor[after].append(i)
    first, current = corners[0]
    order = [first]
    used = {0}
    while current != first:
        order.append(current)
        index = one(i for i in by_neighbor[current] if i not in used)
        used.add(index)
        before, after = corners[index]
        current = after if before == current else before
    if len(used) < len(corners):
        raise PinchedVertexError(vertex=vertex)
    return tuple(order)


def _build_map(
    rotations: Sequence[Sequence[Vertex]], negative: set[tuple[Vertex, Vertex]], /
) -> EmbeddedMap:
    edge_ids: dict[tuple[Vertex, Vertex], EdgeId] = {}
    darts: dict[tuple[Vertex, Vertex], Dart] = {}
    owners: list[Vertex] = []
    for vertex, neighbors in enumerate(rotations):
        for neighbor in neighbors:
            key = _edge_key(vertex, neighbor)
            if key not in edge_ids:
                edge = edge_ids[key] = len(edge_ids)
                darts[vertex, neighbor] = 2 * edge
                darts[neighbor, vertex] = 2 * edge + 1
                owners.extend([vertex, neighbor])
    rotation = [0] * len(owners)
    for vertex, neighbors in enumerate(rotations):
        for i, neighbor in enumerate(neighbors):
            after = neighbors[(i + 1) % len(neighbors)]
            rotation[darts[vertex, neighbor]] = darts[vertex, after]
    map_ = EmbeddedMap(
        num_vertices=len(rotations),
        dart_owner=tuple(owners),
        rotation=tuple(rotation),
        edge_sign=tuple(-1 if key in negative else 1 for key in edge_ids),
    )
    total = sum(f.size for f in trace_faces(map_))
    if total != map_.num_darts:
        raise FaceTraceError(total=total, expected=map_.num_darts)
    return map_


def _edge_key(u: Vertex, w: Vertex, /) -> tuple[Vertex, Vertex]:
    return (u, w) if u <= w else (w, u)


##


def trace_faces(map_: EmbeddedMap, /) -> tuple[Face, ...]:
    """Trace the faces of a signed rotation system.

    A walk state is a dart plus the local orientation at its owner; crossing a
    negative edge flips the orientation, and a flipped orientation steps with
    the inverse rotation. Each orbit is recorded together with its mirror, so
    every edge side is traced once.
    """
    inverse = [0] * map_.num_darts
    for dart, after in enumerate(map_.rotation):
        inverse[after] = dart
    seen: set[tuple[Dart, int]] = set()
    faces: list[Face] = []
    starts = chain(
        ((d, 1) for d in range(map_.num_darts)),
        ((d, -1) for d in range(map_.num_darts)),
    )
    for start in starts:
        if start in seen:
            continue
        boundary: list[Dart] = []
        dart, orientation = start
        while True:
            sign = map_.edge_sign[dart // 2]
            seen.add((dart, orientation))
            seen.add((dart ^ 1, -orientation * sign))
            boundary.append(dart)
            orientation *= sign
            twin = dart ^ 1
            dart = map_.rotation[twin] if orientation > 0 else inverse[twin]
            if (dart, orientation) == start:
                break
        faces.append(
            Face(
                boundary=tuple(boundary),
                vertices=tuple(map_.dart_owner[d] for d in boundary),
            )
        )
    nonsimple = [f for f in faces if not f.is_simple]
    if len(nonsimple) >= 1:
        LOGGER.warning(
            "Traced %s with a repeated vertex", counted_noun(nonsimple, "face")
        )
    return tuple(faces)


def canonical_cycle(cycle: Sequence[Vertex], /) -> tuple[Vertex, ...]:
    """The least rotation or reflection of a vertex cycle."""
    forward, backward = tuple(cycle), tuple(reversed(cycle))
    return min(
        c[i:] + c[:i] for c in (forward, backward) for i in range(len(cycle))
    )


def canonical_faces(map_: EmbeddedMap, /) -> tuple[tuple[Vertex, ...], ...]:
    return tuple(sorted(canonical_cycle(c) for c in face_cycles(map_)))


def face_cycles(map_: EmbeddedMap, /) -> tuple[tuple[Vertex, ...], ...]:
    return tuple(f.vertices for f in trace_faces(map_))


##


def surface_info(map_: EmbeddedMap, /) -> SurfaceInfo:
    euler = map_.num_vertices - map_.num_edges + len(trace_faces(map_))
    orientable = find_unbalanced_cycle(map_) is None
    genus = (2 - euler) // 2 if orientable else 2 - euler
    return SurfaceInfo(euler_characteristic=euler, orientable=orientable, genus=genus)


def find_unbalanced_cycle(map_: EmbeddedMap, /) -> tuple[Vertex, ...] | None:
    """A cycle with negative sign product, or None if the signs are balanced."""
    match _balance(map_):
        case dict():
            return None
        case tuple() as cycle:
            return cycle
        case never:
            assert_never(never)


def orient(map_: EmbeddedMap, /) -> EmbeddedMap:
    """Switch vertices until every edge sign is positive."""
    match _balance(map_):
        case dict() as switch:
            for vertex, value in sorted(switch.items()):
                if value < 0:
                    map_ = switch_vertex(map_, vertex)
            return map_
        case tuple() as cycle:
            raise NotOrientableError(cycle=cycle)
        case never:
            assert_never(never)


def _balance(map_: EmbeddedMap, /) -> dict[Vertex, int] | tuple[Vertex, ...]:
    lists = map_.rotation_lists()
    switch: dict[Vertex, int] = {}
    parent: dict[Vertex, Vertex] = {}
    depth: dict[Vertex, int] = {}
    for root in range(map_.num_vertices):
        if root in switch:
            continue
        switch[root], parent[root], depth[root] = 1, root, 0
        queue = deque([root])
        while len(queue) >= 1:
            u = queue.popleft()
            for dart in lists[u]:
                w = map_.dart_owner[dart ^ 1]
                wanted = switch[u] * map_.edge_sign[dart // 2]
                if w not in switch:
                    switch[w], parent[w], depth[w] = wanted, u, depth[u] + 1
                    queue.append(w)
                elif switch[w] != wanted:
                    return tree_cycle(parent, depth, u, w)
    return switch


def tree_cycle[T](
    parent: Mapping[T, T], depth: Mapping[T, int], u: T, w: T, /
) -> tuple[T, ...]:
    """The cycle closed by the non-tree edge ``u w`` of a BFS forest."""
    left, right = [u], [w]
    while depth[left[-1]] > depth[right[-1]]:
        left.append(parent[left[-1]])
    while depth[right[-1]] > depth[left[-1]]:
        right.append(parent[right[-1]])
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    return tuple(left + right[-2::-1])


def switch_vertex(map_: EmbeddedMap, vertex: Vertex, /) -> EmbeddedMap:
    darts = map_.rotation_lists()[vertex]
    rotation = list(map_.rotation)
    signs = list(map_.edge_sign)
    for i, dart in enumerate(darts):
        rotation[dart] = darts[i - 1]
        signs[dart // 2] *= -1
    return replace(map_, rotation=tuple(rotation), edge_sign=tuple(signs))


##


def is_d_angulation(map_: EmbeddedMap, d: int, /) -> DAngulationReport:
    if d < 3:
        raise TooSmallError(what="Face size", value=d, minimum=3)
    faces = trace_faces(map_)
    three_connected = is_3_connected(map_) if map_.num_vertices >= 4 else None
    if three_connected is False:
        LOGGER.warning("Graph is not 3-connected; the dual may fail to be simple")
    return DAngulationReport(
        d=d,
        face_sizes=tuple(f.size for f in faces),
        nonsimple_faces=tuple(i for i, f in enumerate(faces) if not f.is_simple),
        three_connected=three_connected,
    )


def is_3_connected(map_: EmbeddedMap, /) -> bool:
    if map_.num_vertices < 4:
        raise TooSmallError(
            what="Number of vertices", value=map_.num_vertices, minimum=4
        )
    graph = to_graph(map_)
    if not nx.is_connected(graph):
        return False
    for size in [1, 2]:
        for removed in combinations(range(map_.num_vertices), size):
            rest = graph.subgraph(set(graph) - set(removed))
            if not nx.is_connected(rest):
                return False
    return True


def degree_parities(map_: EmbeddedMap, /) -> dict[Vertex, int]:
    return {v: d % 2 for v, d in enumerate(map_.degrees)}


def all_degrees_even(map_: EmbeddedMap, /) -> bool:
    return all(p == 0 for p in degree_parities(map_).values())


def to_graph(map_: EmbeddedMap, /) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(map_.num_vertices))
    graph.add_edges_from(map_.edges)
    return graph


def find_edge(map_: EmbeddedMap, u: Vertex, w: Vertex, /) -> EdgeId:
    key = _edge_key(u, w)
    try:
        return next(e for e, ends in enumerate(map_.edges) if _edge_key(*ends) == key)
    except StopIteration:
        raise UnknownEdgeError(ends=(u, w)) from None


##


def flip_edge(map_: EmbeddedMap, edge: EdgeId, /) -> EmbeddedMap:
    if not (0 <= edge < map_.num_edges):
        raise FlipBlockedError(edge=edge, reason="no such edge")
    faces = trace_faces(map_)
    if any((f.size != 3) or not f.is_simple for f in faces):
        raise NotTriangulationError
    first, second = (i for i, f in enumerate(faces) for e in f.edges if e == edge)
    if first == second:
        raise FlipBlockedError(edge=edge, reason="same face on both sides")
    u, w = map_.edge_ends(edge)
    x, y, a = _rotate_to_edge(faces[first].vertices, u, w)
    b = one(v for v in faces[second].vertices if v not in {u, w})
    if (a == b) or (b in map_.neighbors(a)):
        raise FlipBlockedError(edge=edge, reason=f"diagonal {(a, b)} already present")
    LOGGER.debug("Flipping %s to %s", (u, w), (a, b))
    cycles = [f.vertices for i, f in enumerate(faces) if i not in {first, second}]
    cycles.extend([(x, b, a), (y, a, b)])
    return from_faces(cycles)


def _rotate_to_edge(
    triangle: tuple[Vertex, ...], u: Vertex, w: Vertex, /
) -> tuple[Vertex, Vertex, Vertex]:
    for i in range(3):
        x, y, a = (triangle[(i + j) % 3] for j in range(3))
        if {x, y} == {u, w}:
            return x, y, a
    msg = f"{(u, w)} is not an edge of {triangle}"
    raise ValueError(msg)


__all__ = [
    "BadInvolutionError",
    "DAngulationReport",
    "EdgeMultiplicityError",
    "EmbeddedMap",
    "EmptyMapError",
    "Face",
    "FaceTraceError",
    "FlipBlockedError",
    "IsolatedVertexError",
    "MapError",
    "NonSimpleError",
    "NotOrientableError",
    "NotTriangulationError",
    "PinchedVertexError",
    "SurfaceInfo",
    "TooSmallError",
    "UnknownEdgeError",
    "VertexLabelError",
    "all_degrees_even",
    "canonical_cycle",
    "canonical_faces",
    "degree_parities",
    "face_cycles",
    "find_edge",
    "find_unbalanced_cycle",
    "flip_edge",
    "from_faces",
    "from_rotation",
    "is_3_connected",
    "is_d_angulation",
    "orient",
    "surface_info",
    "switch_vertex",
    "to_graph",
    "trace_faces",
    "tree_cycle",
]
