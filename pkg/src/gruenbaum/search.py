from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import partial
from multiprocessing import get_context
from time import perf_counter
from typing import TYPE_CHECKING, assert_never, override

import networkx as nx
from utilities.inflect import counted_noun

from gruenbaum.coloring import (
    DisconnectedDualError,
    EdgeColoring,
    FaceTwoColoring,
    OddCycle,
    face_two_color,
    gruenbaum_from_factorization,
    koenig_factorize,
    tripartite_gruenbaum,
    verify_gruenbaum,
    vizing_fallback,
)
from gruenbaum.constants import (
    MAX_COLORS,
    MAX_EXACT_EDGES,
    MAX_EXACT_VERTICES,
)
from gruenbaum.dual import NotSimpleDualError, TooLargeError, build_dual
from gruenbaum.logging import LOGGER
from gruenbaum.maps import surface_info, to_graph, trace_faces
from gruenbaum.settings import SETTINGS

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from gruenbaum.dual import DualGraph
    from gruenbaum.maps import EmbeddedMap
    from gruenbaum.types import Color, Method, Part, Vertex


CONJECTURE_2A = "conjecture-2(a) tension"
CONJECTURE_2B = "conjecture-2(b) tension"
THEOREM_VIOLATION = "theorem-2 violation"


@dataclass(frozen=True, kw_only=True, slots=True)
class ScanRecord:
    name: str
    method: Method
    num_vertices: int | None = None
    num_edges: int | None = None
    num_faces: int | None = None
    euler_characteristic: int | None = None
    orientable: bool | None = None
    d: int | None = None
    face_chromatic: int | None = None
    face_two_colorable: bool | None = None
    gruenbaum: bool | None = None
    fallback_colors: int | None = None
    flag: str | None = None
    error: str | None = None
    elapsed: float = field(default=0.0, compare=False)

    @property
    def theorem_violation(self) -> bool:
        return (self.face_two_colorable is True) and (self.gruenbaum is False)


@dataclass(frozen=True, kw_only=True, slots=True)
class ScanReport:
    records: tuple[ScanRecord, ...]

    @property
    def flagged(self) -> tuple[ScanRecord, ...]:
        return tuple(r for r in self.records if r.flag is not None)

    @property
    def theorem_violations(self) -> tuple[ScanRecord, ...]:
        return tuple(r for r in self.records if r.theorem_violation)

    @property
    def counts_by_method(self) -> dict[Method, int]:
        return dict(sorted(Counter(r.method for r in self.records).items()))

    @property
    def elapsed(self) -> float:
        return sum(r.elapsed for r in self.records)


##


@dataclass(kw_only=True, slots=True)
class SearchError(Exception): ...


@dataclass(kw_only=True, slots=True)
class BudgetExceededError(SearchError):
    nodes: int
    budget: int

    @override
    def __str__(self) -> str:
        return f"Search exceeded its budget of {self.budget} nodes"


@dataclass(kw_only=True, slots=True)
class ColorCountError(SearchError):
    k: int

    @override
    def __str__(self) -> str:
        return f"Number of colors must be between 1 and {MAX_COLORS}; got {self.k}"


@dataclass(kw_only=True, slots=True)
class NotDAngulationError(SearchError):
    d: int

    @override
    def __str__(self) -> str:
        return f"Every face must have size {self.d}"


class _Budget:
    def __init__(self, budget: int, /) -> None:
        super().__init__()
        self._budget = budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self._budget:
            raise BudgetExceededError(nodes=self.nodes, budget=self._budget)


##


def vertex_chromatic_exact(
    graph: nx.Graph, k: int, /, *, budget: int = SETTINGS.budget
) -> dict[Vertex, Color] | None:
    """A proper k-coloring of the vertices, or None if none exists."""
    _check_colors(k)
    _check_size(graph.number_of_nodes(), graph.number_of_edges())
    if nx.number_of_selfloops(graph) >= 1:
        return None
    order = _vertex_order(graph)
    neighbors = {v: set(graph[v]) for v in graph}
    coloring: dict[Vertex, Color] = {}
    counter = _Budget(budget)

    def extend(index: int, used: int, /) -> bool:
        counter.tick()
        if index == len(order):
            return True
        vertex = order[index]
        forbidden = {coloring[n] for n in neighbors[vertex] if n in coloring}
        for color in range(min(used + 1, k)):
            if color in forbidden:
                continue
            coloring[vertex] = color
            if extend(index + 1, max(used, color + 1)):
                return True
            del coloring[vertex]
        return False

    found = extend(0, 0)
    LOGGER.debug(
        "Vertex %d-coloring search explored %s", k, counted_noun(counter.nodes, "node")
    )
    return dict(sorted(coloring.items())) if found else None


def _vertex_order(graph: nx.Graph, /) -> list[Vertex]:
    """Most colored neighbors first, then highest degree, then lowest label."""
    remaining = set(graph)
    placed: set[Vertex] = set()
    order: list[Vertex] = []
    while len(remaining) >= 1:
        vertex = min(
            remaining,
            key=lambda v: (-len(placed & set(graph[v])), -graph.degree(v), v),
        )
        order.append(vertex)
        placed.add(vertex)
        remaining.remove(vertex)
    return order


def chromatic_number(
    graph: nx.Graph, /, *, lower: int = 1, budget: int = SETTINGS.budget
) -> int | None:
    """The least k up to the color cap admitting a proper vertex coloring."""
    for k in range(max(lower, 1), MAX_COLORS + 1):
        if vertex_chromatic_exact(graph, k, budget=budget) is not None:
            return k
    return None


##


def edge_chromatic_exact(
    graph: nx.Graph, k: int, /, *, budget: int = SETTINGS.budget
) -> dict[tuple[Vertex, Vertex], Color] | None:
    """A proper k-edge-coloring of a simple graph, or None if none exists."""
    _check_colors(k)
    _check_size(graph.number_of_nodes(), graph.number_of_edges())
    index = {v: i for i, v in enumerate(sorted(graph))}
    edges = sorted((min(u, w), max(u, w)) for u, w in graph.edges)
    colors = _edge_color_search(
        len(index), [(index[u], index[w]) for u, w in edges], k, budget
    )
    return None if colors is None else dict(zip(edges, colors, strict=True))


def edge_chromatic_number(
    graph: nx.Graph, /, *, budget: int = SETTINGS.budget
) -> int | None:
    """The chromatic index of a simple graph: its maximum degree or one more."""
    max_degree = max((d for _, d in graph.degree), default=0)
    if max_degree == 0:
        return 0
    if max_degree > MAX_COLORS:
        return None
    if edge_chromatic_exact(graph, max_degree, budget=budget) is not None:
        return max_degree
    return max_degree + 1


def gruenbaum_exact(
    map_: EmbeddedMap, d: int, /, *, budget: int = SETTINGS.budget
) -> EdgeColoring | None:
    """Search for a d-edge-coloring whose faces all see d distinct colors.

    This is a proper d-edge-coloring of the dual multigraph, searched over the
    dual edges so that parallel edges are kept distinct.
    """
    _check_colors(d)
    if any(f.size != d for f in trace_faces(map_)):
        raise NotDAngulationError(d=d)
    dual = build_dual(map_)
    _check_size(dual.num_vertices, len(dual.edges))
    colors = _edge_color_search(
        dual.num_vertices, [(f, g) for f, g, _ in dual.edges], d, budget
    )
    return None if colors is None else EdgeColoring(color=tuple(colors), d=d)


def _edge_color_search(
    num_vertices: int, edges: Sequence[tuple[int, int]], k: int, budget: int, /
) -> list[Color] | None:
    if any(u == w for u, w in edges):
        return None
    incident: list[list[int]] = [[] for _ in range(num_vertices)]
    for edge, (u, w) in enumerate(edges):
        incident[u].append(edge)
        incident[w].append(edge)
    if any(len(i) > k for i in incident):
        return None
    adjacent = [
        sorted({x for v in edges[e] for x in incident[v]} - {e})
        for e in range(len(edges))
    ]
    order = _edge_order(adjacent)
    colors = [-1] * len(edges)
    counter = _Budget(budget)

    def extend(index: int, used: int, /) -> bool:
        counter.tick()
        if index == len(order):
            return True
        edge = order[index]
        forbidden = {colors[x] for x in adjacent[edge] if colors[x] >= 0}
        for color in range(min(used + 1, k)):
            if color in forbidden:
                continue
            colors[edge] = color
            if extend(index + 1, max(used, color + 1)):
                return True
            colors[edge] = -1
        return False

    found = extend(0, 0)
    LOGGER.debug(
        "Edge %d-coloring search explored %s", k, counted_noun(counter.nodes, "node")
    )
    return colors if found else None


def _edge_order(adjacent: Sequence[Sequence[int]], /) -> list[int]:
    """Edges with the most already-placed neighbors first, ties to the lowest id."""
    placed: set[int] = set()
    order: list[int] = []
    remaining = set(range(len(adjacent)))
    while len(remaining) >= 1:
        edge = min(remaining, key=lambda e: (-len(placed.intersection(adjacent[e])), e))
        order.append(edge)
        placed.add(edge)
        remaining.remove(edge)
    return order


def _check_colors(k: int, /) -> None:
    if not (1 <= k <= MAX_COLORS):
        raise ColorCountError(k=k)


def _check_size(num_vertices: int, num_edges: int, /) -> None:
    if num_vertices > MAX_EXACT_VERTICES:
        raise TooLargeError(
            what="Number of vertices", value=num_vertices, maximum=MAX_EXACT_VERTICES
        )
    if num_edges > MAX_EXACT_EDGES:
        raise TooLargeError(
            what="Number of edges", value=num_edges, maximum=MAX_EXACT_EDGES
        )


##


def three_coloring_parts(
    map_: EmbeddedMap, /, *, budget: int = SETTINGS.budget
) -> dict[Vertex, Part] | None:
    """Parts A, B, C from a proper vertex 3-coloring of the primal graph."""
    coloring = vertex_chromatic_exact(to_graph(map_), 3, budget=budget)
    if coloring is None:
        return None
    names: tuple[Part, Part, Part] = ("A", "B", "C")
    return {v: names[c] for v, c in coloring.items()}


def scan_map(
    name: str, map_: EmbeddedMap, /, *, budget: int = SETTINGS.budget
) -> ScanRecord:
    start = perf_counter()
    record = _scan_map(name, map_, budget=budget)
    return replace(record, elapsed=perf_counter() - start)


def _scan_map(name: str, map_: EmbeddedMap, /, *, budget: int) -> ScanRecord:
    info = surface_info(map_)
    faces = trace_faces(map_)
    record = ScanRecord(
        name=name,
        method="skipped",
        num_vertices=map_.num_vertices,
        num_edges=map_.num_edges,
        num_faces=len(faces),
        euler_characteristic=info.euler_characteristic,
        orientable=info.orientable,
    )
    sizes = {f.size for f in faces}
    if (len(sizes) != 1) or any(not f.is_simple for f in faces):
        return replace(record, error="not a d-angulation")
    d = sizes.pop()
    record = replace(record, d=d)
    dual = build_dual(map_)
    try:
        two = face_two_color(dual)
    except DisconnectedDualError as error:
        return replace(record, error=str(error))
    match two:
        case FaceTwoColoring():
            coloring = gruenbaum_from_factorization(
                map_, koenig_factorize(dual, two, d)
            )
            ok = verify_gruenbaum(map_, coloring, d).ok
            record = replace(
                record,
                method="koenig",
                face_chromatic=2,
                face_two_colorable=True,
                gruenbaum=ok,
            )
            if not ok:
                LOGGER.error("%s: face 2-colorable but no Gruenbaum coloring", name)
                return replace(record, flag=THEOREM_VIOLATION)
            return record
        case OddCycle():
            record = replace(
                record,
                face_two_colorable=False,
                face_chromatic=_face_chromatic(dual, budget=budget),
            )
            record = _scan_odd(record, map_, dual, d, budget=budget)
            return replace(record, flag=_flag(record))
        case never:
            assert_never(never)


def _scan_odd(
    record: ScanRecord, map_: EmbeddedMap, dual: DualGraph, d: int, /, *, budget: int
) -> ScanRecord:
    if d == 3:
        try:
            parts = three_coloring_parts(map_, budget=budget)
        except (BudgetExceededError, TooLargeError):
            parts = None
        if parts is not None:
            coloring = tripartite_gruenbaum(map_, parts)
            return replace(
                record,
                method="tripartite",
                gruenbaum=verify_gruenbaum(map_, coloring, d).ok,
            )
    try:
        found = gruenbaum_exact(map_, d, budget=budget)
    except (BudgetExceededError, ColorCountError, TooLargeError) as error:
        LOGGER.warning("%s: exact search gave up (%s)", record.name, error)
        try:
            fallback = vizing_fallback(dual, d)
        except NotSimpleDualError:
            return replace(record, method="fallback")
        return replace(
            record, method="fallback", fallback_colors=fallback.num_colors_used
        )
    ok = (found is not None) and verify_gruenbaum(map_, found, d).ok
    return replace(record, method="exact", gruenbaum=ok)


def _face_chromatic(dual: DualGraph, /, *, budget: int) -> int | None:
    graph = dual.adjacency_graph()
    if nx.number_of_selfloops(graph) >= 1:
        return None
    try:
        return chromatic_number(graph, lower=3, budget=budget)
    except (BudgetExceededError, TooLargeError):
        return None


def _flag(record: ScanRecord, /) -> str | None:
    if (
        (record.d == 3)
        and (record.face_chromatic is not None)
        and (record.face_chromatic <= 3)
        and (record.gruenbaum is False)
    ):
        return CONJECTURE_2A if record.orientable else CONJECTURE_2B
    return None


def conjecture2_scan(
    corpus: Sequence[tuple[str, EmbeddedMap]],
    /,
    *,
    budget: int = SETTINGS.budget,
    workers: int = SETTINGS.workers,
) -> ScanReport:
    """Classify every map of a corpus by face colorability and Gruenbaum status."""
    scan: Callable[[tuple[str, EmbeddedMap]], ScanRecord] = partial(
        _scan_item, budget=budget
    )
    if (workers == 1) or (len(corpus) <= 1):
        records = [scan(item) for item in corpus]
    else:
        with ProcessPoolExecutor(
            max_workers=workers, mp_context=get_context("spawn")
        ) as pool:
            records = list(pool.map(scan, corpus))
    report = ScanReport(records=tuple(records))
    for record in report.theorem_violations:
        LOGGER.error("%s is face 2-colorable but has no Gruenbaum coloring", record.name)
    LOGGER.info(
        "Scanned %s; %s flagged",
        counted_noun(report.records, "map"),
        len(report.flagged),
    )
    return report


def _scan_item(item: tuple[str, EmbeddedMap], /, *, budget: int) -> ScanRecord:
    name, map_ = item
    return scan_map(name, map_, budget=budget)


__all__ = [
    "CONJECTURE_2A",
    "CONJECTURE_2B",
    "THEOREM_VIOLATION",
    "BudgetExceededError",
    "ColorCountError",
    "NotDAngulationError",
    "ScanRecord",
    "ScanReport",
    "SearchError",
    "chromatic_number",
    "conjecture2_scan",
    "edge_chromatic_exact",
    "edge_chromatic_number",
    "gruenbaum_exact",
    "scan_map",
    "three_coloring_parts",
    "vertex_chromatic_exact",
]
