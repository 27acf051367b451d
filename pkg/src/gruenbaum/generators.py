from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from random import Random
from typing import TYPE_CHECKING, override

from gruenbaum.constants import MAX_KNNN_ORDER
from gruenbaum.dual import dual_map
from gruenbaum.logging import LOGGER
from gruenbaum.maps import (
    EdgeMultiplicityError,
    FlipBlockedError,
    PinchedVertexError,
    TooSmallError,
    flip_edge,
    from_faces,
    surface_info,
)

if TYPE_CHECKING:
    from collections.abc import Iterator, Sequence

    from gruenbaum.maps import EmbeddedMap
    from gruenbaum.types import Part, Vertex


@dataclass(frozen=True, kw_only=True, slots=True)
class LatinSquare:
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.cells)
        symbols = set(range(n))
        if n == 0:
            raise NotLatinError(reason="square is empty")
        for i, row in enumerate(self.cells):
            if len(row) != n:
                raise NotLatinError(reason=f"row {i} has length {len(row)}, not {n}")
            if set(row) != symbols:
                raise NotLatinError(reason=f"row {i} is not a permutation of 0..{n - 1}")
        for j in range(n):
            if {row[j] for row in self.cells} != symbols:
                raise NotLatinError(
                    reason=f"column {j} is not a permutation of 0..{n - 1}"
                )

    @property
    def order(self) -> int:
        return len(self.cells)

    def cell(self, row: int, column: int, /) -> int:
        return self.cells[row][column]

    def permute(
        self,
        *,
        rows: Sequence[int] | None = None,
        columns: Sequence[int] | None = None,
        symbols: Sequence[int] | None = None,
    ) -> LatinSquare:
        """Reorder rows, columns and symbols; row ``i`` becomes ``rows[i]``."""
        n = self.order
        rows_use = list(range(n)) if rows is None else list(rows)
        columns_use = list(range(n)) if columns is None else list(columns)
        symbols_use = list(range(n)) if symbols is None else list(symbols)
        return LatinSquare(
            cells=tuple(
                tuple(symbols_use[self.cells[rows_use[i]][columns_use[j]]] for j in range(n))
                for i in range(n)
            )
        )


##


@dataclass(kw_only=True, slots=True)
class GeneratorError(Exception): ...


@dataclass(kw_only=True, slots=True)
class UnknownNameError(GeneratorError):
    name: str

    @override
    def __str__(self) -> str:
        return f"Unknown Platonic solid {self.name!r}"


@dataclass(kw_only=True, slots=True)
class NotLatinError(GeneratorError):
    reason: str

    @override
    def __str__(self) -> str:
        return f"Not a Latin square: {self.reason}"


@dataclass(kw_only=True, slots=True)
class OrderMismatchError(GeneratorError):
    first: int
    second: int

    @override
    def __str__(self) -> str:
        return f"Latin squares must have the same order; got {self.first} and {self.second}"


@dataclass(kw_only=True, slots=True)
class OrderRangeError(GeneratorError):
    n: int

    @override
    def __str__(self) -> str:
        return f"Order must be between 2 and {MAX_KNNN_ORDER}; got {self.n}"


@dataclass(kw_only=True, slots=True)
class NotFoundError(GeneratorError):
    n: int
    searched: int

    @override
    def __str__(self) -> str:
        return f"No orientable biembedding of K_{{{self.n},{self.n},{self.n}}} among {self.searched} candidate pairs"


@dataclass(kw_only=True, slots=True)
class SurfaceMismatchError(GeneratorError):
    name: str
    euler_characteristic: int
    orientable: bool

    @override
    def __str__(self) -> str:
        return f"{self.name} came out with Euler characteristic {self.euler_characteristic} and orientable={self.orientable}"


##


_TETRAHEDRON = [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]
_OCTAHEDRON = [
    (0, 1, 2),
    (0, 2, 3),
    (0, 3, 4),
    (0, 4, 1),
    (5, 2, 1),
    (5, 3, 2),
    (5, 4, 3),
    (5, 1, 4),
]
_CUBE = [
    (0, 2, 3, 1),
    (4, 5, 7, 6),
    (0, 1, 5, 4),
    (2, 6, 7, 3),
    (0, 4, 6, 2),
    (1, 3, 7, 5),
]
_K6_PROJECTIVE = [
    (0, 1, 2),
    (0, 2, 3),
    (0, 3, 4),
    (0, 4, 5),
    (0, 5, 1),
    (1, 2, 4),
    (2, 3, 5),
    (3, 4, 1),
    (4, 5, 2),
    (5, 1, 3),
]


def platonic(name: str, /) -> EmbeddedMap:
    match name:
        case "tetrahedron":
            map_ = from_faces(_TETRAHEDRON)
        case "octahedron":
            map_ = from_faces(_OCTAHEDRON)
        case "cube":
            map_ = from_faces(_CUBE)
        case "icosahedron":
            map_ = from_faces(_icosahedron_faces())
        case "dodecahedron":
            map_ = dual_map(platonic("icosahedron"))
        case _:
            raise UnknownNameError(name=name)
    _check_surface(name, map_, euler_characteristic=2, orientable=True)
    return map_


def _icosahedron_faces() -> list[tuple[Vertex, ...]]:
    """Apex 0, upper ring 1..5, lower ring 6..10, apex 11."""
    faces: list[tuple[Vertex, ...]] = []
    for i in range(5):
        upper, upper_next = 1 + i, 1 + (i + 1) % 5
        lower, lower_next = 6 + i, 6 + (i + 1) % 5
        faces.extend([
            (0, upper, upper_next),
            (upper, lower, upper_next),
            (upper_next, lower, lower_next),
            (11, lower_next, lower),
        ])
    return faces


def k6_projective() -> EmbeddedMap:
    """K6 triangulating the projective plane; its dual is the Petersen graph."""
    map_ = from_faces(_K6_PROJECTIVE)
    _check_surface("K6", map_, euler_characteristic=1, orientable=False)
    return map_


def k7_torus() -> EmbeddedMap:
    """K7 triangulating the torus; its dual is the Heawood graph."""
    faces = [
        face
        for i in range(7)
        for face in [(i, (i + 1) % 7, (i + 3) % 7), (i, (i + 3) % 7, (i + 2) % 7)]
    ]
    map_ = from_faces(faces)
    _check_surface("K7", map_, euler_characteristic=0, orientable=True)
    return map_


def torus_grid(m: int, n: int, /) -> EmbeddedMap:
    """The m by n quadrangulation of the torus; vertex (i, j) is ``i * n + j``."""
    for value in [m, n]:
        if value < 3:
            raise TooSmallError(what="Grid side", value=value, minimum=3)

    def vertex(i: int, j: int, /) -> Vertex:
        return (i % m) * n + (j % n)

    faces = [
        (vertex(i, j), vertex(i, j + 1), vertex(i + 1, j + 1), vertex(i + 1, j))
        for i, j in product(range(m), range(n))
    ]
    map_ = from_faces(faces)
    _check_surface(f"{m}x{n} grid", map_, euler_characteristic=0, orientable=True)
    return map_


def _check_surface(
    name: str, map_: EmbeddedMap, /, *, euler_characteristic: int, orientable: bool
) -> None:
    info = surface_info(map_)
    if (info.euler_characteristic != euler_characteristic) or (
        info.orientable is not orientable
    ):
        raise SurfaceMismatchError(
            name=name,
            euler_characteristic=info.euler_characteristic,
            orientable=info.orientable,
        )


##


def latin_cyclic(n: int, /, *, shift: int = 0) -> LatinSquare:
    return LatinSquare(
        cells=tuple(tuple((i + j + shift) % n for j in range(n)) for i in range(n))
    )


def biembed(first: LatinSquare, second: LatinSquare, /) -> EmbeddedMap:
    """Triangulate with K_{n,n,n}, taking black faces from one square and white
    faces from the other.

    Vertex ``a_i`` is ``i``, ``b_j`` is ``n + j`` and ``c_k`` is ``2n + k``.
    """
    if first.order != second.order:
        raise OrderMismatchError(first=first.order, second=second.order)
    n = first.order
    black: list[tuple[Vertex, ...]] = []
    white: list[tuple[Vertex, ...]] = []
    for i, j in product(range(n), range(n)):
        if first.cell(i, j) == second.cell(i, j):
            raise EdgeMultiplicityError(ends=(i, n + j), count=1)
        black.append((i, n + j, 2 * n + first.cell(i, j)))
        white.append((i, 2 * n + second.cell(i, j), n + j))
    return from_faces(black + white)


def knnn_parts(n: int, /) -> dict[Vertex, Part]:
    parts: dict[Vertex, Part] = {}
    for i in range(n):
        parts[i], parts[n + i], parts[2 * n + i] = "A", "B", "C"
    return dict(sorted(parts.items()))


def find_knnn(n: int, /) -> EmbeddedMap:
    """An orientable triangulation by K_{n,n,n} from a pair of Latin squares."""
    if not (2 <= n <= MAX_KNNN_ORDER):
        raise OrderRangeError(n=n)
    searched = 0
    for first, second in _knnn_candidates(n):
        searched += 1
        try:
            map_ = biembed(first, second)
        except (EdgeMultiplicityError, PinchedVertexError):
            continue
        if surface_info(map_).orientable:
            LOGGER.debug("Found K_{%d,%d,%d} after %d candidates", n, n, n, searched)
            return map_
    raise NotFoundError(n=n, searched=searched)


def _knnn_candidates(n: int, /) -> Iterator[tuple[LatinSquare, LatinSquare]]:
    for shift_first, shift_second in product(range(n), repeat=2):
        if shift_first != shift_second:
            yield (
                latin_cyclic(n, shift=shift_first),
                latin_cyclic(n, shift=shift_second),
            )
    base = latin_cyclic(n)
    for rows in permutations(range(n)):
        yield base, latin_cyclic(n, shift=1).permute(rows=rows)


##


def flip_walk(
    seed_map: EmbeddedMap, steps: int, /, *, seed: int = 0
) -> list[EmbeddedMap]:
    """Random diagonal flips of a triangulation, keeping the surface fixed."""
    rng = Random(seed)
    maps: list[EmbeddedMap] = []
    current = seed_map
    for _ in range(steps):
        edges = list(range(current.num_edges))
        rng.shuffle(edges)
        for edge in edges:
            try:
                current = flip_edge(current, edge)
            except FlipBlockedError:
                continue
            break
        else:
            LOGGER.warning("No flippable edge after %d steps", len(maps))
            break
        maps.append(current)
    return maps


__all__ = [
    "GeneratorError",
    "LatinSquare",
    "NotFoundError",
    "NotLatinError",
    "OrderMismatchError",
    "OrderRangeError",
    "SurfaceMismatchError",
    "UnknownNameError",
    "biembed",
    "find_knnn",
    "flip_walk",
    "k6_projective",
    "k7_torus",
    "knnn_parts",
    "latin_cyclic",
    "platonic",
    "torus_grid",
]
