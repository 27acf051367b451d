from __future__ import annotations

import sys
from pathlib import Path
from typing import TYPE_CHECKING, assert_never

from click import Choice, IntRange, UsageError, argument, echo, group, option
from click import Path as ClickPath
from rich.pretty import pretty_repr
from typed_settings import click_options
from utilities.atomicwrites import writer
from utilities.click import CONTEXT_SETTINGS
from utilities.inflect import counted_noun
from utilities.logging import basic_config
from utilities.os import is_pytest
from utilities.text import strip_and_dedent

from gruenbaum import __version__
from gruenbaum.coloring import (
    ColoringError,
    FaceTwoColoring,
    OddCycle,
    face_two_color,
    gruenbaum_from_factorization,
    koenig_factorize,
    tripartite_gruenbaum,
    verify_gruenbaum,
    vizing_fallback,
)
from gruenbaum.constants import ExitCode
from gruenbaum.dual import DualError, build_dual
from gruenbaum.formats import (
    ParseError,
    load_map,
    parse_parts,
    render_check,
    render_coloring,
    render_dual,
    render_face_coloring,
    render_map,
    render_scan_table,
    render_scan_text,
)
from gruenbaum.generators import (
    GeneratorError,
    find_knnn,
    k6_projective,
    k7_torus,
    platonic,
    torus_grid,
)
from gruenbaum.logging import LOGGER
from gruenbaum.maps import MapError, is_d_angulation, surface_info, trace_faces
from gruenbaum.search import (
    BudgetExceededError,
    ScanRecord,
    ScanReport,
    SearchError,
    chromatic_number,
    conjecture2_scan,
    edge_chromatic_exact,
    edge_chromatic_number,
    gruenbaum_exact,
    vertex_chromatic_exact,
)
from gruenbaum.settings import LOADERS, Settings

if TYPE_CHECKING:
    from gruenbaum.coloring import EdgeColoring
    from gruenbaum.dual import DualGraph
    from gruenbaum.maps import EmbeddedMap
    from gruenbaum.types import MapFormat, Method


_MAP_PATH = argument(
    "path", type=ClickPath(exists=True, dir_okay=False, path_type=Path)
)
_FACE_SIZE = option(
    "--d",
    "d",
    type=IntRange(min=3),
    default=None,
    help="Face size; inferred from the first face if omitted",
)
_OUTPUT = option(
    "--output",
    type=ClickPath(dir_okay=False, path_type=Path),
    default=None,
    help="Write the result here instead of stdout",
)
_SETTINGS = click_options(Settings, LOADERS, show_envvars_in_help=True)
_GENERATED = [
    "cube",
    "dodecahedron",
    "icosahedron",
    "k6",
    "k7",
    "knnn",
    "octahedron",
    "tetrahedron",
    "torus",
]


@group(**CONTEXT_SETTINGS)
def _main() -> None:
    if not is_pytest():
        basic_config(obj=LOGGER)


@_main.command(name="check", **CONTEXT_SETTINGS)
@_MAP_PATH
@_FACE_SIZE
def _check(*, path: Path, d: int | None) -> None:
    """Report the surface, d-angulation and dual of a map."""
    map_ = _load(path)
    report = is_d_angulation(map_, _face_size(map_) if d is None else d)
    echo(
        render_check(
            map_, surface_info(map_), report, dual_simple=build_dual(map_).simple
        ),
        nl=False,
    )
    sys.exit(ExitCode.SUCCESS if report.ok else ExitCode.FAILURE)


@_main.command(name="dual", **CONTEXT_SETTINGS)
@_MAP_PATH
@_OUTPUT
def _dual(*, path: Path, output: Path | None) -> None:
    """Print the dual adjacency with faces in traced order."""
    _emit(render_dual(build_dual(_load(path))), output)


@_main.command(name="color", **CONTEXT_SETTINGS)
@_MAP_PATH
def _color(*, path: Path) -> None:
    """Two-color the faces, or print an odd cycle of faces."""
    try:
        result = face_two_color(build_dual(_load(path)))
    except ColoringError as error:
        LOGGER.error("%s", error)
        sys.exit(ExitCode.FAILURE)
    echo(render_face_coloring(result), nl=False)
    match result:
        case FaceTwoColoring():
            sys.exit(ExitCode.SUCCESS)
        case OddCycle():
            sys.exit(ExitCode.FAILURE)
        case never:
            assert_never(never)


@_main.command(name="gruenbaum", **CONTEXT_SETTINGS)
@_MAP_PATH
@_FACE_SIZE
@option(
    "--parts",
    type=ClickPath(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Vertex parts A, B, C of a tripartite triangulation",
)
@option(
    "--fallback",
    is_flag=True,
    default=False,
    help="On failure, write a proper edge coloring of the dual with one extra color",
)
@_OUTPUT
@_SETTINGS
def _gruenbaum(
    settings: Settings,
    /,
    *,
    path: Path,
    d: int | None,
    parts: Path | None,
    fallback: bool,
    output: Path | None,
) -> None:
    """Find a Gruenbaum coloring: d edge colors, all distinct on every face."""
    _log_start("gruenbaum", settings)
    map_ = _load(path)
    d_use = _face_size(map_) if d is None else d
    names = settings.names_use
    if (names is not None) and (d_use != 3):
        msg = f"--names applies only to d=3; got d={d_use}"
        raise UsageError(msg)
    if (names is not None) and (len(names) != d_use):
        msg = f"--names needs {counted_noun(d_use, 'name')}; got {len(names)}"
        raise UsageError(msg)
    if not is_d_angulation(map_, d_use).ok:
        LOGGER.error("%s is not a %d-angulation", path, d_use)
        sys.exit(ExitCode.FAILURE)
    dual_graph = build_dual(map_)
    try:
        found = _find_gruenbaum(
            map_, dual_graph, d_use, parts=parts, budget=settings.budget
        )
    except BudgetExceededError as error:
        LOGGER.error("%s", error)
        _fallback(map_, dual_graph, d_use, enabled=fallback, output=output)
        sys.exit(ExitCode.BUDGET)
    except (ColoringError, DualError, MapError, SearchError) as error:
        LOGGER.error("%s", error)
        sys.exit(ExitCode.FAILURE)
    if found is None:
        echo(f"# gruenbaum d={d_use} result=unsat")
        _fallback(map_, dual_graph, d_use, enabled=fallback, output=output)
        sys.exit(ExitCode.FAILURE)
    coloring, method = found
    check_ = verify_gruenbaum(map_, coloring, d_use)
    if not check_.ok:
        LOGGER.error(
            "Coloring fails on face %s with colors %s", check_.face, check_.colors
        )
        sys.exit(ExitCode.FAILURE)
    LOGGER.info(
        "Found a Gruenbaum coloring of %s via %s",
        counted_noun(dual_graph.num_vertices, "face"),
        method,
    )
    _emit(render_coloring(map_, coloring, method=method, names=names), output)


def _find_gruenbaum(
    map_: EmbeddedMap,
    dual_graph: DualGraph,
    d: int,
    /,
    *,
    parts: Path | None,
    budget: int,
) -> tuple[EdgeColoring, Method] | None:
    match face_two_color(dual_graph):
        case FaceTwoColoring() as two:
            factorization = koenig_factorize(dual_graph, two, d)
            return gruenbaum_from_factorization(map_, factorization), "koenig"
        case OddCycle() if parts is not None:
            try:
                parts_map = parse_parts(parts.read_text())
            except ParseError as error:
                raise UsageError(str(error)) from None
            return tripartite_gruenbaum(map_, parts_map), "tripartite"
        case OddCycle():
            coloring = gruenbaum_exact(map_, d, budget=budget)
            return None if coloring is None else (coloring, "exact")
        case never:
            assert_never(never)


def _fallback(
    map_: EmbeddedMap,
    dual_graph: DualGraph,
    d: int,
    /,
    *,
    enabled: bool,
    output: Path | None,
) -> None:
    if not enabled:
        return
    try:
        coloring = vizing_fallback(dual_graph, d)
    except DualError as error:
        LOGGER.error("No fallback coloring: %s", error)
        return
    _emit(render_coloring(map_, coloring, method="fallback"), output)


@_main.command(name="exact", **CONTEXT_SETTINGS)
@_MAP_PATH
@_FACE_SIZE
@option(
    "--k",
    "k",
    type=IntRange(min=1, max=8),
    default=None,
    help="Decide k-colorability instead of computing chromatic numbers",
)
@_SETTINGS
def _exact(
    settings: Settings, /, *, path: Path, d: int | None, k: int | None
) -> None:
    """Exact face coloring, dual edge coloring and Gruenbaum searches."""
    _log_start("exact", settings)
    map_ = _load(path)
    d_use = _face_size(map_) if d is None else d
    try:
        lines = _exact_lines(map_, d_use, k=k, budget=settings.budget)
    except BudgetExceededError as error:
        LOGGER.error("%s", error)
        sys.exit(ExitCode.BUDGET)
    except (DualError, MapError, SearchError) as error:
        LOGGER.error("%s", error)
        sys.exit(ExitCode.FAILURE)
    echo("\n".join(lines))


def _exact_lines(
    map_: EmbeddedMap, d: int, /, *, k: int | None, budget: int
) -> list[str]:
    dual_graph = build_dual(map_)
    adjacency = dual_graph.adjacency_graph()
    if k is None:
        face_chromatic = chromatic_number(adjacency, budget=budget)
        if dual_graph.simple:
            index = _optional(
                edge_chromatic_number(dual_graph.simple_graph(), budget=budget)
            )
        else:
            index = "?"
        found = gruenbaum_exact(map_, d, budget=budget)
        return [
            f"face_chromatic: {_optional(face_chromatic)}",
            f"dual_edge_chromatic: {index}",
            f"gruenbaum: {_sat(found)}",
        ]
    faces_ok = vertex_chromatic_exact(adjacency, k, budget=budget)
    if dual_graph.simple:
        edges_ok = _sat(
            edge_chromatic_exact(dual_graph.simple_graph(), k, budget=budget)
        )
    else:
        edges_ok = "?"
    return [f"face_colorable_{k}: {_sat(faces_ok)}", f"dual_edge_colorable_{k}: {edges_ok}"]


@_main.command(name="gen", **CONTEXT_SETTINGS)
@argument("name", type=Choice(_GENERATED))
@option("--m", "m", type=IntRange(min=3), default=4, help="Torus grid rows")
@option(
    "--n",
    "n",
    type=IntRange(min=2),
    default=4,
    help="Torus grid columns, or the part size of K_{n,n,n}",
)
@option(
    "--format",
    "format_",
    type=Choice(["faces", "rotation"]),
    default="rotation",
    help="Output file format",
)
@_OUTPUT
def _gen(
    *, name: str, m: int, n: int, format_: MapFormat, output: Path | None
) -> None:
    """Write a generated map."""
    try:
        map_ = _generate(name, m=m, n=n)
    except (GeneratorError, MapError) as error:
        raise UsageError(str(error)) from None
    _emit(render_map(map_, format_), output)


def _generate(name: str, /, *, m: int, n: int) -> EmbeddedMap:
    match name:
        case "k6":
            return k6_projective()
        case "k7":
            return k7_torus()
        case "torus":
            return torus_grid(m, n)
        case "knnn":
            return find_knnn(n)
        case _:
            return platonic(name)


@_main.command(name="scan", **CONTEXT_SETTINGS)
@argument(
    "directory", type=ClickPath(exists=True, file_okay=False, path_type=Path)
)
@option(
    "--table",
    type=ClickPath(dir_okay=False, path_type=Path),
    default=None,
    help="Also write a TOML table of the results",
)
@_OUTPUT
@_SETTINGS
def _scan(
    settings: Settings,
    /,
    *,
    directory: Path,
    table: Path | None,
    output: Path | None,
) -> None:
    """Classify every map in a directory and flag counterexample candidates."""
    _log_start("scan", settings)
    corpus: list[tuple[str, EmbeddedMap]] = []
    failed: list[ScanRecord] = []
    for path in sorted(p for p in directory.iterdir() if p.is_file()):
        try:
            corpus.append((path.name, load_map(path)))
        except (ParseError, MapError) as error:
            LOGGER.warning("Skipping %s: %s", path.name, error)
            failed.append(
                ScanRecord(name=path.name, method="skipped", error=str(error))
            )
    scanned = conjecture2_scan(
        corpus, budget=settings.budget, workers=settings.workers
    )
    report = ScanReport(
        records=tuple(sorted([*scanned.records, *failed], key=lambda r: r.name))
    )
    _emit(render_scan_text(report), output)
    if table is not None:
        with writer(table, overwrite=True) as temp:
            _ = temp.write_text(render_scan_table(report))
    LOGGER.info(
        "Scanned %s in %.2fs; %d flagged, %d theorem violations",
        counted_noun(report.records, "map"),
        report.elapsed,
        len(report.flagged),
        len(report.theorem_violations),
    )
    sys.exit(
        ExitCode.FAILURE if len(report.theorem_violations) >= 1 else ExitCode.SUCCESS
    )


##


def _log_start(command: str, settings: Settings, /) -> None:
    LOGGER.info(
        strip_and_dedent("""
            Running 'gruenbaum %s' (version %s) with settings:
            %s
        """),
        command,
        __version__,
        pretty_repr(settings),
    )


def _load(path: Path, /) -> EmbeddedMap:
    try:
        return load_map(path)
    except ParseError as error:
        LOGGER.error("%s: %s", path, error)
        sys.exit(ExitCode.USAGE)
    except MapError as error:
        LOGGER.error("%s: %s", path, error)
        sys.exit(ExitCode.FAILURE)


def _face_size(map_: EmbeddedMap, /) -> int:
    return max(trace_faces(map_)[0].size, 3)


def _emit(text: str, output: Path | None, /) -> None:
    if output is None:
        echo(text, nl=False)
        return
    with writer(output, overwrite=True) as temp:
        _ = temp.write_text(text)
    LOGGER.info("Wrote %s", output)


def _optional(value: int | None, /) -> str:
    return "?" if value is None else str(value)


def _sat(value: object, /) -> str:
    return "unsat" if value is None else "sat"


if __name__ == "__main__":
    _main()
