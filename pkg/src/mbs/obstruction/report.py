"""Rendering of verdicts as human-readable text, structured key-value blocks and DOT files."""

from __future__ import annotations

import hashlib
import logging
from pathlib import Path
from typing import TYPE_CHECKING

from .neighborhood import to_dot
from .obstruction import Outcome, VerdictKind

if TYPE_CHECKING:  # pragma: no cover
    from collections.abc import Iterable, Sequence

    from .neighborhood import DualGraph
    from .obstruction import GraphReport, SpanningForest, Verdict

logger = logging.getLogger(__name__)


def format_matrix(rows: Sequence[Sequence[int]]) -> str:
    """Inline form of an integer matrix, rows separated by ``;``, e.g. ``[0, 1; 1, 0]``."""
    if not rows or not rows[0]:
        return "[]"
    return "[" + "; ".join(", ".join(str(x) for x in row) for row in rows) + "]"


def _forest_names(report: GraphReport, forest: SpanningForest) -> list[str]:
    return [report.graph.sector_names[i] for i in forest.edges]


def _render_graph_text(report: GraphReport) -> list[str]:
    graph = report.graph
    lines = [
        f"graph {report.key} (multiplicity {report.multiplicity})",
        f"  vertices {len(graph.vertices)}, edges {len(graph.edges)}, components {graph.components}",
        f"  m = {report.m}, n = {report.n}",
    ]
    if report.outcome is Outcome.CONDITION1:
        lines.append(f"  condition (1): m = {report.m} > n = {report.n}")
        return lines

    assert report.forest is not None
    assert report.matrix is not None
    forest = "{" + ", ".join(_forest_names(report, report.forest)) + "}"
    matrix = f"  A_T = {format_matrix(report.matrix.entries)} (rows {', '.join(report.matrix.rows) or '-'})"
    if report.outcome is Outcome.CONDITION2:
        lines.extend((
            f"  condition (2): forest {forest} gives m-minor gcd {report.gcd}",
            matrix,
        ))
        return lines

    assert report.certificate is not None
    lines.extend((
        f"  no obstruction: gcd 1 on {report.forests_checked} spanning forest(s) checked",
        f"  forest {forest}",
        matrix,
        f"  certificate B = {format_matrix(report.certificate)} with A_T B = E",
    ))
    return lines


def render_text(verdict: Verdict) -> str:
    """Human-readable report: the verdict, counts and the evidence for every distinct dual graph."""
    lines = [f"verdict: {verdict.overall.value}"]
    if verdict.overall is VerdictKind.NOT_EMBEDDABLE:
        lines.append(f"no embedding exists in any of: {verdict.applies_to}")
    else:
        lines.append(f"embeddability is not decided for: {verdict.applies_to}")
    if not verdict.surface_connected:
        lines.append("surface is disconnected: the obstruction does not apply")
    lines.extend((
        f"cyclic assignments: {verdict.assignments}",
        f"distinct dual graphs: {verdict.distinct_graphs}",
    ))
    if verdict.skipped_graphs:
        lines.append(f"skipped disconnected dual graphs: {verdict.skipped_graphs}")
    bouquets = "yes" if verdict.all_bouquets else "no"
    lines.append(f"every dual graph is a bouquet: {bouquets}")
    for report in verdict.reports:
        lines.extend(("", *_render_graph_text(report)))
    return "\n".join(lines) + "\n"


def _render_graph_structured(report: GraphReport) -> list[str]:
    lines = [
        f"graph {report.key}",
        f"multiplicity {report.multiplicity}",
        f"m {report.m}",
        f"n {report.n}",
        f"outcome {report.outcome.value}",
    ]
    if report.outcome is not Outcome.CONDITION1:
        assert report.forest is not None
        assert report.matrix is not None
        names = " ".join(_forest_names(report, report.forest)) or "-"
        key = "witness_forest" if report.outcome is Outcome.CONDITION2 else "forest"
        lines.extend((
            f"{key} {names}",
            f"gcd {report.gcd}",
            f"matrix_rows {' '.join(report.matrix.rows) or '-'}",
            f"matrix_columns {' '.join(report.matrix.columns)}",
        ))
        lines.extend(f"matrix {' '.join(str(x) for x in row)}" for row in report.matrix.entries)
        if report.certificate is not None:
            lines.extend(f"certificate {' '.join(str(x) for x in row) or '-'}" for row in report.certificate)
    lines.extend((f"forests_checked {report.forests_checked}", "end"))
    return lines


def render_structured(verdict: Verdict) -> str:
    """Line-oriented key-value report; the format is described in ``docs/Report_format.rst``."""
    lines = [
        f"verdict {verdict.overall.value}",
        f"applies_to {verdict.applies_to}",
        f"surface_connected {str(verdict.surface_connected).lower()}",
        f"assignments {verdict.assignments}",
        f"distinct_graphs {verdict.distinct_graphs}",
        f"skipped_graphs {verdict.skipped_graphs}",
    ]
    for report in verdict.reports:
        lines.extend(_render_graph_structured(report))
    return "\n".join(lines) + "\n"


def render_dot(graph: DualGraph) -> str:
    """DOT text of one dual graph."""
    return to_dot(graph)


def dot_file_name(index: int, graph: DualGraph) -> str:
    """Bounded file name ``g<index>_<first 12 hex digits of the SHA-1 of the key>.dot``."""
    digest = hashlib.sha1(graph.label.encode("utf-8"), usedforsecurity=False).hexdigest()
    return f"g{index}_{digest[:12]}.dot"


def write_dot_files(graphs: Iterable[DualGraph], directory: str | Path) -> list[Path]:
    """Write one DOT file per dual graph, named by :func:`dot_file_name`.

    The full canonical key stays in the ``digraph`` header of every file.

    Arguments:
        graphs: the dual graphs
        directory: target directory, created if missing

    Returns:
        the written paths in the order of ``graphs``
    """
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    paths = []
    for index, graph in enumerate(graphs):
        path = target / dot_file_name(index, graph)
        path.write_text(render_dot(graph), encoding="utf-8")
        logger.debug("Wrote %s", path)
        paths.append(path)
    return paths
