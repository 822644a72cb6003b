"""Evaluation of the homological embedding obstruction over all abstract dual graphs."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import TYPE_CHECKING
from warnings import warn

import numpy as np
from networkx.utils import UnionFind

from .linalg import CertificateError, as_integer_matrix, minor_gcd, right_inverse_certificate, verify_certificate
from .neighborhood import count_assignments, enumerate_dual_graphs
from .surface import algebraic_degree

if TYPE_CHECKING:  # pragma: no cover
    from collections.abc import Iterator

    from numpy.typing import NDArray

    from .neighborhood import CyclicAssignment, DualGraph
    from .surface import MultibranchedSurface

logger = logging.getLogger(__name__)

APPLIES_TO = "the 3-sphere and every homology 3-sphere"


class BudgetExceededError(RuntimeError):
    """Raised when a surface has more cyclic assignments than the configured budget.

    Attributes:
        count: a lower bound on the number of cyclic assignments, larger than ``budget``
        budget: the configured cap
    """

    def __init__(self, count: int, budget: int) -> None:
        """Build the message from the budget; the count can be too large to print."""
        super().__init__(f"More than {budget} cyclic assignments; the budget is {budget}.")
        self.count = count
        self.budget = budget


@dataclass
class EvaluationSettings:
    """Data class for the evaluation settings.

    Attributes:
        assume_connected_duals: skip dual graphs with more than one component
        fast_single_tree: check only the first spanning forest of every dual graph
        budget: maximal number of cyclic assignments to enumerate
        workers: number of worker processes for the enumeration
        chunk_size: number of assignments handed to a worker at once
    """

    assume_connected_duals: bool = False
    fast_single_tree: bool = False
    budget: int = 1_000_000
    workers: int = 1
    chunk_size: int = 2048

    def __post_init__(self) -> None:
        """Validate the numeric settings."""
        if self.budget < 1:
            msg = "budget must be at least 1."
            raise ValueError(msg)
        if self.workers < 1:
            msg = "workers must be at least 1."
            raise ValueError(msg)
        if self.chunk_size < 1:
            msg = "chunk_size must be at least 1."
            raise ValueError(msg)


@dataclass(frozen=True)
class DegreeMatrix:
    """Integer matrix of algebraic degrees with sector rows and branch columns.

    Attributes:
        entries: the rows of the matrix
        rows: sector ids labelling the rows
        columns: branch ids labelling the columns
    """

    entries: tuple[tuple[int, ...], ...]
    rows: tuple[str, ...]
    columns: tuple[str, ...]

    def as_array(self) -> NDArray[np.object_]:
        """The matrix as an ``object`` array of shape ``(len(rows), len(columns))``."""
        if not self.entries:
            return np.zeros((0, len(self.columns)), dtype=object)
        return as_integer_matrix(self.entries)


@dataclass(frozen=True)
class SpanningForest:
    """A spanning forest of a dual graph, given by the declaration indices of its sectors (edges)."""

    edges: tuple[int, ...]


class Outcome(Enum):
    """Result of checking one dual graph."""

    CONDITION1 = "condition1"
    CONDITION2 = "condition2"
    NO_OBSTRUCTION = "no_obstruction"


class VerdictKind(Enum):
    """Overall decision."""

    NOT_EMBEDDABLE = "NOT_EMBEDDABLE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class GraphReport:
    """Evidence for one distinct dual graph.

    Attributes:
        graph: the dual graph
        m: first Betti number of the graph
        n: number of branches
        outcome: which condition holds, if any
        forest: witness forest (condition 2) or the forest of the certificate (no obstruction)
        matrix: the matrix ``A_T`` of that forest
        gcd: gcd of its ``m x m`` minors
        certificate: ``B`` with ``A_T @ B = E`` (no obstruction only)
        forests_checked: number of spanning forests examined
        multiplicity: number of cyclic assignments producing the graph
        representative: the first assignment producing the graph
    """

    graph: DualGraph
    m: int
    n: int
    outcome: Outcome
    forest: SpanningForest | None = None
    matrix: DegreeMatrix | None = None
    gcd: int | None = None
    certificate: tuple[tuple[int, ...], ...] | None = None
    forests_checked: int = 0
    multiplicity: int = 1
    representative: CyclicAssignment | None = None

    @property
    def key(self) -> str:
        """Canonical key of the graph as text."""
        return self.graph.label

    @property
    def obstructed(self) -> bool:
        """Whether condition (1) or (2) holds."""
        return self.outcome is not Outcome.NO_OBSTRUCTION


@dataclass(frozen=True)
class Verdict:
    """Aggregate decision over all dual graphs.

    Attributes:
        overall: NOT_EMBEDDABLE if every evaluated graph is obstructed, INCONCLUSIVE otherwise
        reports: per-graph evidence, sorted by canonical key
        assignments: number of cyclic assignments enumerated
        distinct_graphs: number of distinct dual graphs found
        skipped_graphs: disconnected graphs skipped under ``assume_connected_duals``
        surface_connected: whether the surface is connected
    """

    overall: VerdictKind
    reports: tuple[GraphReport, ...]
    assignments: int
    distinct_graphs: int
    skipped_graphs: int = 0
    surface_connected: bool = True

    @property
    def applies_to(self) -> str:
        """Spaces the verdict speaks about."""
        return APPLIES_TO

    @property
    def first_unobstructed(self) -> GraphReport | None:
        """First graph (in key order) for which neither condition holds."""
        return next((report for report in self.reports if not report.obstructed), None)

    @property
    def all_bouquets(self) -> bool:
        """Whether every evaluated dual graph has a single vertex."""
        return all(report.graph.is_bouquet for report in self.reports)


def spanning_forests(graph: DualGraph) -> Iterator[SpanningForest]:
    """Yield every spanning forest of a dual graph.

    Forests are edge sets of size ``V - C`` without cycles; loops never occur in them and parallel edges
    are distinguished by their sector. The order is lexicographic in the sector indices.
    """
    size = len(graph.vertices) - graph.components
    candidates = [i for i, (tail, head) in enumerate(graph.edges) if tail != head]
    for selection in itertools.combinations(candidates, size):
        forest = UnionFind(range(len(graph.vertices)))
        for i in selection:
            tail, head = graph.edges[i]
            if forest[tail] == forest[head]:
                break
            forest.union(tail, head)
        else:
            yield SpanningForest(selection)


def is_spanning_forest(graph: DualGraph, forest: SpanningForest) -> bool:
    """Whether the edge set is acyclic and spans every component of the graph."""
    if len(forest.edges) != len(graph.vertices) - graph.components:
        return False
    components = UnionFind(range(len(graph.vertices)))
    for i in forest.edges:
        tail, head = graph.edges[i]
        if components[tail] == components[head]:
            return False
        components.union(tail, head)
    return True


def degree_matrix_rows(surface: MultibranchedSurface, graph: DualGraph, forest: SpanningForest) -> DegreeMatrix:
    """Algebraic degree matrix ``A_T`` of the sectors whose dual edges lie outside the forest.

    Arguments:
        surface: the multibranched surface
        graph: a dual graph of the surface
        forest: a spanning forest of the graph

    Returns:
        a ``betti x n`` matrix with rows in sector declaration order and all branches as columns
    """
    in_forest = set(forest.edges)
    rows = tuple(name for i, name in enumerate(graph.sector_names) if i not in in_forest)
    return DegreeMatrix(
        entries=tuple(tuple(algebraic_degree(surface, row, column) for column in surface.branch_names) for row in rows),
        rows=rows,
        columns=surface.branch_names,
    )


def check_dual_graph(
    surface: MultibranchedSurface, graph: DualGraph, fast_single_tree: bool = False
) -> GraphReport:
    """Decide whether condition (1) or (2) of the obstruction holds for one dual graph.

    Condition (1) is ``m > n``. Otherwise every spanning forest is scanned and the first one whose
    matrix has ``m x m`` minor gcd different from 1 (including 0) is returned as witness. If all forests
    give gcd 1, a verified right-inverse certificate is reported for the first forest.

    Arguments:
        surface: the multibranched surface
        graph: a dual graph of the surface
        fast_single_tree: examine only the first spanning forest

    Raises:
        CertificateError: if gcd 1 holds but no verified certificate can be built
    """
    m, n = graph.betti, len(surface.branches)
    if m > n:
        return GraphReport(graph=graph, m=m, n=n, outcome=Outcome.CONDITION1)

    first: tuple[SpanningForest, DegreeMatrix, NDArray[np.object_]] | None = None
    checked = 0
    for forest in spanning_forests(graph):
        checked += 1
        matrix = degree_matrix_rows(surface, graph, forest)
        gcd = minor_gcd(matrix.as_array(), m)
        if gcd != 1:
            return GraphReport(
                graph=graph,
                m=m,
                n=n,
                outcome=Outcome.CONDITION2,
                forest=forest,
                matrix=matrix,
                gcd=gcd,
                forests_checked=checked,
            )
        if first is None:
            certificate = right_inverse_certificate(matrix.as_array())
            if certificate is None:
                msg = f"Minor gcd is 1 but no right inverse exists for graph {graph.label}."
                raise CertificateError(msg)
            first = (forest, matrix, certificate)
        if fast_single_tree:
            break

    if first is None:
        msg = f"Dual graph {graph.label} has no spanning forest."
        raise CertificateError(msg)
    forest, matrix, certificate = first
    return GraphReport(
        graph=graph,
        m=m,
        n=n,
        outcome=Outcome.NO_OBSTRUCTION,
        forest=forest,
        matrix=matrix,
        gcd=1,
        certificate=tuple(tuple(int(x) for x in row) for row in certificate.tolist()),
        forests_checked=checked,
    )


def verify_witness(surface: MultibranchedSurface, report: GraphReport) -> bool:
    """Re-verify the evidence of a report from scratch."""
    if report.m != report.graph.betti or report.n != len(surface.branches):
        return False
    if report.outcome is Outcome.CONDITION1:
        return report.m > report.n
    if report.forest is None or report.matrix is None or not is_spanning_forest(report.graph, report.forest):
        return False
    matrix = degree_matrix_rows(surface, report.graph, report.forest)
    if matrix != report.matrix:
        return False
    gcd = minor_gcd(matrix.as_array(), report.m)
    if report.outcome is Outcome.CONDITION2:
        return report.m <= report.n and gcd == report.gcd and gcd != 1
    certificate = np.zeros((report.n, 0), dtype=object) if report.m == 0 else report.certificate
    return gcd == 1 and certificate is not None and verify_certificate(matrix.as_array(), certificate)


def evaluate(surface: MultibranchedSurface, settings: EvaluationSettings | None = None) -> Verdict:
    """Apply the obstruction to every abstract dual graph of a surface.

    The verdict is NOT_EMBEDDABLE when every evaluated dual graph satisfies condition (1) or (2);
    it then holds for the 3-sphere and for every homology 3-sphere. Otherwise it is INCONCLUSIVE.

    Arguments:
        surface: the multibranched surface
        settings: evaluation settings; defaults to :class:`EvaluationSettings`

    Raises:
        BudgetExceededError: if the number of cyclic assignments exceeds ``settings.budget``
    """
    if settings is None:
        settings = EvaluationSettings()
    elif not isinstance(settings, EvaluationSettings):
        msg = "settings must be of type EvaluationSettings or None."  # type: ignore[unreachable]
        raise ValueError(msg)

    count = count_assignments(surface, limit=settings.budget)
    if count > settings.budget:
        raise BudgetExceededError(count, settings.budget)

    if not surface.is_connected:
        warn(
            "The multibranched surface is disconnected; the obstruction does not apply and the verdict is "
            "capped at INCONCLUSIVE.",
            category=RuntimeWarning,
            stacklevel=2,
        )

    classes = enumerate_dual_graphs(surface, workers=settings.workers, chunk_size=settings.chunk_size)
    reports = []
    skipped = 0
    for found in classes:
        if settings.assume_connected_duals and found.graph.components > 1:
            skipped += 1
            continue
        report = check_dual_graph(surface, found.graph, fast_single_tree=settings.fast_single_tree)
        logger.debug("Dual graph %s: %s", report.key, report.outcome.value)
        reports.append(replace(report, multiplicity=found.multiplicity, representative=found.representative))

    obstructed = surface.is_connected and all(report.obstructed for report in reports)
    verdict = Verdict(
        overall=VerdictKind.NOT_EMBEDDABLE if obstructed else VerdictKind.INCONCLUSIVE,
        reports=tuple(reports),
        assignments=count,
        distinct_graphs=len(classes),
        skipped_graphs=skipped,
        surface_connected=surface.is_connected,
    )
    logger.info(
        "Enumerated %d cyclic assignments, %d distinct dual graphs: %s",
        count,
        len(classes),
        verdict.overall.value,
    )
    return verdict
