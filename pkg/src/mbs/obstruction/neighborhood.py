"""Abstract dual graphs: cyclic orders of prongs at branches and the gluing of the parallel sector copies."""

from __future__ import annotations

import itertools
import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import IntEnum
from functools import partial
from typing import TYPE_CHECKING, NamedTuple

import networkx as nx
from networkx.utils import UnionFind

from .surface import count_prongs

if TYPE_CHECKING:  # pragma: no cover
    from collections.abc import Iterable, Iterator, Sequence

    from .surface import MultibranchedSurface

logger = logging.getLogger(__name__)


class OrientationParityError(RuntimeError):
    """Raised when a glued closed surface admits no consistent orientation.

    With rotational monodromy and orientable sectors this cannot happen; it signals a modelling bug.
    """


class Side(IntEnum):
    """The two parallel copies ``e x {+1}`` and ``e x {-1}`` of a sector."""

    PLUS = 0
    MINUS = 1

    @property
    def symbol(self) -> str:
        """``+`` or ``-``."""
        return "+" if self is Side.PLUS else "-"

    @property
    def orientation(self) -> int:
        """+1 for the copy oriented like the sector, -1 for the reversed copy."""
        return 1 if self is Side.PLUS else -1


class SideNode(NamedTuple):
    """One parallel copy of a sector, identified by the sector's declaration index."""

    sector: int
    side: Side


@dataclass(frozen=True, order=True)
class Prong:
    """One local sheet of a sector at a branch.

    Prongs compare by (sector declaration index, attachment index, sheet index).

    Attributes:
        sector_index: declaration index of the sector
        attachment: position of the attachment in the sector's boundary
        sheet: sheet index in ``[0, |degree|)``
        sector: sector id
        branch: branch id
        sign: sign of the attachment degree
    """

    sector_index: int
    attachment: int
    sheet: int
    sector: str = field(compare=False)
    branch: str = field(compare=False)
    sign: int = field(compare=False)

    @property
    def face_ccw(self) -> SideNode:
        """Copy lying counterclockwise of the prong; the ``+`` copy for positive prongs."""
        return SideNode(self.sector_index, Side.PLUS if self.sign > 0 else Side.MINUS)

    @property
    def face_cw(self) -> SideNode:
        """Copy lying clockwise of the prong; the ``-`` copy for positive prongs."""
        return SideNode(self.sector_index, Side.MINUS if self.sign > 0 else Side.PLUS)


@dataclass(frozen=True)
class CyclicAssignment:
    """A cyclic order of all prongs at every branch.

    Each cyclic order is stored as a linear sequence; enumerated assignments start with the least prong.

    Attributes:
        orders: one sequence per branch, in branch declaration order
    """

    orders: tuple[tuple[Prong, ...], ...]

    @property
    def is_canonical(self) -> bool:
        """Whether every sequence starts with its least prong."""
        return all(not order or order[0] == min(order) for order in self.orders)

    def canonical(self) -> CyclicAssignment:
        """Rotate every sequence so that it starts with its least prong."""
        return CyclicAssignment(tuple(canonical_rotation(order) for order in self.orders))


class Join(NamedTuple):
    """An annulus at a branch joining the faces of two consecutive prongs."""

    branch: str
    first: SideNode
    second: SideNode
    reversing: bool


@dataclass(frozen=True)
class DualGraph:
    """An abstract dual graph.

    Vertices are the closed surfaces obtained by gluing the sector copies, each given by its sorted
    side nodes; vertices are sorted by their least side node. There is one directed edge per sector,
    from the vertex holding its ``-`` copy to the vertex holding its ``+`` copy.

    Attributes:
        sector_names: sector ids in declaration order
        vertices: the vertex partition of the side nodes
        edges: (tail, head) vertex indices, one per sector in declaration order
        components: number of connected components of the graph
        betti: first Betti number ``E - V + C``
    """

    sector_names: tuple[str, ...]
    vertices: tuple[tuple[SideNode, ...], ...]
    edges: tuple[tuple[int, int], ...]
    components: int
    betti: int

    @property
    def key(self) -> tuple[tuple[SideNode, ...], ...]:
        """Canonical key; the vertex partition determines the whole graph."""
        return self.vertices

    def side_label(self, node: SideNode) -> str:
        """Text of a side node, e.g. ``e1+``."""
        return self.sector_names[node.sector] + node.side.symbol

    def vertex_label(self, index: int) -> str:
        """Concatenated side nodes of a vertex, e.g. ``e1+e2-``."""
        return "".join(self.side_label(node) for node in self.vertices[index])

    @property
    def label(self) -> str:
        """Canonical key as text: vertex labels joined by ``.``."""
        return ".".join(self.vertex_label(i) for i in range(len(self.vertices)))

    @property
    def is_bouquet(self) -> bool:
        """Whether the graph has a single vertex."""
        return len(self.vertices) == 1

    def to_networkx(self) -> nx.MultiDiGraph:
        """The graph as a :class:`networkx.MultiDiGraph`, edges keyed by sector id."""
        graph = nx.MultiDiGraph()
        graph.add_nodes_from((i, {"label": self.vertex_label(i)}) for i in range(len(self.vertices)))
        for name, (tail, head) in zip(self.sector_names, self.edges):
            graph.add_edge(tail, head, key=name)
        return graph


class DualGraphClass(NamedTuple):
    """A distinct dual graph with the first assignment producing it and the number of assignments that do."""

    graph: DualGraph
    representative: CyclicAssignment
    multiplicity: int


def canonical_rotation(order: Sequence[Prong]) -> tuple[Prong, ...]:
    """Rotate a cyclic sequence so that it starts with its least prong."""
    if not order:
        return ()
    start = order.index(min(order))
    return (*order[start:], *order[:start])


def prongs_at(surface: MultibranchedSurface, branch: str) -> list[Prong]:
    """All prongs at a branch, ordered by sector declaration, attachment index and sheet index.

    Arguments:
        surface: the multibranched surface
        branch: the branch id
    """
    surface.branch_index(branch)
    return [
        Prong(
            sector_index=i,
            attachment=j,
            sheet=sheet,
            sector=sector.name,
            branch=branch,
            sign=1 if attachment.degree > 0 else -1,
        )
        for i, sector in enumerate(surface.sectors)
        for j, attachment in enumerate(sector.boundary)
        if attachment.branch == branch
        for sheet in range(abs(attachment.degree))
    ]


def cyclic_orders(prongs: Sequence[Prong]) -> list[tuple[Prong, ...]]:
    """All cyclic orders of the prongs up to rotation, each starting with the least prong."""
    if not prongs:
        return [()]
    first, *rest = sorted(prongs)
    return [(first, *perm) for perm in itertools.permutations(rest)]


def count_assignments(surface: MultibranchedSurface, limit: int | None = None) -> int:
    """Number of cyclic assignments, the product of ``(k(l) - 1)!`` over branches.

    Arguments:
        surface: the multibranched surface
        limit: stop multiplying once the product exceeds this value

    Returns:
        the exact count, or, when it exceeds ``limit``, the first partial product larger than ``limit``
    """
    total = 1
    for name in surface.branch_names:
        for factor in range(2, count_prongs(surface, name)):
            total *= factor
            if limit is not None and total > limit:
                return total
    return total


def enumerate_assignments(surface: MultibranchedSurface) -> Iterator[CyclicAssignment]:
    """Lazily yield every cyclic assignment of the surface in a deterministic order."""
    per_branch = [cyclic_orders(prongs_at(surface, name)) for name in surface.branch_names]
    for orders in itertools.product(*per_branch):
        yield CyclicAssignment(orders)


def rotate_branch(assignment: CyclicAssignment, index: int, steps: int) -> CyclicAssignment:
    """Rotate the sequence of one branch by ``steps`` positions (the result need not be canonical)."""
    order = assignment.orders[index]
    if order:
        steps %= len(order)
        order = (*order[steps:], *order[:steps])
    return CyclicAssignment((*assignment.orders[:index], order, *assignment.orders[index + 1 :]))


def reverse_branch(assignment: CyclicAssignment, index: int) -> CyclicAssignment:
    """Mirror the cyclic order of one branch, returned in canonical rotation."""
    order = canonical_rotation(tuple(reversed(assignment.orders[index])))
    return CyclicAssignment((*assignment.orders[:index], order, *assignment.orders[index + 1 :]))


def annulus_joins(surface: MultibranchedSurface, assignment: CyclicAssignment) -> list[Join]:
    """Face joins made by the annuli between consecutive prongs at every branch.

    For consecutive prongs ``p, q`` the annulus joins ``p.face_ccw`` to ``q.face_cw``. A join is
    orientation reversing when the boundary directions the two copies induce on the branch agree.
    Under this face rule ``sign * orientation`` is always +1 on a ccw face and -1 on a cw face, so no
    join is ever reversing; the flag and the parity check in :func:`glue` are a structural assertion
    on the face rule, not a test that can reject a surface.
    """
    if len(assignment.orders) != len(surface.branches):
        msg = "The assignment does not provide a cyclic order for every branch."
        raise ValueError(msg)
    joins = []
    for branch, order in zip(surface.branch_names, assignment.orders):
        for position, prong in enumerate(order):
            following = order[(position + 1) % len(order)]
            first, second = prong.face_ccw, following.face_cw
            reversing = prong.sign * first.side.orientation == following.sign * second.side.orientation
            joins.append(Join(branch, first, second, reversing))
    return joins


def _check_orientable(joins: Iterable[Join]) -> None:
    """Two-colour the joins by orientation flips; a conflict means a non-orientable closed surface.

    Only reachable if the face rule of :func:`annulus_joins` is changed.
    """
    adjacency: dict[SideNode, list[tuple[SideNode, int]]] = {}
    for join in joins:
        adjacency.setdefault(join.first, []).append((join.second, int(join.reversing)))
        adjacency.setdefault(join.second, []).append((join.first, int(join.reversing)))

    flip: dict[SideNode, int] = {}
    for root in adjacency:
        if root in flip:
            continue
        flip[root] = 0
        queue = deque([root])
        while queue:
            node = queue.popleft()
            for neighbour, parity in adjacency[node]:
                expected = flip[node] ^ parity
                if neighbour not in flip:
                    flip[neighbour] = expected
                    queue.append(neighbour)
                elif flip[neighbour] != expected:
                    msg = f"Glued surface through side node {node} is not orientable."
                    raise OrientationParityError(msg)


def glue(surface: MultibranchedSurface, assignment: CyclicAssignment) -> DualGraph:
    """Glue the sector copies along the annuli of an assignment and build the abstract dual graph.

    Arguments:
        surface: the multibranched surface
        assignment: cyclic orders covering every prong of the surface

    Raises:
        OrientationParityError: if some glued closed surface is not orientable
    """
    nodes = [SideNode(i, side) for i in range(len(surface.sectors)) for side in Side]
    joins = annulus_joins(surface, assignment)
    _check_orientable(joins)

    surfaces = UnionFind(nodes)
    for join in joins:
        surfaces.union(join.first, join.second)
    vertices = tuple(sorted(tuple(sorted(part)) for part in surfaces.to_sets()))
    vertex_of = {node: index for index, part in enumerate(vertices) for node in part}
    edges = tuple(
        (vertex_of[SideNode(i, Side.MINUS)], vertex_of[SideNode(i, Side.PLUS)]) for i in range(len(surface.sectors))
    )

    components = UnionFind(range(len(vertices)))
    for tail, head in edges:
        components.union(tail, head)
    num_components = sum(1 for _ in components.to_sets())

    return DualGraph(
        sector_names=surface.sector_names,
        vertices=vertices,
        edges=edges,
        components=num_components,
        betti=len(edges) - len(vertices) + num_components,
    )


def _chunked(assignments: Iterator[CyclicAssignment], size: int) -> Iterator[list[CyclicAssignment]]:
    while chunk := list(itertools.islice(assignments, size)):
        yield chunk


def _glue_chunk(
    surface: MultibranchedSurface, chunk: list[CyclicAssignment]
) -> dict[tuple[tuple[SideNode, ...], ...], DualGraphClass]:
    """Glue a chunk of assignments; the result keeps first occurrence order."""
    found: dict[tuple[tuple[SideNode, ...], ...], DualGraphClass] = {}
    for assignment in chunk:
        graph = glue(surface, assignment)
        known = found.get(graph.key)
        if known is None:
            found[graph.key] = DualGraphClass(graph, assignment, 1)
        else:
            found[graph.key] = known._replace(multiplicity=known.multiplicity + 1)
    return found


def enumerate_dual_graphs(
    surface: MultibranchedSurface, workers: int = 1, chunk_size: int = 2048
) -> list[DualGraphClass]:
    """Glue every assignment and deduplicate the dual graphs by canonical key.

    The stream of assignments is cut into ordered chunks; with ``workers > 1`` the chunks are glued in
    worker processes. Merging keeps the first representative in enumeration order, and the result is
    sorted by key, so it does not depend on the number of workers.

    Arguments:
        surface: the multibranched surface
        workers: number of worker processes
        chunk_size: number of assignments per chunk

    Returns:
        one entry per distinct dual graph; multiplicities sum to the number of assignments
    """
    if workers < 1 or chunk_size < 1:
        msg = "workers and chunk_size must be positive."
        raise ValueError(msg)

    chunks = _chunked(enumerate_assignments(surface), chunk_size)
    glue_chunk = partial(_glue_chunk, surface)
    merged: dict[tuple[tuple[SideNode, ...], ...], DualGraphClass] = {}

    def merge(results: Iterable[dict[tuple[tuple[SideNode, ...], ...], DualGraphClass]]) -> None:
        for number, result in enumerate(results):
            logger.debug("Merged chunk %d (%d distinct graphs so far)", number, len(merged))
            for key, found in result.items():
                known = merged.get(key)
                merged[key] = (
                    found if known is None else known._replace(multiplicity=known.multiplicity + found.multiplicity)
                )

    if workers == 1:
        merge(map(glue_chunk, chunks))
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            merge(executor.map(glue_chunk, chunks))

    return sorted(merged.values(), key=lambda found: found.graph.key)


def to_dot(graph: DualGraph) -> str:
    """Render a dual graph in DOT; vertices are labelled by their side nodes, edges by sector id."""
    lines = [f'digraph "{graph.label}" {{']
    for index, part in enumerate(graph.vertices):
        label = ", ".join(graph.side_label(node) for node in part)
        lines.append(f'  v{index} [label="{{{label}}}"];')
    lines.extend(
        f'  v{tail} -> v{head} [label="{name}"];' for name, (tail, head) in zip(graph.sector_names, graph.edges)
    )
    lines.append("}")
    return "\n".join(lines) + "\n"
