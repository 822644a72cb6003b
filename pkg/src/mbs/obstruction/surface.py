"""Combinatorial model of compact orientable multibranched surfaces and the ``.mbs`` file format."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING

import networkx as nx
import numpy as np

if TYPE_CHECKING:  # pragma: no cover
    from pathlib import Path

    from numpy.typing import NDArray

logger = logging.getLogger(__name__)

IDENTIFIER = re.compile(r"[A-Za-z0-9_]+")
_INTEGER = re.compile(r"[+-]?[0-9]+")
_NONNEGATIVE_INTEGER = re.compile(r"[0-9]+")


class SurfaceError(ValueError):
    """Raised when multibranched surface data violates the model's invariants."""


class MBSParseError(SurfaceError):
    """Raised when a ``.mbs`` text cannot be parsed.

    Attributes:
        lineno: 1-based line number of the offending line
    """

    def __init__(self, msg: str, lineno: int) -> None:
        """Attach the line number to the message."""
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class NotFoundError(SurfaceError):
    """Raised when a branch or sector id is not declared in the surface."""


class DisconnectedSurfaceError(SurfaceError):
    """Raised when the sector/branch incidence graph of a surface is not connected."""


@dataclass(frozen=True)
class Branch:
    """A singular circle of the complex. Its orientation is fixed by declaration.

    Attributes:
        name: identifier, unique among branches
    """

    name: str


@dataclass(frozen=True)
class Attachment:
    """One boundary circle of a sector, covering a branch.

    Attributes:
        branch: name of the covered branch
        degree: signed covering degree relative to the fixed orientations, never zero
    """

    branch: str
    degree: int


@dataclass(frozen=True)
class Sector:
    """An oriented sector together with its ordered boundary attachments.

    The genus is carried as metadata only; nothing in the obstruction reads it.

    Attributes:
        name: identifier, unique among sectors
        genus: genus of the closure of the sector
        boundary: attachments in boundary order
    """

    name: str
    genus: int = 0
    boundary: tuple[Attachment, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class MultibranchedSurface:
    """A compact multibranched surface with orientable sectors.

    Declaration order of branches and sectors fixes every later ordering
    (matrix columns and rows, prongs, side nodes). Construction validates the
    local invariants; connectivity is checked separately by :func:`require_connected`
    so that generators may describe disconnected complexes.

    Attributes:
        branches: branches in declaration order
        sectors: sectors in declaration order
    """

    branches: tuple[Branch, ...]
    sectors: tuple[Sector, ...]

    def __post_init__(self) -> None:
        """Validate ids, references and degrees."""
        if not self.sectors:
            msg = "A multibranched surface needs at least one sector (no sectors given)."
            raise SurfaceError(msg)

        seen_branches: set[str] = set()
        for branch in self.branches:
            if branch.name in seen_branches:
                msg = f"Duplicate branch id '{branch.name}'."
                raise SurfaceError(msg)
            seen_branches.add(branch.name)

        seen_sectors: set[str] = set()
        referenced: set[str] = set()
        for sector in self.sectors:
            if sector.name in seen_sectors:
                msg = f"Duplicate sector id '{sector.name}'."
                raise SurfaceError(msg)
            seen_sectors.add(sector.name)
            if sector.genus < 0:
                msg = f"Sector '{sector.name}' has negative genus {sector.genus}."
                raise SurfaceError(msg)
            if not sector.boundary:
                msg = f"Sector '{sector.name}' has no attachments; closed sectors are not supported."
                raise SurfaceError(msg)
            for attachment in sector.boundary:
                if attachment.branch not in seen_branches:
                    msg = f"Sector '{sector.name}' attaches to unknown branch '{attachment.branch}'."
                    raise NotFoundError(msg)
                if attachment.degree == 0:
                    msg = f"Sector '{sector.name}' attaches to branch '{attachment.branch}' with degree 0."
                    raise SurfaceError(msg)
                referenced.add(attachment.branch)

        for branch in self.branches:
            if branch.name not in referenced:
                msg = f"Branch '{branch.name}' is not referenced by any attachment."
                raise SurfaceError(msg)

    @cached_property
    def branch_names(self) -> tuple[str, ...]:
        """Branch ids in declaration order."""
        return tuple(branch.name for branch in self.branches)

    @cached_property
    def sector_names(self) -> tuple[str, ...]:
        """Sector ids in declaration order."""
        return tuple(sector.name for sector in self.sectors)

    @cached_property
    def _branch_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.branch_names)}

    @cached_property
    def _sector_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.sector_names)}

    def branch_index(self, name: str) -> int:
        """Get the declaration index of a branch.

        Arguments:
            name: the branch id
        """
        try:
            return self._branch_index[name]
        except KeyError:
            msg = f"Branch '{name}' not found."
            raise NotFoundError(msg) from None

    def sector_index(self, name: str) -> int:
        """Get the declaration index of a sector.

        Arguments:
            name: the sector id
        """
        try:
            return self._sector_index[name]
        except KeyError:
            msg = f"Sector '{name}' not found."
            raise NotFoundError(msg) from None

    def sector(self, name: str) -> Sector:
        """Get a sector by its id."""
        return self.sectors[self.sector_index(name)]

    def incidence_graph(self) -> nx.Graph:
        """Bipartite graph joining every sector to the branches it attaches to."""
        graph = nx.Graph()
        graph.add_nodes_from(("branch", name) for name in self.branch_names)
        graph.add_nodes_from(("sector", name) for name in self.sector_names)
        for sector in self.sectors:
            graph.add_edges_from((("sector", sector.name), ("branch", a.branch)) for a in sector.boundary)
        return graph

    @cached_property
    def is_connected(self) -> bool:
        """Whether the complex is connected, i.e. its incidence graph is."""
        return bool(nx.is_connected(self.incidence_graph()))


def require_connected(surface: MultibranchedSurface) -> MultibranchedSurface:
    """Return the surface unchanged if it is connected.

    Raises:
        DisconnectedSurfaceError: if the incidence graph has more than one component
    """
    if not surface.is_connected:
        components = nx.number_connected_components(surface.incidence_graph())
        msg = f"The multibranched surface is disconnected ({components} components)."
        raise DisconnectedSurfaceError(msg)
    return surface


def algebraic_degree(surface: MultibranchedSurface, sector: str, branch: str) -> int:
    """Algebraic degree of an oriented sector on an oriented branch.

    This is the sum of the degrees of all boundary circles of the sector that cover the branch,
    and 0 if the sector does not meet the branch.

    Arguments:
        surface: the multibranched surface
        sector: the sector id
        branch: the branch id
    """
    surface.branch_index(branch)
    return sum(a.degree for a in surface.sector(sector).boundary if a.branch == branch)


def degree_matrix(surface: MultibranchedSurface) -> NDArray[np.object_]:
    """Full sectors x branches matrix of algebraic degrees, as exact integers."""
    matrix = np.zeros((len(surface.sectors), len(surface.branches)), dtype=object)
    for i, sector in enumerate(surface.sectors):
        for attachment in sector.boundary:
            matrix[i, surface.branch_index(attachment.branch)] += attachment.degree
    return matrix


def count_prongs(surface: MultibranchedSurface, branch: str) -> int:
    """Number of local sheets at a branch, the sum of ``|degree|`` over its attachments."""
    surface.branch_index(branch)
    return sum(abs(a.degree) for sector in surface.sectors for a in sector.boundary if a.branch == branch)


def parse_mbs(text: str) -> MultibranchedSurface:
    """Parse a multibranched surface from ``.mbs`` text.

    The format is line oriented; ``#`` starts a comment. Declarations must precede their use::

        branch <id>
        sector <id> genus <nonnegative int>
        attach <sector id> <branch id> <nonzero int>

    One ``attach`` line is given per boundary circle, in boundary order.

    Arguments:
        text: the ``.mbs`` text

    Returns:
        the validated, connected multibranched surface

    Raises:
        MBSParseError: on syntax errors, duplicate ids, unknown references or zero degrees
        SurfaceError: on sectors without attachments, unreferenced branches or empty input
        DisconnectedSurfaceError: if the surface is not connected
    """
    branches: list[Branch] = []
    branch_names: set[str] = set()
    sectors: dict[str, tuple[int, list[Attachment]]] = {}

    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        tokens = raw_line.split("#", 1)[0].split()
        if not tokens:
            continue
        keyword, args = tokens[0], tokens[1:]

        if keyword == "branch":
            if len(args) != 1 or not IDENTIFIER.fullmatch(args[0]):
                msg = "expected 'branch <id>'"
                raise MBSParseError(msg, lineno)
            if args[0] in branch_names:
                msg = f"duplicate branch id '{args[0]}'"
                raise MBSParseError(msg, lineno)
            branch_names.add(args[0])
            branches.append(Branch(args[0]))

        elif keyword == "sector":
            if (
                len(args) != 3
                or not IDENTIFIER.fullmatch(args[0])
                or args[1] != "genus"
                or not _NONNEGATIVE_INTEGER.fullmatch(args[2])
            ):
                msg = "expected 'sector <id> genus <nonnegative integer>'"
                raise MBSParseError(msg, lineno)
            if args[0] in sectors:
                msg = f"duplicate sector id '{args[0]}'"
                raise MBSParseError(msg, lineno)
            sectors[args[0]] = (int(args[2]), [])

        elif keyword == "attach":
            if len(args) != 3 or not _INTEGER.fullmatch(args[2]):
                msg = "expected 'attach <sector id> <branch id> <nonzero integer>'"
                raise MBSParseError(msg, lineno)
            sector_name, branch_name, degree = args[0], args[1], int(args[2])
            if sector_name not in sectors:
                msg = f"unknown sector '{sector_name}'"
                raise MBSParseError(msg, lineno)
            if branch_name not in branch_names:
                msg = f"unknown branch '{branch_name}'"
                raise MBSParseError(msg, lineno)
            if degree == 0:
                msg = "attachment degree must be nonzero"
                raise MBSParseError(msg, lineno)
            sectors[sector_name][1].append(Attachment(branch_name, degree))

        else:
            msg = f"unknown keyword '{keyword}'"
            raise MBSParseError(msg, lineno)

    surface = MultibranchedSurface(
        branches=tuple(branches),
        sectors=tuple(
            Sector(name, genus=genus, boundary=tuple(boundary)) for name, (genus, boundary) in sectors.items()
        ),
    )
    logger.debug("Parsed surface with %d branches and %d sectors", len(surface.branches), len(surface.sectors))
    return require_connected(surface)


def serialize_mbs(surface: MultibranchedSurface) -> str:
    """Write a surface as ``.mbs`` text: all branches, then each sector followed by its attachments."""
    lines = [f"branch {branch.name}" for branch in surface.branches]
    for sector in surface.sectors:
        lines.append(f"sector {sector.name} genus {sector.genus}")
        lines.extend(f"attach {sector.name} {a.branch} {a.degree}" for a in sector.boundary)
    return "\n".join(lines) + "\n"


def read_mbs(path: Path) -> MultibranchedSurface:
    """Read and parse a ``.mbs`` file (UTF-8)."""
    return parse_mbs(path.read_text(encoding="utf-8"))


def rename(
    surface: MultibranchedSurface, branch_map: dict[str, str], sector_map: dict[str, str]
) -> MultibranchedSurface:
    """Rename ids by bijections, keeping declaration order and all degrees.

    Arguments:
        surface: the multibranched surface
        branch_map: new id for every branch id
        sector_map: new id for every sector id
    """
    return MultibranchedSurface(
        branches=tuple(Branch(branch_map[b.name]) for b in surface.branches),
        sectors=tuple(
            Sector(
                sector_map[s.name],
                genus=s.genus,
                boundary=tuple(Attachment(branch_map[a.branch], a.degree) for a in s.boundary),
            )
            for s in surface.sectors
        ),
    )
