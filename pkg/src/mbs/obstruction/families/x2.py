"""Sectors ``e_1, ..., e_n`` where ``e_i`` is a disk with holes attached once to every branch ``l_j``, ``j != i``."""

from __future__ import annotations

from typing import TYPE_CHECKING

from ..neighborhood import CyclicAssignment, prongs_at
from ..surface import Attachment, Branch, MultibranchedSurface, Sector

if TYPE_CHECKING:  # pragma: no cover
    from collections.abc import Sequence


def create_surface(n: int) -> MultibranchedSurface:
    """Returns the surface with ``n`` branches and ``n`` sectors; its full degree matrix is ``J - E``.

    For ``n = 2`` both sectors are disks on distinct branches and the complex is disconnected.

    Arguments:
        n: number of branches and of sectors, at least 2
    """
    if n < 2:
        msg = "n must be at least 2."
        raise ValueError(msg)
    return MultibranchedSurface(
        branches=tuple(Branch(f"l{j}") for j in range(1, n + 1)),
        sectors=tuple(
            Sector(
                f"e{i}",
                genus=0,
                boundary=tuple(Attachment(f"l{j}", 1) for j in range(1, n + 1) if j != i),
            )
            for i in range(1, n + 1)
        ),
    )


def assignment_from_permutations(surface: MultibranchedSurface, perms: Sequence[Sequence[int]]) -> CyclicAssignment:
    """Translate one circular permutation of sector numbers per branch into a cyclic assignment.

    Arguments:
        surface: a surface created by :func:`create_surface`
        perms: ``perms[m - 1]`` orders the sectors ``e_b`` meeting branch ``l_m`` by their numbers ``b``
    """
    if len(perms) != len(surface.branches):
        msg = f"Expected {len(surface.branches)} permutations, got {len(perms)}."
        raise ValueError(msg)
    orders = []
    for m, perm in enumerate(perms, start=1):
        by_sector = {prong.sector: prong for prong in prongs_at(surface, f"l{m}")}
        if sorted(f"e{b}" for b in perm) != sorted(by_sector):
            msg = f"Permutation {list(perm)} does not cover the sectors at branch 'l{m}'."
            raise ValueError(msg)
        orders.append(tuple(by_sector[f"e{b}"] for b in perm))
    return CyclicAssignment(tuple(orders))
