"""Single sector attached to a single branch by several boundary circles."""

from __future__ import annotations

from typing import TYPE_CHECKING

from ..surface import Attachment, Branch, MultibranchedSurface, Sector

if TYPE_CHECKING:  # pragma: no cover
    from collections.abc import Sequence


def create_surface(degrees: Sequence[int]) -> MultibranchedSurface:
    """Returns the surface with one genus-0 sector ``e`` and one branch ``l``.

    Arguments:
        degrees: covering degree of each boundary circle of ``e``, in boundary order
    """
    if not degrees:
        msg = "degrees must contain at least one entry."
        raise ValueError(msg)
    if 0 in degrees:
        msg = "degrees must be nonzero."
        raise ValueError(msg)
    return MultibranchedSurface(
        branches=(Branch("l"),),
        sectors=(Sector("e", genus=0, boundary=tuple(Attachment("l", int(d)) for d in degrees)),),
    )


def is_obstructed(degrees: Sequence[int]) -> bool:
    """Whether the obstruction applies, i.e. ``|sum(degrees)| >= 2``."""
    return abs(sum(degrees)) >= 2
