"""Real projective plane as a multibranched surface."""

from __future__ import annotations

from ..surface import Attachment, Branch, MultibranchedSurface, Sector


def create_surface() -> MultibranchedSurface:
    """Returns the real projective plane: a disk whose boundary wraps twice around a single branch ``l``."""
    return MultibranchedSurface(
        branches=(Branch("l"),),
        sectors=(Sector("e", genus=0, boundary=(Attachment("l", 2),)),),
    )
