"""A cyclic chain of sectors: ``e_i`` wraps ``k_i`` times around ``l_i`` and once backwards around ``l_{i+1}``."""

from __future__ import annotations

from typing import TYPE_CHECKING

from ..surface import Attachment, Branch, MultibranchedSurface, Sector

if TYPE_CHECKING:  # pragma: no cover
    from collections.abc import Sequence


def create_surface(k: Sequence[int]) -> MultibranchedSurface:
    """Returns the chain surface; its full degree matrix has ``k`` on the diagonal and ``-1`` on the cyclic superdiagonal.

    The product of the ``k_i`` is not required to be at least 3; see
    :attr:`mbs.obstruction.generation.FamilySpec.meets_product_hypothesis`.

    Arguments:
        k: positive multiplicities ``k_1, ..., k_n`` with ``n >= 2``
    """
    n = len(k)
    if n < 2:
        msg = "k must have at least two entries."
        raise ValueError(msg)
    if any(k_i < 1 for k_i in k):
        msg = "Every entry of k must be at least 1."
        raise ValueError(msg)
    return MultibranchedSurface(
        branches=tuple(Branch(f"l{i}") for i in range(1, n + 1)),
        sectors=tuple(
            Sector(
                f"e{i}",
                genus=0,
                boundary=(Attachment(f"l{i}", int(k[i - 1])), Attachment(f"l{i % n + 1}", -1)),
            )
            for i in range(1, n + 1)
        ),
    )
