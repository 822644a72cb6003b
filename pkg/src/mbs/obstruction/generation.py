"""Family specifications and surface generation by family name."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .utils import get_module_for_family, get_supported_families

if TYPE_CHECKING:  # pragma: no cover
    from .surface import MultibranchedSurface

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FamilySpec:
    """Data class selecting one member of a surface family.

    Attributes:
        family: one of :func:`~mbs.obstruction.utils.get_supported_families`
        params: degrees for ``x1``, ``(n,)`` for ``x2``, multiplicities for ``x3``, empty for ``rp2``
    """

    family: str
    params: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        """Check the parameter ranges of the family."""
        if self.family not in get_supported_families():
            msg = f"Selected family is not supported. Valid families are {get_supported_families()}."
            raise ValueError(msg)
        if self.family == "rp2" and self.params:
            msg = "rp2 takes no parameters."
            raise ValueError(msg)
        if self.family == "x1" and (not self.params or 0 in self.params):
            msg = "x1 needs a nonempty list of nonzero degrees."
            raise ValueError(msg)
        if self.family == "x2" and (len(self.params) != 1 or self.params[0] < 2):
            msg = "x2 needs a single parameter n >= 2."
            raise ValueError(msg)
        if self.family == "x3" and (len(self.params) < 2 or min(self.params) < 1):
            msg = "x3 needs at least two multiplicities, each >= 1."
            raise ValueError(msg)

    @property
    def meets_product_hypothesis(self) -> bool | None:
        """For ``x3``, whether the product of the multiplicities is at least 3; ``None`` for other families."""
        if self.family != "x3":
            return None
        return math.prod(self.params) >= 3

    @property
    def name(self) -> str:
        """Family and parameters, e.g. ``x3_2_2`` or ``x1_1_m1``."""
        return "_".join([self.family, *(str(p).replace("-", "m") for p in self.params)])


def parse_family_spec(family: str, params_text: str | None = None) -> FamilySpec:
    """Build a :class:`FamilySpec` from a family name and comma separated integers.

    Arguments:
        family: the family name
        params_text: e.g. ``"4"`` for ``x2`` or ``"1,-1"`` for ``x1``; ``None`` or empty for ``rp2``

    Raises:
        ValueError: on malformed integers or parameters outside the family's range
    """
    params: tuple[int, ...] = ()
    if params_text is not None and params_text.strip():
        try:
            params = tuple(int(token) for token in params_text.split(","))
        except ValueError:
            msg = f"Parameters must be comma separated integers, got '{params_text}'."
            raise ValueError(msg) from None
    return FamilySpec(family, params)


def get_surface(spec: FamilySpec) -> MultibranchedSurface:
    """Returns the surface described by a family specification.

    Arguments:
        spec: the family and its parameters

    Returns:
        the generated surface; ``x2`` with ``n = 2`` is disconnected
    """
    lib = get_module_for_family(spec.family)
    logger.debug("Generating %s", spec.name)
    if spec.family == "rp2":
        return lib.create_surface()  # type: ignore[no-any-return]
    if spec.family == "x2":
        return lib.create_surface(spec.params[0])  # type: ignore[no-any-return]
    return lib.create_surface(list(spec.params))  # type: ignore[no-any-return]
