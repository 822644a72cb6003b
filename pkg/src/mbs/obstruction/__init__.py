"""mbs.obstruction.

Homological obstruction to embedding multibranched surfaces in the 3-sphere.
"""

from __future__ import annotations

from mbs.obstruction.families import gen_rp2, gen_x1, gen_x2, gen_x3
from mbs.obstruction.generation import FamilySpec, get_surface, parse_family_spec
from mbs.obstruction.linalg import CertificateError, minor_gcd, right_inverse_certificate, smith_normal_form
from mbs.obstruction.neighborhood import (
    CyclicAssignment,
    DualGraph,
    OrientationParityError,
    enumerate_assignments,
    enumerate_dual_graphs,
    glue,
)
from mbs.obstruction.obstruction import (
    BudgetExceededError,
    EvaluationSettings,
    GraphReport,
    Outcome,
    Verdict,
    VerdictKind,
    check_dual_graph,
    evaluate,
)
from mbs.obstruction.surface import (
    Attachment,
    Branch,
    DisconnectedSurfaceError,
    MBSParseError,
    MultibranchedSurface,
    NotFoundError,
    Sector,
    SurfaceError,
    algebraic_degree,
    parse_mbs,
    serialize_mbs,
)

__all__ = [
    "Attachment",
    "Branch",
    "BudgetExceededError",
    "CertificateError",
    "CyclicAssignment",
    "DisconnectedSurfaceError",
    "DualGraph",
    "EvaluationSettings",
    "FamilySpec",
    "GraphReport",
    "MBSParseError",
    "MultibranchedSurface",
    "NotFoundError",
    "OrientationParityError",
    "Outcome",
    "Sector",
    "SurfaceError",
    "Verdict",
    "VerdictKind",
    "algebraic_degree",
    "check_dual_graph",
    "enumerate_assignments",
    "enumerate_dual_graphs",
    "evaluate",
    "gen_rp2",
    "gen_x1",
    "gen_x2",
    "gen_x3",
    "get_surface",
    "glue",
    "minor_gcd",
    "parse_family_spec",
    "parse_mbs",
    "right_inverse_certificate",
    "serialize_mbs",
    "smith_normal_form",
]
