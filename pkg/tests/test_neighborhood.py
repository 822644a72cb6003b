"""Tests for cyclic assignments, gluing and abstract dual graphs."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import pytest

from mbs.obstruction.families import gen_rp2, gen_x1, gen_x2, gen_x3
from mbs.obstruction.neighborhood import (
    CyclicAssignment,
    Join,
    OrientationParityError,
    Side,
    SideNode,
    _check_orientable,
    annulus_joins,
    canonical_rotation,
    count_assignments,
    cyclic_orders,
    enumerate_assignments,
    enumerate_dual_graphs,
    glue,
    prongs_at,
    reverse_branch,
    rotate_branch,
    to_dot,
)
from mbs.obstruction.surface import count_prongs

if TYPE_CHECKING:
    from mbs.obstruction.neighborhood import DualGraph
    from mbs.obstruction.surface import MultibranchedSurface


def only_graph(surface: MultibranchedSurface) -> DualGraph:
    """The dual graph of a surface with a single distinct dual graph."""
    (found,) = enumerate_dual_graphs(surface)
    return found.graph


def test_prongs_order() -> None:
    """Prongs follow sector declaration, attachment and sheet order."""
    prongs = prongs_at(gen_x1([2, -1]), "l")
    assert [(p.attachment, p.sheet, p.sign) for p in prongs] == [(0, 0, 1), (0, 1, 1), (1, 0, -1)]
    assert prongs == sorted(prongs)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_cyclic_orders_up_to_rotation(k: int) -> None:
    """(k - 1)! orders, each starting with the least prong, no two equal up to rotation."""
    prongs = prongs_at(gen_x1([k]), "l")
    orders = cyclic_orders(prongs)
    assert len(orders) == math.factorial(k - 1)
    assert all(order[0] == min(prongs) for order in orders)
    assert len({canonical_rotation(order) for order in orders}) == len(orders)


@pytest.mark.parametrize(
    ("surface", "expected"),
    [
        (gen_rp2(), 1),
        (gen_x1([1, -1]), 1),
        (gen_x1([3, 1]), 6),
        (gen_x2(3), 1),
        (gen_x2(4), 16),
        (gen_x2(5), 7776),
        (gen_x3([2, 2]), 4),
        (gen_x3([1, 1, 1]), 1),
    ],
)
def test_count_assignments(surface: MultibranchedSurface, expected: int) -> None:
    """Product of (k(l) - 1)! over branches, matching the enumeration for small cases."""
    assert count_assignments(surface) == expected
    if expected <= 16:
        assert sum(1 for _ in enumerate_assignments(surface)) == expected


@pytest.mark.parametrize(
    ("surface", "limit", "expected"),
    [
        (gen_x2(5), 100, 216),
        (gen_x2(5), 7776, 7776),
        (gen_x2(4), 15, 16),
        (gen_x1([2000]), 1_000_000, 3_628_800),
    ],
)
def test_count_assignments_stops_at_limit(surface: MultibranchedSurface, limit: int, expected: int) -> None:
    """The product stops growing at the first partial product above the limit."""
    assert count_assignments(surface, limit=limit) == expected


def test_rp2_dual_graph() -> None:
    """One vertex {e+, e-} with one loop."""
    graph = only_graph(gen_rp2())
    assert graph.label == "e+e-"
    assert graph.edges == ((0, 0),)
    assert graph.betti == 1
    assert graph.is_bouquet


def test_single_prong_joins_itself() -> None:
    """A branch with one prong glues the two copies of its sector."""
    (assignment,) = enumerate_assignments(gen_x1([1]))
    (join,) = annulus_joins(gen_x1([1]), assignment)
    assert {join.first, join.second} == {SideNode(0, Side.PLUS), SideNode(0, Side.MINUS)}
    assert only_graph(gen_x1([1])).label == "e+e-"


def test_cancelling_attachments_give_an_edge() -> None:
    """Degrees +1 and -1 separate the copies: two vertices and one edge from - to +."""
    graph = only_graph(gen_x1([1, -1]))
    assert graph.label == "e+.e-"
    assert graph.edges == ((1, 0),)
    assert graph.components == 1
    assert graph.betti == 0


@pytest.mark.parametrize("n", [3, 4])
def test_x2_bouquets(n: int) -> None:
    """Every assignment of X_2(n) glues all copies into one closed surface."""
    (found,) = enumerate_dual_graphs(gen_x2(n))
    assert found.graph.is_bouquet
    assert found.graph.betti == n
    assert found.multiplicity == count_assignments(gen_x2(n))


def test_x3_torus_chain() -> None:
    """X_3(1, 1, 1): all + copies form one surface, all - copies another; three parallel edges."""
    graph = only_graph(gen_x3([1, 1, 1]))
    assert graph.label == "e1+e2+e3+.e1-e2-e3-"
    assert graph.edges == ((1, 0), (1, 0), (1, 0))
    assert graph.betti == 2
    nx_graph = graph.to_networkx()
    assert nx_graph.number_of_nodes() == 2
    assert nx_graph.number_of_edges() == 3
    assert set(nx_graph[1][0]) == {"e1", "e2", "e3"}


def test_x2_two_is_disconnected_graph() -> None:
    """The two disks of X_2(2) give two vertices with one loop each."""
    graph = only_graph(gen_x2(2))
    assert graph.label == "e1+e1-.e2+e2-"
    assert graph.components == 2
    assert graph.betti == 2


@pytest.mark.parametrize(
    "surface", [gen_rp2(), gen_x1([2, -1, 1]), gen_x1([3, -2]), gen_x2(4), gen_x3([2, 2]), gen_x3([3, 1, 1])]
)
def test_joins_preserve_orientation(surface: MultibranchedSurface) -> None:
    """No join reverses orientation, so gluing never fails the parity check."""
    for assignment in enumerate_assignments(surface):
        for prong in (p for order in assignment.orders for p in order):
            assert prong.sign * prong.face_ccw.side.orientation == 1
            assert prong.sign * prong.face_cw.side.orientation == -1
        assert not any(join.reversing for join in annulus_joins(surface, assignment))
        glue(surface, assignment)


def test_parity_conflict_raises() -> None:
    """Contradictory flips on one pair of copies cannot be oriented."""
    plus, minus = SideNode(0, Side.PLUS), SideNode(0, Side.MINUS)
    with pytest.raises(OrientationParityError, match="not orientable"):
        _check_orientable([Join("l", plus, minus, reversing=True), Join("l", plus, minus, reversing=False)])


@pytest.mark.parametrize("surface", [gen_x1([2, -1, 1]), gen_x2(4), gen_x3([2, 3])])
def test_rotation_invariance(surface: MultibranchedSurface) -> None:
    """Rotating the sequence of a branch does not change the glued graph."""
    for assignment in enumerate_assignments(surface):
        for index in range(len(surface.branches)):
            for steps in range(count_prongs(surface, surface.branch_names[index])):
                rotated = rotate_branch(assignment, index, steps)
                assert rotated.canonical() == assignment
                assert glue(surface, rotated) == glue(surface, assignment)


@pytest.mark.parametrize("surface", [gen_x1([4]), gen_x2(4), gen_x3([2, 2])])
def test_reflection_closure(surface: MultibranchedSurface) -> None:
    """Mirroring a branch order yields another enumerated assignment."""
    assignments = set(enumerate_assignments(surface))
    for assignment in assignments:
        for index in range(len(surface.branches)):
            mirrored = reverse_branch(assignment, index)
            assert mirrored.is_canonical
            assert mirrored in assignments
            assert reverse_branch(mirrored, index) == assignment


@pytest.mark.parametrize("surface", [gen_x1([2, 2, -1]), gen_x2(4), gen_x3([2, 3]), gen_x3([1, 2, 1])])
def test_multiplicities_sum_to_assignments(surface: MultibranchedSurface) -> None:
    """Distinct graphs are sorted by key and partition the assignments."""
    classes = enumerate_dual_graphs(surface)
    assert sum(found.multiplicity for found in classes) == count_assignments(surface)
    keys = [found.graph.key for found in classes]
    assert keys == sorted(set(keys))
    for found in classes:
        assert glue(surface, found.representative) == found.graph


@pytest.mark.parametrize("chunk_size", [1, 3, 2048])
def test_enumeration_independent_of_chunks_and_workers(chunk_size: int) -> None:
    """Chunking and worker processes do not change the result."""
    surface = gen_x1([2, 2, -1])
    expected = enumerate_dual_graphs(surface)
    assert enumerate_dual_graphs(surface, chunk_size=chunk_size) == expected
    assert enumerate_dual_graphs(surface, workers=2, chunk_size=chunk_size) == expected


def test_enumeration_rejects_bad_arguments() -> None:
    """Workers and chunk size must be positive."""
    with pytest.raises(ValueError, match="must be positive"):
        enumerate_dual_graphs(gen_rp2(), workers=0)


def test_glue_needs_every_branch() -> None:
    """An assignment must order the prongs of every branch."""
    with pytest.raises(ValueError, match="every branch"):
        glue(gen_x2(3), CyclicAssignment(()))


def test_to_dot_rp2() -> None:
    """One node with a self-loop labelled by the sector."""
    assert to_dot(only_graph(gen_rp2())) == (
        'digraph "e+e-" {\n  v0 [label="{e+, e-}"];\n  v0 -> v0 [label="e"];\n}\n'
    )


def test_to_dot_two_vertices() -> None:
    """Edges run from the vertex of the - copy to the vertex of the + copy."""
    assert to_dot(only_graph(gen_x1([1, -1]))) == (
        'digraph "e+.e-" {\n  v0 [label="{e+}"];\n  v1 [label="{e-}"];\n  v1 -> v0 [label="e"];\n}\n'
    )
