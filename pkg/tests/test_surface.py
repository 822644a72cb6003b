"""Tests for the multibranched surface model and the .mbs format."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import replace
from typing import TYPE_CHECKING

import pytest

from mbs.obstruction.families import gen_rp2, gen_x1, gen_x2, gen_x3
from mbs.obstruction.obstruction import evaluate
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
    count_prongs,
    degree_matrix,
    parse_mbs,
    read_mbs,
    rename,
    require_connected,
    serialize_mbs,
)

if TYPE_CHECKING:
    from pathlib import Path

RP2_TEXT = """\
# real projective plane
branch l
sector e genus 0
attach e l 2
"""


def test_parse_rp2() -> None:
    """The projective plane has one branch, one sector and degree 2."""
    surface = parse_mbs(RP2_TEXT)
    assert surface.branch_names == ("l",)
    assert surface.sector_names == ("e",)
    assert surface.sector("e").boundary == (Attachment("l", 2),)
    assert algebraic_degree(surface, "e", "l") == 2
    assert surface == gen_rp2()


def test_serialize_layout() -> None:
    """Branches come first, then each sector followed by its attachments."""
    assert serialize_mbs(gen_x3([2, 3])) == (
        "branch l1\n"
        "branch l2\n"
        "sector e1 genus 0\n"
        "attach e1 l1 2\n"
        "attach e1 l2 -1\n"
        "sector e2 genus 0\n"
        "attach e2 l2 3\n"
        "attach e2 l1 -1\n"
    )


@pytest.mark.parametrize(
    "surface", [gen_rp2(), gen_x1([1, -1, 3]), gen_x2(4), gen_x3([1, 1, 1]), gen_x3([2, 5])]
)
def test_serialize_parse(surface: MultibranchedSurface) -> None:
    """Serialized surfaces parse back to equal surfaces."""
    assert parse_mbs(serialize_mbs(surface)) == surface


def test_read_mbs(tmp_path: Path) -> None:
    """Files are read as UTF-8 text."""
    path = tmp_path / "rp2.mbs"
    path.write_text(RP2_TEXT, encoding="utf-8")
    assert read_mbs(path) == gen_rp2()


def test_algebraic_degree_sums_attachments() -> None:
    """Attachments to the same branch add up, and cancel for opposite signs."""
    assert algebraic_degree(gen_x1([1, -1]), "e", "l") == 0
    assert algebraic_degree(gen_x1([1, 1]), "e", "l") == 2
    assert algebraic_degree(gen_x1([3, -1, 2]), "e", "l") == 4


def test_algebraic_degree_zero_for_unrelated_branch() -> None:
    """A sector not meeting a branch has degree 0 on it."""
    assert algebraic_degree(gen_x2(3), "e1", "l1") == 0
    assert algebraic_degree(gen_x2(3), "e1", "l2") == 1


def test_algebraic_degree_unknown_ids() -> None:
    """Unknown ids raise NotFoundError."""
    surface = gen_rp2()
    with pytest.raises(NotFoundError, match="Branch 'x' not found"):
        algebraic_degree(surface, "e", "x")
    with pytest.raises(NotFoundError, match="Sector 'x' not found"):
        algebraic_degree(surface, "x", "l")


def test_degree_matrix_x3() -> None:
    """Diagonal k, cyclic superdiagonal -1."""
    assert degree_matrix(gen_x3([2, 3, 4])).tolist() == [[2, -1, 0], [0, 3, -1], [-1, 0, 4]]


def test_count_prongs() -> None:
    """Prongs count |degree| per attachment."""
    assert count_prongs(gen_rp2(), "l") == 2
    assert count_prongs(gen_x1([1, -3]), "l") == 4
    assert count_prongs(gen_x2(5), "l1") == 4


def test_rename_keeps_degrees() -> None:
    """Renaming changes ids only."""
    renamed = rename(gen_x3([2, 2]), {"l1": "a", "l2": "b"}, {"e1": "s", "e2": "t"})
    assert renamed.branch_names == ("a", "b")
    assert renamed.sector_names == ("s", "t")
    assert degree_matrix(renamed).tolist() == degree_matrix(gen_x3([2, 2])).tolist()


def _outcomes(surface: MultibranchedSurface) -> tuple[str, Counter[tuple[str, int | None, int]]]:
    verdict = evaluate(surface)
    return verdict.overall.value, Counter((r.outcome.value, r.gcd, r.multiplicity) for r in verdict.reports)


@pytest.mark.parametrize("surface", [gen_rp2(), gen_x2(4), gen_x3([2, 2, 2]), gen_x3([1, 1, 1])])
def test_rename_keeps_verdict(surface: MultibranchedSurface) -> None:
    """Renaming every id by a bijection, here reversing their sort order, leaves the verdict unchanged."""
    count = len(surface.branches) + len(surface.sectors)
    branch_map = {name: f"z{count - i}" for i, name in enumerate(surface.branch_names)}
    sector_map = {name: f"y{count - i}" for i, name in enumerate(surface.sector_names)}
    renamed = rename(surface, branch_map, sector_map)
    assert _outcomes(renamed) == _outcomes(surface)
    assert evaluate(renamed).assignments == evaluate(surface).assignments


@pytest.mark.parametrize("surface", [gen_x1([2, -1, 1]), gen_x2(4), gen_x3([2, 3])])
def test_attachment_order_is_irrelevant(surface: MultibranchedSurface) -> None:
    """Permuting the boundary circles of the first sector keeps degrees and the verdict."""
    first, *others = surface.sectors
    for boundary in itertools.permutations(first.boundary):
        permuted = MultibranchedSurface(
            branches=surface.branches, sectors=(replace(first, boundary=boundary), *others)
        )
        for sector in surface.sector_names:
            for branch in surface.branch_names:
                assert algebraic_degree(permuted, sector, branch) == algebraic_degree(surface, sector, branch)
        assert degree_matrix(permuted).tolist() == degree_matrix(surface).tolist()
        assert _outcomes(permuted) == _outcomes(surface)


@pytest.mark.parametrize(
    ("text", "lineno", "match"),
    [
        ("branch\n", 1, "expected 'branch <id>'"),
        ("branch l\nbranch l\n", 2, "duplicate branch id 'l'"),
        ("branch l\nsector e genus -1\n", 2, "expected 'sector"),
        ("branch l\nsector e genus 0\nsector e genus 0\n", 3, "duplicate sector id 'e'"),
        ("branch l\nattach e l 1\n", 2, "unknown sector 'e'"),
        ("branch l\nsector e genus 0\nattach e m 1\n", 3, "unknown branch 'm'"),
        ("branch l\nsector e genus 0\nattach e l 0\n", 3, "attachment degree must be nonzero"),
        ("branch l\nsector e genus 0\nattach e l two\n", 3, "expected 'attach"),
        ("\n\nvertex v\n", 3, "unknown keyword 'vertex'"),
    ],
)
def test_parse_errors(text: str, lineno: int, match: str) -> None:
    """Syntax errors report their line."""
    with pytest.raises(MBSParseError, match=match) as excinfo:
        parse_mbs(text)
    assert excinfo.value.lineno == lineno
    assert str(excinfo.value).startswith(f"line {lineno}: ")


@pytest.mark.parametrize(
    ("text", "match"),
    [
        ("", "at least one sector"),
        ("# only a comment\n", "at least one sector"),
        ("branch l\nsector e genus 0\n", "has no attachments"),
        ("branch l\nbranch m\nsector e genus 0\nattach e l 2\n", "Branch 'm' is not referenced"),
    ],
)
def test_invalid_surfaces(text: str, match: str) -> None:
    """Model invariants are enforced after parsing."""
    with pytest.raises(SurfaceError, match=match):
        parse_mbs(text)


def test_parse_rejects_disconnected() -> None:
    """Parsing requires a connected complex."""
    with pytest.raises(DisconnectedSurfaceError, match="2 components"):
        parse_mbs(serialize_mbs(gen_x2(2)))


def test_generators_may_be_disconnected() -> None:
    """X_2(2) is two disks on distinct branches."""
    surface = gen_x2(2)
    assert not surface.is_connected
    with pytest.raises(DisconnectedSurfaceError):
        require_connected(surface)
    assert require_connected(gen_x2(3)) is not None


def test_constructor_validation() -> None:
    """Direct construction enforces the same invariants."""
    with pytest.raises(SurfaceError, match="Duplicate branch id"):
        MultibranchedSurface((Branch("l"), Branch("l")), (Sector("e", 0, (Attachment("l", 1),)),))
    with pytest.raises(SurfaceError, match="negative genus"):
        MultibranchedSurface((Branch("l"),), (Sector("e", -1, (Attachment("l", 1),)),))
    with pytest.raises(NotFoundError, match="unknown branch 'm'"):
        MultibranchedSurface((Branch("l"),), (Sector("e", 0, (Attachment("m", 1),)),))
    with pytest.raises(SurfaceError, match="degree 0"):
        MultibranchedSurface((Branch("l"),), (Sector("e", 0, (Attachment("l", 0),)),))


def test_genus_is_metadata() -> None:
    """Genus survives a round trip but does not change degrees."""
    surface = parse_mbs("branch l\nsector e genus 3\nattach e l 2\n")
    assert surface.sector("e").genus == 3
    assert "sector e genus 3" in serialize_mbs(surface)
    assert degree_matrix(surface).tolist() == degree_matrix(gen_rp2()).tolist()
