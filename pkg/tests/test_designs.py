from itertools import combinations

import pytest

from geochroma.designs import (
    BlockDesign,
    DesignError,
    FiniteField,
    cyclic_sts,
    design_from_dict,
    design_to_dict,
    difference_triples,
    pencil_through,
    projective_plane,
    sts9,
    validate_design,
)


@pytest.mark.parametrize("q", (2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32))
def test_field_axioms_exhaustive(q):
    ff = FiniteField(q)
    els = range(q)
    for a in els:
        assert ff.add(a, 0) == a
        assert ff.mul(a, 1) == a
        assert ff.add(a, ff.neg(a)) == 0
        if a:
            assert ff.mul(a, ff.inv(a)) == 1
    for a in els:
        for b in els:
            assert ff.add(a, b) == ff.add(b, a)
            assert ff.mul(a, b) == ff.mul(b, a)
            for c in els:
                assert ff.add(ff.add(a, b), c) == ff.add(a, ff.add(b, c))
                assert ff.mul(ff.mul(a, b), c) == ff.mul(a, ff.mul(b, c))
                assert ff.mul(a, ff.add(b, c)) == ff.add(ff.mul(a, b), ff.mul(a, c))


def test_field_rejects_non_prime_power():
    with pytest.raises(DesignError):
        FiniteField(6)


def test_plane_counts():
    p2 = projective_plane(2)
    assert p2.size == 7 and all(len(l) == 3 for l in p2.line_points)
    p3 = projective_plane(3)
    assert p3.size == 13 and all(len(l) == 4 for l in p3.line_points)


@pytest.mark.parametrize("q", (2, 3, 4, 5, 7, 8, 9))
def test_plane_axioms_exhaustive(q):
    plane = projective_plane(q)
    n = plane.size
    assert all(len(l) == q + 1 for l in plane.line_points)
    assert all(len(l) == q + 1 for l in plane.point_lines)
    for l1, l2 in combinations(range(n), 2):
        assert len(plane.line_points[l1] & plane.line_points[l2]) == 1
    for p1, p2 in combinations(range(n), 2):
        assert len(plane.point_lines[p1] & plane.point_lines[p2]) == 1


def test_pencil_disjoint_residues():
    p3 = projective_plane(3)
    residues = pencil_through(p3, 0, 4)
    assert all(len(r) == 3 for r in residues)
    for a, b in combinations(residues, 2):
        assert not set(a) & set(b)
    p8 = projective_plane(8)
    residues = pencil_through(p8, 0, 9)
    assert all(len(r) == 8 for r in residues)
    for a, b in combinations(residues, 2):
        assert not set(a) & set(b)


def test_pencil_too_many_lines():
    p3 = projective_plane(3)
    with pytest.raises(DesignError):
        pencil_through(p3, 0, 5)


def test_sts9_structure():
    design, classes = sts9()
    assert len(design.blocks) == 12
    assert validate_design(design)["valid"]
    assert len(classes) == 4
    for cls in classes:
        assert sorted(v for blk in cls for v in blk) == list(range(9))
    # the role classes the recursive construction relies on
    assert ((0, 3, 6), (1, 4, 7), (2, 5, 8)) in classes
    assert ((0, 1, 2), (3, 4, 5), (6, 7, 8)) in classes


def test_validate_design_reports_deletion():
    design, _ = sts9()
    broken = BlockDesign(n=9, blocks=design.blocks[1:], kappa=3)
    rep = validate_design(broken)
    assert not rep["valid"]
    assert len(rep["uncovered"]) == 3  # each block covers three pairs


def test_difference_triples_k4_rows():
    table = difference_triples(4)
    triples = set(table.triples())
    assert (12, 13, 25) in triples  # (3k, 3k+1, 6k+1)
    assert (2, 32, 34) in triples   # (2, 8k, 8k+2), and 2 + 32 = 34
    entries = sorted(d for t in triples for d in t)
    assert entries == list(range(1, 37))  # multiset {1..9k} exactly


def test_difference_triples_k4_box_sizes():
    table = difference_triples(4)
    by_box = {}
    for row in table.rows:
        by_box.setdefault(row.box, []).append(row)
    assert {b: 3 * len(rows) for b, rows in by_box.items()} == {1: 6, 2: 3, 3: 3}


@pytest.mark.parametrize("k", (4, 6, 8, 10))
def test_difference_triples_validator(k):
    table = difference_triples(k)
    entries = sorted(d for t in table.triples() for d in t)
    assert entries == list(range(1, 9 * k + 1))
    n = 18 * k + 1
    for d1, d2, d3 in table.triples():
        assert d1 < d2 < d3 <= 9 * k
        assert (d1 + d2) % n == d3 or (d1 + d2 + d3) % n == 0
    boxes = {row.box for row in table.rows}
    assert boxes == set(range(1, k // 2 + 2))


@pytest.mark.parametrize("k", (2, 3, 5))
def test_difference_triples_rejects_small_or_odd(k):
    with pytest.raises(DesignError):
        difference_triples(k)


def test_cyclic_sts_k4():
    table = difference_triples(4)
    design = cyclic_sts(73, table)
    assert len(design.blocks) == 73 * 72 // 6 == 876
    assert validate_design(design)["valid"]
    shifted = {tuple(sorted((v + 1) % 73 for v in b)) for b in design.blocks}
    assert shifted == set(design.blocks)


def test_cyclic_sts_wrong_n():
    table = difference_triples(4)
    with pytest.raises(DesignError):
        cyclic_sts(75, table)


def test_design_json_round_trip():
    design, _ = sts9()
    assert design_from_dict(design_to_dict(design)) == design
