from itertools import combinations, product

import pytest

from geochroma.exactgeom import (
    COORD_BOUND,
    Configuration,
    GeometryError,
    Point,
    config_from_dict,
    config_to_dict,
    convex_configuration,
    convex_cross,
    coordinate_configuration,
    edge,
    generate_general_position,
    orient,
    parts_conflict,
    point_in_triangle,
    proper_cross,
)


def test_orient_examples():
    assert orient(Point(0, 0), Point(1, 0), Point(2, 0)) == 0
    assert orient(Point(0, 0), Point(1, 0), Point(0, 1)) == 1
    assert orient(Point(0, 0), Point(0, 1), Point(1, 0)) == -1


def test_orient_antisymmetric_exhaustive():
    # all ordered triples on a 4x4 grid
    grid = [Point(x, y) for x in range(4) for y in range(4)]
    for p, q, r in combinations(grid, 3):
        s = orient(p, q, r)
        assert orient(q, p, r) == -s
        assert orient(p, r, q) == -s
        assert orient(r, q, p) == -s


def test_proper_cross_examples():
    assert proper_cross(Point(0, 0), Point(2, 2), Point(0, 2), Point(2, 0))
    assert not proper_cross(Point(0, 0), Point(2, 0), Point(0, 2), Point(2, 2))
    # shared endpoint is not a crossing
    assert not proper_cross(Point(0, 0), Point(2, 0), Point(2, 0), Point(2, 2))


def test_proper_cross_symmetric_and_shear_invariant():
    cfg = generate_general_position(12, seed=3)
    pts = cfg.points
    shear = [Point(p.x + 2 * p.y, p.y) for p in pts]  # det +1 integer map
    for (a, b), (c, d) in combinations(combinations(range(12), 2), 2):
        x = proper_cross(pts[a], pts[b], pts[c], pts[d])
        assert x == proper_cross(pts[c], pts[d], pts[a], pts[b])
        assert x == proper_cross(shear[a], shear[b], shear[c], shear[d])


def test_convex_cross_examples():
    assert convex_cross(6, (0, 3), (1, 4))
    assert not convex_cross(6, (0, 1), (2, 5))
    assert not convex_cross(6, (0, 1), (1, 4))  # shared endpoint


@pytest.mark.parametrize("n", range(4, 11))
def test_convex_cross_matches_parabola_coordinates(n):
    # oracle: the same predicate on an explicit convex embedding (t, t^2)
    pts = [Point(t, t * t) for t in range(n)]
    es = list(combinations(range(n), 2))
    for e1, e2 in combinations(es, 2):
        geometric = proper_cross(pts[e1[0]], pts[e1[1]], pts[e2[0]], pts[e2[1]])
        assert convex_cross(n, e1, e2) == geometric


@pytest.mark.parametrize("n", range(3, 9))
def test_convex_crossing_pairs_count(n):
    # each 4-subset of convex points yields exactly one crossing pair
    es = list(combinations(range(n), 2))
    crossings = sum(
        1 for e1, e2 in combinations(es, 2) if convex_cross(n, e1, e2)
    )
    from math import comb

    assert crossings == comb(n, 4)


def test_parts_conflict_hexagon():
    cfg = convex_configuration(6)
    assert parts_conflict(cfg, {0, 2, 4}, {1, 3, 5})
    assert not parts_conflict(cfg, {0, 1, 2}, {3, 4, 5})
    assert parts_conflict(cfg, {0, 1, 2}, {2, 3, 4})  # shared vertex


def test_parts_conflict_symmetric_and_guarded():
    cfg = convex_configuration(7)
    a, b = {0, 2, 4}, {1, 5, 6}
    assert parts_conflict(cfg, a, b) == parts_conflict(cfg, b, a)
    with pytest.raises(GeometryError):
        parts_conflict(cfg, a, a)


def test_generate_general_position_exhaustive_triples():
    cfg = generate_general_position(50, seed=7)
    for p, q, r in combinations(cfg.points, 3):
        assert orient(p, q, r) != 0


def test_generate_single_point_and_determinism():
    assert generate_general_position(1, seed=0).n == 1
    for seed in range(5):
        tri = generate_general_position(3, seed=seed)
        assert orient(*tri.points) != 0
    a = generate_general_position(20, seed=9)
    b = generate_general_position(20, seed=9)
    assert a.points == b.points
    c = generate_general_position(20, seed=10)
    assert a.points != c.points


def test_generate_bound_too_small():
    with pytest.raises(GeometryError):
        generate_general_position(40, bound=2, seed=0)


def test_configuration_rejections():
    with pytest.raises(GeometryError):
        coordinate_configuration([(0, 0), (0, 0), (1, 2)])
    with pytest.raises(GeometryError):
        coordinate_configuration([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(GeometryError):
        coordinate_configuration([(0, 0), (1, 5), (2 * COORD_BOUND, 1)])
    with pytest.raises(GeometryError):
        convex_configuration(2)
    with pytest.raises(GeometryError):
        Configuration(mode="spherical", n=3)


def test_config_json_round_trip():
    cfg = generate_general_position(15, seed=4)
    assert config_from_dict(config_to_dict(cfg)) == cfg
    conv = convex_configuration(9)
    d = config_to_dict(conv)
    assert "points" not in d
    assert config_from_dict(d) == conv


def test_edge_normalization():
    assert edge(5, 2) == (2, 5)
    with pytest.raises(GeometryError):
        edge(3, 3)


def test_point_in_triangle_closed_vs_open():
    a, b, c = Point(0, 0), Point(4, 0), Point(0, 4)
    assert point_in_triangle((1, 1), a, b, c)
    assert not point_in_triangle((2, 0), a, b, c)  # on the boundary
    assert point_in_triangle((2, 0), a, b, c, closed=True)
    assert not point_in_triangle((5, 5), a, b, c, closed=True)
