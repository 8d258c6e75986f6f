import random
from fractions import Fraction
from itertools import combinations

import pytest

from geochroma.exactgeom import convex_configuration, generate_general_position
from geochroma.constructions import (
    thm3_construction,
    thm4_construction,
    thm32_construction,
    trivial_edge_decomposition,
)
from geochroma.chroma import (
    AlgebraicX,
    ChromaError,
    Coloring,
    ConflictGraph,
    bound_evaluators,
    clique_index,
    conflict_graph,
    exact_chromatic_index,
    greedy_color,
    max_intersecting_family,
    paper_x,
    tau_point,
    triangle_census,
    triangle_length,
    verify_coloring,
)
from geochroma.experiments import _brute_force_palette, _random_instance


def test_conflict_graph_convex4():
    d = trivial_edge_decomposition(convex_configuration(4))
    g = conflict_graph(d)
    idx = {p.vertices: i for i, p in enumerate(d.parts)}
    assert (g.adj[idx[(0, 2)]] >> idx[(1, 3)]) & 1  # crossing diagonals
    assert not (g.adj[idx[(0, 1)]] >> idx[(2, 3)]) & 1
    assert (g.adj[idx[(0, 1)]] >> idx[(0, 3)]) & 1  # shared vertex


def test_conflict_graph_thm4_distinguished_clique():
    fam = thm4_construction(9)
    g = conflict_graph(fam.decomposition)
    for i, j in combinations(fam.distinguished, 2):
        assert (g.adj[i] >> j) & 1


def _graph(m, edges):
    adj = [0] * m
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return ConflictGraph(m=m, adj=tuple(adj))


def test_greedy_edgeless_and_complete():
    g0 = _graph(5, [])
    assert greedy_color(g0).palette == 1
    gk = _graph(5, combinations(range(5), 2))
    assert greedy_color(gk).palette == 5


def test_verify_coloring_basics():
    d = trivial_edge_decomposition(convex_configuration(4))
    m = len(d.parts)
    assert verify_coloring(d, Coloring(colors=tuple(range(m)), palette=m)) == []
    assert verify_coloring(d, Coloring(colors=(0,) * m, palette=1)) != []
    with pytest.raises(ChromaError):
        verify_coloring(d, Coloring(colors=(0,), palette=1))


def test_exact_chromatic_single_part_and_bounds():
    g1 = _graph(1, [])
    res = exact_chromatic_index(g1)
    assert (res.lower, res.upper, res.optimal) == (1, 1, True)
    # 5-cycle: chromatic number 3
    c5 = _graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    res = exact_chromatic_index(c5)
    assert (res.lower, res.upper, res.optimal) == (3, 3, True)


def test_exact_chromatic_convex5_edges():
    d = trivial_edge_decomposition(convex_configuration(5))
    res = exact_chromatic_index(conflict_graph(d))
    assert res.optimal and res.lower >= 5
    assert verify_coloring(d, res.coloring) == []


def test_exact_matches_brute_force_sampled():
    rng = random.Random(99)
    for _ in range(30):
        n = rng.randint(4, 8)
        d = _random_instance(rng, n)
        g = conflict_graph(d)
        cl = clique_index(g)
        res = exact_chromatic_index(g)
        greedy = greedy_color(g)
        brute = _brute_force_palette(g)
        assert res.optimal
        assert cl.size <= res.lower == res.upper == brute <= greedy.palette


def test_greedy_convex6_edges_needs_six():
    # n <= chromatic index of the trivial edge decomposition
    d = trivial_edge_decomposition(convex_configuration(6))
    g = conflict_graph(d)
    greedy = greedy_color(g)
    assert greedy.palette >= 6
    assert verify_coloring(d, greedy) == []


def test_exact_chromatic_budget_flag():
    rng = random.Random(17)
    edges = [(i, j) for i, j in combinations(range(30), 2) if rng.random() < 0.5]
    res = exact_chromatic_index(_graph(30, edges), budget=40)
    assert not res.optimal
    assert res.lower <= res.upper
    assert res.coloring is not None and res.coloring.palette == res.upper


def test_clique_index_basics():
    assert clique_index(_graph(4, [])).size == 1
    full = _graph(6, combinations(range(6), 2))
    res = clique_index(full)
    assert res.size == 6 and res.exact and res.members == list(range(6))


def test_clique_index_thm3():
    fam = thm3_construction(3, seed=1)
    g = conflict_graph(fam.decomposition)
    res = clique_index(g, budget=400_000)
    assert res.size >= 18


def test_clique_budget_flag():
    rng = random.Random(5)
    edges = [(i, j) for i, j in combinations(range(40), 2) if rng.random() < 0.5]
    res = clique_index(_graph(40, edges), budget=50)
    assert not res.exact
    assert res.size >= 1


def test_paper_x_value():
    x = paper_x()
    assert x.floor() == 10
    lo, hi = x.interval()
    assert Fraction(10) < lo < hi < Fraction(11)
    assert x.cmp_rational(Fraction(109, 10)) < 0   # x < 10.9
    assert x.cmp_rational(Fraction(108, 10)) > 0   # x > 10.8


def test_triangle_length():
    assert triangle_length(9, (0, 3, 6)) == 3
    assert triangle_length(10, (0, 1, 9)) == 1
    for verts in combinations(range(9), 3):
        assert triangle_length(9, verts) <= 3  # length <= floor(n/3)


def test_census_thm32():
    dec, col = thm32_construction(4)
    census = triangle_census(dec, col)
    assert census.limit == 8
    assert census.violations == []
    assert max(census.per_class_large.values()) <= 8
    assert len(census.lengths) == 876


def test_census_single_triangle_threshold():
    from geochroma.constructions import Decomposition, Part

    cfg = convex_configuration(9)
    parts = [Part(vertices=t, tag="triangle") for t in (((0, 3, 6)),)]
    parts += [
        Part(vertices=(u, v), tag="singleton-edge")
        for u, v in combinations(range(9), 2)
        if (u, v) not in {(0, 3), (3, 6), (0, 6)}
    ]
    parts.sort(key=lambda p: p.vertices)
    d = Decomposition(config=cfg, parts=parts, metadata={})
    col = Coloring(colors=tuple(range(len(parts))), palette=len(parts))
    # length 3 vs n/x: 3 >= 9/3 with x = 3 -> large
    census = triangle_census(d, col, x=3)
    assert sum(census.per_class_large.values()) == 1
    # x = 2 rejected (below 3)
    with pytest.raises(ChromaError):
        triangle_census(d, col, x=2)
    # huge x makes every triangle large but the limit grows too
    census = triangle_census(d, col, x=100)
    assert sum(census.per_class_large.values()) == 1


def test_census_equality_is_large():
    from geochroma.constructions import Decomposition, Part

    cfg = convex_configuration(12)
    tri = Part(vertices=(0, 4, 8), tag="triangle")  # length 4 = n/x at x = 3
    parts = [tri] + [
        Part(vertices=(u, v), tag="singleton-edge")
        for u, v in combinations(range(12), 2)
        if (u, v) not in {(0, 4), (4, 8), (0, 8)}
    ]
    parts.sort(key=lambda p: p.vertices)
    d = Decomposition(config=cfg, parts=parts, metadata={})
    col = Coloring(colors=tuple(range(len(parts))), palette=len(parts))
    census = triangle_census(d, col, x=3)
    assert sum(census.per_class_large.values()) == 1


def test_bound_evaluators():
    assert bound_evaluators(12, "prop1").lo == Fraction(22)
    assert bound_evaluators(12, "prop2").lo == Fraction(11)
    assert bound_evaluators(7, "thm3").lo == Fraction(2 * 49, 49)
    v = bound_evaluators(73, "thm33")
    assert v.hi - v.lo < Fraction(1, 10**10)
    assert Fraction(43) < v.lo < v.hi < Fraction(44)
    denom = bound_evaluators(73, "thm33_denom")
    assert denom.hi < 119  # 60 + 24 sqrt 6 < 119
    assert Fraction(118) < denom.lo
    with pytest.raises(ChromaError):
        bound_evaluators(10, "unknown")


def test_bound_evaluator_with_constant():
    exact = bound_evaluators(16, "thm5", c=1)
    assert exact.lo <= Fraction(16 * 16, 9) + 64 <= exact.hi


def test_max_intersecting_family_small():
    res = max_intersecting_family(convex_configuration(3), 3)
    assert len(res.family) == 1 and res.exact


def test_max_intersecting_family_edges_n5():
    cfg = convex_configuration(5)
    res = max_intersecting_family(cfg, 2)
    assert res.exact
    assert len(res.family) == 5  # the star-plus-ear / pentagram families
    from geochroma.exactgeom import parts_conflict

    for a, b in combinations(res.family, 2):
        assert set(a) & set(b) or parts_conflict(cfg, a, b)


def test_max_intersecting_family_triangles_n6():
    res = max_intersecting_family(convex_configuration(6), 3)
    assert res.exact
    # the exhaustive optimum is 4; the conjectured (n/3)^2 + 1 = 5 is not
    # attainable at n = 6 (no five edge-disjoint triangles fit in K_6)
    assert len(res.family) == 4


def test_tau_point_triangle():
    cfg = generate_general_position(3, seed=1)
    pts = cfg.points
    cx = Fraction(sum(p.x for p in pts), 3)
    cy = Fraction(sum(p.y for p in pts), 3)
    assert tau_point(cfg, (cx, cy)) == (1, True)
    far = (max(p.x for p in pts) + 100, max(p.y for p in pts) + 100)
    assert tau_point(cfg, far) == (0, True)


def test_tau_point_fan_center():
    from geochroma.planecut import six_fan

    cfg = generate_general_position(6, seed=5)
    fan = six_fan(cfg, 1)
    res = tau_point(cfg, fan.center)
    assert res.exact
    assert res.count == 4  # meets the n^2/9 = 4 reference bound
    with pytest.raises(ChromaError):
        tau_point(cfg, (cfg.points[0].x, cfg.points[0].y))
