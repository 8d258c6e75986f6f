"""Edge decompositions of complete geometric graphs and their constructions.

A decomposition is a list of parts (vertex subsets, each inducing a complete
subgraph) covering every edge of the complete graph exactly once.  The
constructors here realize the explicit families: the trivial edge partition,
the pairwise-intersecting K4 family on general-position points, the convex
matching-triangle family, the recursive triangle decomposition, and the
cyclic-STS triangle decomposition with its box coloring.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

from .exactgeom import (
    Configuration,
    GeometryError,
    config_from_dict,
    config_to_dict,
    convex_configuration,
    edge,
    generate_general_position,
    parts_conflict,
    part_edges,
    proper_cross,
    convex_cross,
)
from .planecut import (
    PlanecutError,
    RegionAssignment,
    is_prime_power,
    nine_regions,
    prime_power_below,
    six_fan,
    six_parts_two_parallel,
    _projection_split,
    _candidate_normals,
)
from .designs import (
    DesignError,
    cyclic_sts,
    difference_triples,
    pencil_through,
    projective_plane,
    _IRREDUCIBLE,
)


class ConstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class Part:
    """A vertex subset of size >= 2; induced, hence complete."""

    vertices: tuple[int, ...]
    tag: str = "part"

    def __post_init__(self):
        if len(self.vertices) < 2:
            raise ConstructionError(f"part too small: {self.vertices}")
        if tuple(sorted(set(self.vertices))) != self.vertices:
            raise ConstructionError(f"part not sorted/distinct: {self.vertices}")

    def edges(self):
        return part_edges(self.vertices)


@dataclass
class Decomposition:
    config: Configuration
    parts: list[Part]
    metadata: dict = field(default_factory=dict)


def validate_decomposition(d: Decomposition) -> dict:
    """Exact-cover report: every edge of K_n in exactly one part."""
    n = d.config.n
    cover: dict[tuple[int, int], int] = {}
    for part in d.parts:
        for e in part.edges():
            cover[e] = cover.get(e, 0) + 1
        if part.vertices[-1] >= n or part.vertices[0] < 0:
            return {"uncovered": [], "repeated": [], "valid": False,
                    "error": f"part {part.vertices} out of range"}
    uncovered = [
        (u, v) for u, v in combinations(range(n), 2) if (u, v) not in cover
    ]
    repeated = [e for e, c in cover.items() if c > 1]
    return {"uncovered": uncovered, "repeated": repeated,
            "valid": not uncovered and not repeated}


def _finalize(config, raw_parts, metadata, colors=None, distinguished=None):
    """Sort parts lexicographically by vertex list; keep colors and the
    distinguished index set aligned with the new order."""
    order = sorted(range(len(raw_parts)), key=lambda i: raw_parts[i].vertices)
    parts = [raw_parts[i] for i in order]
    decomp = Decomposition(config=config, parts=parts, metadata=metadata)
    out = [decomp]
    if colors is not None:
        from .chroma import Coloring

        remapped = tuple(colors[i] for i in order)
        out.append(Coloring(colors=remapped, palette=max(remapped) + 1))
    if distinguished is not None:
        inv = {old: new for new, old in enumerate(order)}
        out.append(sorted(inv[i] for i in distinguished))
    return out[0] if len(out) == 1 else tuple(out)


def trivial_edge_decomposition(config: Configuration) -> Decomposition:
    if config.n < 2:
        raise ConstructionError("need n >= 2")
    parts = [
        Part(vertices=(u, v), tag="singleton-edge")
        for u, v in combinations(range(config.n), 2)
    ]
    meta = {"construction": "edges", "n": config.n}
    return _finalize(config, parts, meta)


# --- thm4: convex matching-triangle family --------------------------------------

class ConvexTriangleFamily(NamedTuple):
    decomposition: Decomposition
    distinguished: list[int]


def thm4_construction(n: int) -> ConvexTriangleFamily:
    """(n/3)^2 edge-disjoint, pairwise-intersecting triangles on convex n points.

    Vertices split into three arcs; the bipartite edges between the second and
    third arc are partitioned into round-robin matchings, and the edge (i, j)
    of matching k is completed to a triangle with vertex k of the first arc.
    """
    if n % 3 != 0 or n < 6:
        raise ConstructionError(f"n must be a multiple of 3, >= 6; got {n}")
    m = n // 3
    config = convex_configuration(n)
    raw = []
    covered = set()
    for i in range(m, 2 * m):
        for j in range(2 * m, 3 * m):
            k = (i + j) % m
            verts = tuple(sorted((k, i, j)))
            raw.append(Part(vertices=verts, tag=f"triangle({k};{i},{j})"))
            covered.update(part_edges(verts))
    dist = list(range(len(raw)))
    for u, v in combinations(range(n), 2):
        if (u, v) not in covered:
            raw.append(Part(vertices=(u, v), tag="singleton-edge"))
    meta = {
        "construction": "thm4",
        "n": n,
        "distinguished_triangles": m * m,
    }
    decomp, dist_idx = _finalize(config, raw, meta, distinguished=dist)
    return ConvexTriangleFamily(decomp, dist_idx)


# --- thm3: K4 family on points in general position -------------------------------

class K4Family(NamedTuple):
    decomposition: Decomposition
    distinguished: list[int]
    center: tuple[Fraction, Fraction]


def _supported_plane_order(q: int) -> bool:
    if not is_prime_power(q):
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return q in _IRREDUCIBLE
        d += 1
    return True  # prime


def largest_thm3_q(n: int) -> int:
    """Largest supported prime power q with 7q + 6 <= n."""
    q = (n - 6) // 7
    while q > 2 and not _supported_plane_order(q):
        q -= 1
    if q <= 2:
        raise ConstructionError(f"no prime power q > 2 fits 7q+6 <= {n}")
    return q


def thm3_construction(q: int, config: Configuration | None = None, seed: int = 0) -> K4Family:
    """2q^2 edge-disjoint pairwise-intersecting K4 subgraphs on >= 7q+6 points.

    A strip of q points receives the fourth labels; a six-fan splits the rest
    into alternating sectors, and a transversal design on a projective plane
    of order q pairs fan points into the K4 vertex sets.  Points beyond the
    7q+6 the construction needs are left to the fan spill; their edges become
    singleton parts.
    """
    if q <= 2 or not _supported_plane_order(q):
        raise ConstructionError(f"q must be a supported prime power > 2, got {q}")
    n = 7 * q + 6
    if config is None:
        config = generate_general_position(n, seed=seed)
    if config.mode != "coordinates" or config.n < n:
        raise ConstructionError(f"need a coordinates configuration of >= {n} points")
    n = config.n
    pts = config.points

    split = None
    for w in _candidate_normals(pts, first=(0, 1)):
        split = _projection_split(pts, range(n), w, q)
        if split is not None:
            break
    if split is None:
        raise ConstructionError("no strip direction separates the label strip")
    strip_idx, upper_idx, _strip_line = split

    from .exactgeom import Configuration as _Cfg

    sub_pts = tuple(pts[i] for i in upper_idx)
    sub = _Cfg(mode="coordinates", n=len(sub_pts), points=sub_pts)
    fan = six_fan(sub, q)
    to_global = {li: gi for li, gi in enumerate(upper_idx)}
    sectors = [[to_global[v] for v in region] for region in fan.regions]

    plane = projective_plane(q)
    z = 0
    pencil = pencil_through(plane, z, 4)
    pos = [
        {pt: idx for idx, pt in enumerate(line)} for line in pencil
    ]
    on_line = {}
    for a, line in enumerate(pencil):
        for idx, pt in enumerate(line):
            on_line[pt] = (a, idx)

    v1, u1 = sectors[0], sectors[1]
    v2, u2 = sectors[2], sectors[3]
    v3, u3 = sectors[4], sectors[5]
    v4 = sorted(strip_idx)

    raw = []
    covered = set()
    for i in range(q):
        for j in range(q):
            lam = plane.line_through(pencil[0][i], pencil[3][j])
            i2 = j2 = None
            for pt in plane.line_points[lam]:
                hit = on_line.get(pt)
                if hit is None:
                    continue
                a, idx = hit
                if a == 1:
                    i2 = idx
                elif a == 2:
                    j2 = idx
            if i2 is None or j2 is None:
                raise ConstructionError("transversal line misses a pencil line")
            for fam, s1, s2_, s3_ in (("X", v1, v2, v3), ("Y", u1, u2, u3)):
                verts = tuple(sorted((s1[i], v4[j], s2_[i2], s3_[j2])))
                raw.append(Part(vertices=verts, tag=f"{fam}({i + 1},{j + 1})"))
                covered.update(part_edges(verts))
    dist = list(range(len(raw)))
    for u, v in combinations(range(n), 2):
        if (u, v) not in covered:
            raw.append(Part(vertices=(u, v), tag="singleton-edge"))

    cx, cy = fan.center
    meta = {
        "construction": "thm3",
        "q": q,
        "n": n,
        "seed": seed,
        "distinguished_k4": 2 * q * q,
        "fan_center": [str(cx), str(cy)],
        "fan_spill": len(fan.spill),
        "strip": v4,
    }
    decomp, dist_idx = _finalize(config, raw, meta, distinguished=dist)
    return K4Family(decomp, dist_idx, fan.center)


# --- thm32: cyclic STS box coloring -----------------------------------------------

class ColoredDecomposition(NamedTuple):
    decomposition: Decomposition
    coloring: "object"


def _anchored_block(n, anchor, d1, d2):
    return tuple(sorted((anchor % n, (anchor + d1) % n, (anchor + d1 + d2) % n)))


def thm32_construction(k: int) -> ColoredDecomposition:
    """Triangle decomposition of the convex (18k+1)-gon with n(k/2+1) colors.

    Parts are the blocks of the cyclic STS generated from the difference-triple
    table; each box of rows is placed as a nested chain of base triangles, and
    color s + n(t-1) is the box-t pattern rotated by s.  The placement is
    verified pairwise with the exact conflict predicate before coloring.
    """
    table = difference_triples(k)
    n = table.n
    config = convex_configuration(n)
    design = cyclic_sts(n, table)

    by_box: dict[int, list] = {}
    for row in table.rows:
        by_box.setdefault(row.box, []).append(row)

    anchored: list[tuple[tuple[int, int, int], int, int]] = []  # (triple, anchor, box)
    for box in sorted(by_box):
        rows = by_box[box]
        base = 0
        placed = []
        for row in rows:
            c1, c2, _ = row.e789
            b1, b2, _ = row.e456
            a_c = base
            a_b = base + c1 + 1
            if len(rows) == 2:
                a_a = a_b + b1 + 1
            else:
                a_a = base + c1 + c2 + 1
            placed.append((row.e789, a_c))
            placed.append((row.e456, a_b))
            placed.append((row.e123, a_a))
            base = max(base + c1 + c2, a_a + row.e123[0] + row.e123[1]) + 1
        if base > n:
            raise ConstructionError(f"box {box}: chains overflow the cycle")
        blocks = [_anchored_block(n, a, t[0], t[1]) for t, a in placed]
        for (ta, ba), (tb, bb) in combinations(zip([p[0] for p in placed], blocks), 2):
            if set(ba) & set(bb) or parts_conflict(config, ba, bb):
                raise ConstructionError(
                    f"box {box}: triples {ta} and {tb} conflict when placed"
                )
        for triple, anchor in placed:
            anchored.append((triple, anchor, box))

    block_color: dict[tuple[int, ...], int] = {}
    for triple, anchor, box in anchored:
        d1, d2, _ = triple
        for s in range(n):
            blk = _anchored_block(n, anchor + s, d1, d2)
            if blk in block_color:
                raise ConstructionError(f"block {blk} generated twice")
            block_color[blk] = (box - 1) * n + s
    if set(block_color) != set(design.blocks):
        raise ConstructionError("anchored orbits disagree with the cyclic design")

    raw = [Part(vertices=blk, tag="triangle") for blk in design.blocks]
    colors = [block_color[p.vertices] for p in raw]
    meta = {
        "construction": "thm32",
        "k": k,
        "n": n,
        "colors": n * (k // 2 + 1),
        "blocks": len(design.blocks),
    }
    decomp, coloring = _finalize(config, raw, meta, colors=colors)
    if coloring.palette != n * (k // 2 + 1):
        raise ConstructionError(
            f"palette {coloring.palette} != n(k/2+1) = {n * (k // 2 + 1)}"
        )
    return ColoredDecomposition(decomp, coloring)


# --- thm5: recursive triangle decomposition ---------------------------------------

class RecursiveTriangles(NamedTuple):
    decomposition: Decomposition
    coloring: "object"
    stats: dict


# within one K9 (positions 0..8, position i sits in region R_{i+1}):
# the within-strip class, the cut-separated pair plus its solo mate, and the
# two diagonal classes of STS(9)
_K9_WITHIN = ((0, 3, 6), (1, 4, 7), (2, 5, 8))
_K9_PAIR = ((0, 1, 2), (3, 4, 5))
_K9_SOLO = (6, 7, 8)
_K9_DIAG = ((0, 4, 8), (1, 5, 6), (2, 3, 7), (0, 5, 7), (1, 3, 8), (2, 4, 6))


def _ekey(u, v):
    return (u, v) if u < v else (v, u)


def thm5_construction(config: Configuration, threshold: int = 72) -> RecursiveTriangles:
    """Mostly-triangle decomposition with a proper coloring, built recursively.

    At each level with at least `threshold` points, a nine-region refinement
    and a projective-plane pencil produce edge-disjoint K9s, each decomposed
    into 12 triangles; the explicit sharing rules use at most nine colors per
    K9, the three strips recurse sharing one color block, and all remaining
    edges become singleton parts colored greedily at the end.  Triangles that
    would reuse an already-covered edge are discarded.
    """
    if config.mode != "coordinates":
        raise ConstructionError("thm5 needs a coordinates configuration")
    n = config.n
    pts = config.points
    used: set[tuple[int, int]] = set()
    levels: list[dict] = []

    def leftover(idxs):
        singles = []
        for u, v in combinations(sorted(idxs), 2):
            e = _ekey(u, v)
            if e not in used:
                used.add(e)
                singles.append(e)
        return singles

    def build(idxs, depth):
        ordered = sorted(idxs)
        m = len(ordered)
        if m < threshold:
            return [], leftover(ordered), 0
        sub_pts = tuple(pts[i] for i in ordered)
        sub = Configuration(mode="coordinates", n=m, points=sub_pts)
        try:
            base = six_parts_two_parallel(sub)
        except PlanecutError:
            return [], leftover(ordered), 0
        sizes = [len(r) for r in base.regions]
        q = None
        cand = prime_power_below(max(2, m // 9))
        while cand >= 8:
            fits = all(s >= cand for s in sizes) and all(
                (sizes[i] - cand) + (sizes[i + 3] - cand) >= cand for i in range(3)
            )
            if fits and _supported_plane_order(cand):
                q = cand
                break
            cand = prime_power_below(cand - 1) if cand > 2 else 1
        if q is None:
            return [], leftover(ordered), 0
        nine = nine_regions(sub, q, base=base)

        to_global = {li: gi for li, gi in enumerate(ordered)}
        regions = [[to_global[v] for v in r] for r in nine.regions]
        strips_global = [[to_global[v] for v in s] for s in nine.strips]

        plane = projective_plane(q)
        z = 0
        pencil = pencil_through(plane, z, 9)
        on_line = {}
        for a, line in enumerate(pencil):
            for idx, ppt in enumerate(line):
                on_line[ppt] = (a, idx)

        tri_entries = []
        ncolors = 0
        k9_count = 0
        z_lines = plane.point_lines[z]
        for lam in range(plane.size):
            if lam in z_lines:
                continue
            verts9 = [None] * 9
            for ppt in plane.line_points[lam]:
                hit = on_line.get(ppt)
                if hit is not None:
                    a, idx = hit
                    verts9[a] = regions[a][idx]
            if any(v is None for v in verts9):
                raise ConstructionError("plane line misses a pencil residue")
            k9_count += 1
            slots: dict[str, int] = {}

            def color_for(key):
                nonlocal ncolors
                if key not in slots:
                    slots[key] = ncolors
                    ncolors += 1
                return slots[key]

            def try_triangle(posns, key, tag):
                tri = tuple(sorted(verts9[p] for p in posns))
                ek = [_ekey(tri[0], tri[1]), _ekey(tri[0], tri[2]), _ekey(tri[1], tri[2])]
                if any(e in used for e in ek):
                    return
                used.update(ek)
                tri_entries.append((tri, tag, color_for(key)))

            for t_i, posns in enumerate(_K9_WITHIN):
                try_triangle(posns, "within", f"triangle-W{t_i}")
            for t_i, posns in enumerate(_K9_PAIR):
                try_triangle(posns, "pair", f"triangle-P{t_i}")
            try_triangle(_K9_SOLO, "solo", "triangle-S")
            for t_i, posns in enumerate(_K9_DIAG):
                try_triangle(posns, f"diag{t_i}", f"triangle-D{t_i}")

        strip_of = {}
        for si, strip in enumerate(strips_global):
            for v in strip:
                strip_of[v] = si
        singles = []
        for u, v in combinations(ordered, 2):
            if strip_of[u] != strip_of[v]:
                e = _ekey(u, v)
                if e not in used:
                    used.add(e)
                    singles.append(e)

        levels.append({
            "depth": depth, "m": m, "q": q, "k9s": k9_count,
            "level_triangles": len(tri_entries),
            "level_colors": ncolors,
        })

        child_max = 0
        for strip in strips_global:
            c_tris, c_singles, c_n = build(strip, depth + 1)
            for tri, tag, col in c_tris:
                tri_entries.append((tri, tag, ncolors + col))
            singles.extend(c_singles)
            child_max = max(child_max, c_n)
        return tri_entries, singles, ncolors + child_max

    tri_entries, single_edges, tri_colors = build(list(range(n)), 0)

    raw = []
    colors = []
    for tri, tag, col in tri_entries:
        raw.append(Part(vertices=tri, tag=tag))
        colors.append(col)
    single_palette = _color_singletons(config, single_edges, tri_colors, raw, colors)

    total_edges = n * (n - 1) // 2
    stats = {
        "n": n,
        "threshold": threshold,
        "triangles": len(tri_entries),
        "singleton_edges": len(single_edges),
        "non_triangle_edge_fraction": len(single_edges) / total_edges,
        "triangle_colors": tri_colors,
        "singleton_colors": single_palette,
        "colors": tri_colors + single_palette,
        "levels": levels,
    }
    meta = {"construction": "thm5", **{k: v for k, v in stats.items() if k != "levels"}}
    meta["levels"] = levels
    decomp, coloring = _finalize(config, raw, meta, colors=colors)
    return RecursiveTriangles(decomp, coloring, stats)


def _edges_cross(config, e1, e2) -> bool:
    if config.mode == "convex":
        return convex_cross(config.n, e1, e2)
    p = config.points
    return proper_cross(p[e1[0]], p[e1[1]], p[e2[0]], p[e2[1]])


def _color_singletons(config, edges, base, raw, colors) -> int:
    """First-fit singleton coloring inside round-robin matching groups.

    Edges with the same endpoint-sum never share a vertex, so buckets only
    need crossing checks; colors are never shared across groups, which keeps
    the procedure near-linear at a modest palette cost (measured, reported).
    """
    n = config.n
    M = n if n % 2 == 1 else n + 1
    groups: dict[int, list] = {}
    for e in sorted(edges):
        groups.setdefault((e[0] + e[1]) % M, []).append(e)
    palette = 0
    for g in sorted(groups):
        buckets: list[list] = []
        assign = {}
        for e in groups[g]:
            for bi, bucket in enumerate(buckets):
                if all(not _edges_cross(config, e, o) for o in bucket):
                    bucket.append(e)
                    assign[e] = bi
                    break
            else:
                buckets.append([e])
                assign[e] = len(buckets) - 1
        for e in groups[g]:
            raw.append(Part(vertices=e, tag="singleton-edge"))
            colors.append(base + palette + assign[e])
        palette += len(buckets)
    return palette


# --- JSON interchange ------------------------------------------------------------

def decomposition_to_dict(d: Decomposition, coloring=None) -> dict:
    out = {
        "config": config_to_dict(d.config),
        "parts": [{"vertices": list(p.vertices), "tag": p.tag} for p in d.parts],
        "metadata": d.metadata,
    }
    if coloring is not None:
        out["coloring"] = list(coloring.colors)
    return out


def decomposition_from_dict(data: dict):
    from .chroma import Coloring

    config = config_from_dict(data["config"])
    parts = [
        Part(vertices=tuple(p["vertices"]), tag=p.get("tag", "part"))
        for p in data["parts"]
    ]
    d = Decomposition(config=config, parts=parts, metadata=data.get("metadata", {}))
    coloring = None
    if "coloring" in data and data["coloring"] is not None:
        cols = tuple(data["coloring"])
        coloring = Coloring(colors=cols, palette=max(cols) + 1 if cols else 0)
    return d, coloring


def save_decomposition(d: Decomposition, path, coloring=None) -> None:
    with open(path, "w") as fh:
        json.dump(decomposition_to_dict(d, coloring), fh, sort_keys=True,
                  separators=(",", ":"))
        fh.write("\n")


def load_decomposition(path):
    with open(path) as fh:
        return decomposition_from_dict(json.load(fh))
