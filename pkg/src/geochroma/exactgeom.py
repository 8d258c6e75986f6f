"""Exact integer geometry: orientation, crossing tests, and the part-conflict predicate.

Every predicate here is evaluated in exact integer (or rational) arithmetic;
there is no floating point anywhere.  Python integers are unbounded, so the
documented coordinate bound (|x|, |y| <= 2**30) is a data contract enforced at
load time rather than an arithmetic limit: configurations outside the bound
are rejected, never silently widened.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

COORD_BOUND = 1 << 30  # accepted coordinate magnitude for loaded configurations
GEN_BOUND = 1 << 20    # default grid for generated point sets


class GeometryError(ValueError):
    """Raised for invalid configurations or predicate misuse."""


@dataclass(frozen=True, order=True)
class Point:
    x: int
    y: int


def _xy(p):
    if isinstance(p, Point):
        return p.x, p.y
    return p[0], p[1]


def orient(p, q, r) -> int:
    """Sign of the signed area of triangle pqr: +1 ccw, -1 cw, 0 collinear."""
    px, py = _xy(p)
    qx, qy = _xy(q)
    rx, ry = _xy(r)
    d = (qx - px) * (ry - py) - (qy - py) * (rx - px)
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def proper_cross(a, b, c, d) -> bool:
    """True iff the open segments ab and cd intersect.

    A shared endpoint is not a crossing; vertex sharing is handled separately
    by parts_conflict.  Assumes the four points are in general position.
    """
    if a == c or a == d or b == c or b == d:
        return False
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    if o1 == o2 or o1 == 0 or o2 == 0:
        return False
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    return o3 != o4 and o3 != 0 and o4 != 0


def convex_cross(n: int, e1: tuple[int, int], e2: tuple[int, int]) -> bool:
    """Coordinate-free crossing test for edges of a convex n-gon.

    True iff exactly one endpoint of e2 lies in the open cyclic interval
    between the endpoints of e1.  Shared endpoints give False.
    """
    a, b = e1
    c, d = e2
    if a == c or a == d or b == c or b == d:
        return False

    def inside(lo, hi, v):
        if lo < hi:
            return lo < v < hi
        return v > lo or v < hi

    return inside(a, b, c) != inside(a, b, d)


@dataclass(frozen=True)
class Configuration:
    """A labelled vertex set of a complete geometric graph.

    mode "coordinates": points carry exact integer coordinates, no two equal,
    no three collinear.  mode "convex": vertices are 0..n-1 in clockwise
    cyclic order and no coordinates are stored; all geometry goes through
    convex_cross.
    """

    mode: str
    n: int
    points: tuple[Point, ...] = ()

    def __post_init__(self):
        if self.mode not in ("coordinates", "convex"):
            raise GeometryError(f"unknown configuration mode {self.mode!r}")


def convex_configuration(n: int) -> Configuration:
    if n < 3:
        raise GeometryError(f"convex configuration needs n >= 3, got {n}")
    return Configuration(mode="convex", n=n)


def _canonical_direction(dx: int, dy: int) -> tuple[int, int]:
    g = math.gcd(dx, dy)
    dx, dy = dx // g, dy // g
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    return dx, dy


def assert_general_position(points: Sequence[Point]) -> None:
    """Reject duplicate points and collinear triples (O(n^2) slope hashing)."""
    for i, p in enumerate(points):
        seen: dict[tuple[int, int], int] = {}
        for j in range(i + 1, len(points)):
            q = points[j]
            dx, dy = q.x - p.x, q.y - p.y
            if dx == 0 and dy == 0:
                raise GeometryError(f"duplicate point at indices {i} and {j}")
            key = _canonical_direction(dx, dy)
            if key in seen:
                raise GeometryError(
                    f"collinear triple at indices {i}, {seen[key]}, {j}"
                )
            seen[key] = j


def coordinate_configuration(points: Iterable, validate: bool = True) -> Configuration:
    pts = tuple(
        p if isinstance(p, Point) else Point(int(p[0]), int(p[1])) for p in points
    )
    if validate:
        for idx, p in enumerate(pts):
            if abs(p.x) > COORD_BOUND or abs(p.y) > COORD_BOUND:
                raise GeometryError(
                    f"point {idx} exceeds coordinate bound 2**30: ({p.x}, {p.y})"
                )
        assert_general_position(pts)
    return Configuration(mode="coordinates", n=len(pts), points=pts)


def generate_general_position(n: int, bound: int = GEN_BOUND, seed: int = 0) -> Configuration:
    """n distinct integer points with no three collinear, deterministic per seed."""
    if n < 1:
        raise GeometryError("n must be >= 1")
    if bound < 1 or bound > COORD_BOUND:
        raise GeometryError(f"bound must be in 1..2**30, got {bound}")
    rng = random.Random(seed)
    pts: list[Point] = []
    dirsets: list[set[tuple[int, int]]] = []
    occupied: set[tuple[int, int]] = set()
    attempts = 0
    limit = 5000 * n + 5000
    while len(pts) < n:
        attempts += 1
        if attempts > limit:
            raise GeometryError(
                f"could not place {n} points in general position within "
                f"bound {bound} (placed {len(pts)})"
            )
        cand = Point(rng.randint(-bound, bound), rng.randint(-bound, bound))
        if (cand.x, cand.y) in occupied:
            continue
        dirs = []
        ok = True
        for i, p in enumerate(pts):
            key = _canonical_direction(cand.x - p.x, cand.y - p.y)
            if key in dirsets[i]:
                ok = False
                break
            dirs.append(key)
        if not ok:
            continue
        for i, key in enumerate(dirs):
            dirsets[i].add(key)
        dirsets.append(set(dirs))
        occupied.add((cand.x, cand.y))
        pts.append(cand)
    return Configuration(mode="coordinates", n=n, points=tuple(pts))


def edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise GeometryError(f"degenerate edge ({u},{v})")
    return (u, v) if u < v else (v, u)


def part_edges(vertices: Sequence[int]) -> list[tuple[int, int]]:
    return [edge(u, v) for u, v in combinations(sorted(vertices), 2)]


def parts_conflict(config: Configuration, A: Iterable[int], B: Iterable[int]) -> bool:
    """True iff the parts share a vertex or contain a properly crossing edge pair."""
    sa, sb = set(A), set(B)
    if sa == sb:
        raise GeometryError("parts_conflict queried with identical parts")
    if sa & sb:
        return True
    ea = part_edges(sa)
    eb = part_edges(sb)
    if config.mode == "convex":
        n = config.n
        for e1 in ea:
            for e2 in eb:
                if convex_cross(n, e1, e2):
                    return True
        return False
    pts = config.points
    for u, v in ea:
        pu, pv = pts[u], pts[v]
        for x, y in eb:
            if proper_cross(pu, pv, pts[x], pts[y]):
                return True
    return False


def point_in_triangle(p, a, b, c, closed: bool = False) -> bool:
    """Exact containment test; p may have rational coordinates."""
    s1 = orient(p, a, b)
    s2 = orient(p, b, c)
    s3 = orient(p, c, a)
    if closed:
        return (s1 >= 0 and s2 >= 0 and s3 >= 0) or (s1 <= 0 and s2 <= 0 and s3 <= 0)
    return s1 == s2 == s3 and s1 != 0


# --- JSON interchange ------------------------------------------------------

def config_to_dict(config: Configuration) -> dict:
    d = {"mode": config.mode, "n": config.n}
    if config.mode == "coordinates":
        d["points"] = [[p.x, p.y] for p in config.points]
    return d


def config_from_dict(d: dict) -> Configuration:
    mode = d.get("mode")
    if mode == "convex":
        return convex_configuration(int(d["n"]))
    if mode == "coordinates":
        cfg = coordinate_configuration(d["points"])
        if cfg.n != int(d.get("n", cfg.n)):
            raise GeometryError("declared n does not match points array")
        return cfg
    raise GeometryError(f"unknown configuration mode {mode!r}")


def save_config(config: Configuration, path) -> None:
    with open(path, "w") as fh:
        json.dump(config_to_dict(config), fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def load_config(path) -> Configuration:
    with open(path) as fh:
        return config_from_dict(json.load(fh))
