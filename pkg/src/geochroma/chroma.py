"""Conflict graphs, colorings, clique index, census and bound evaluators.

Conflict graphs are stored as bitmask adjacency rows.  The exact solvers are
deterministic: DSATUR ties break to the lowest part index, the exact colorer
deepens the palette one color at a time branching on the lowest-index
uncolored part, and the clique search explores candidates in ascending order.
All threshold comparisons involving the irrational census parameter are
decided by exact integer arithmetic (squaring), never floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

from .exactgeom import Configuration, parts_conflict, point_in_triangle, part_edges
from .constructions import Decomposition


class ChromaError(ValueError):
    pass


class _BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class Coloring:
    """Part index -> 0-based color id."""

    colors: tuple[int, ...]
    palette: int


@dataclass(frozen=True)
class ConflictGraph:
    """Symmetric irreflexive adjacency over part indices (bitmask rows)."""

    m: int
    adj: tuple[int, ...]

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()


def _bits(x: int):
    while x:
        b = x & -x
        yield b.bit_length() - 1
        x ^= b


def conflict_graph(d: Decomposition) -> ConflictGraph:
    """All-pairs conflict relation; quadratic in the number of parts."""
    m = len(d.parts)
    adj = [0] * m
    for i in range(m):
        vi = d.parts[i].vertices
        for j in range(i + 1, m):
            if parts_conflict(d.config, vi, d.parts[j].vertices):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return ConflictGraph(m=m, adj=tuple(adj))


def verify_coloring(d: Decomposition, c: Coloring) -> list[tuple[int, int]]:
    """Violating part pairs (same color, conflicting); empty iff proper."""
    if len(c.colors) != len(d.parts):
        raise ChromaError("coloring does not cover all parts")
    groups: dict[int, list[int]] = {}
    for i, col in enumerate(c.colors):
        groups.setdefault(col, []).append(i)
    bad = []
    for members in groups.values():
        for i, j in combinations(members, 2):
            if parts_conflict(d.config, d.parts[i].vertices, d.parts[j].vertices):
                bad.append((i, j))
    return bad


def greedy_color(g: ConflictGraph) -> Coloring:
    """DSATUR: highest saturation first, ties to the lowest part index."""
    m = g.m
    if m == 0:
        return Coloring(colors=(), palette=0)
    colors = [-1] * m
    neigh: list[set[int]] = [set() for _ in range(m)]
    for _ in range(m):
        best, best_sat = -1, -1
        for i in range(m):
            if colors[i] < 0 and len(neigh[i]) > best_sat:
                best, best_sat = i, len(neigh[i])
        c = 0
        while c in neigh[best]:
            c += 1
        colors[best] = c
        for j in _bits(g.adj[best]):
            neigh[j].add(c)
    return Coloring(colors=tuple(colors), palette=max(colors) + 1)


# --- maximum clique -------------------------------------------------------------

class CliqueResult(NamedTuple):
    size: int
    exact: bool
    members: list[int]


def clique_index(g: ConflictGraph, budget: int = 2_000_000) -> CliqueResult:
    """Maximum pairwise-adjacent part family; exact when the search finishes
    within the node budget, otherwise the best clique found so far."""
    m = g.m
    if m == 0:
        return CliqueResult(0, True, [])
    adj = g.adj
    best = {"size": 0, "members": []}
    nodes = [0]

    def expand(R: list[int], P: int):
        nodes[0] += 1
        if nodes[0] > budget:
            raise _BudgetExceeded
        if P == 0:
            if len(R) > best["size"]:
                best["size"], best["members"] = len(R), list(R)
            return
        if len(R) + P.bit_count() <= best["size"]:
            return
        pivot, pbest = -1, -1
        for u in _bits(P):
            c = (P & adj[u]).bit_count()
            if c > pbest:
                pivot, pbest = u, c
        for v in _bits(P & ~adj[pivot]):
            expand(R + [v], P & adj[v])
            P &= ~(1 << v)
        if len(R) > best["size"]:
            best["size"], best["members"] = len(R), list(R)

    exact = True
    try:
        expand([], (1 << m) - 1)
    except _BudgetExceeded:
        exact = False
    return CliqueResult(best["size"], exact, sorted(best["members"]))


# --- exact chromatic index --------------------------------------------------------

class ChromaticBounds(NamedTuple):
    lower: int
    upper: int
    optimal: bool
    coloring: Coloring | None


def exact_chromatic_index(g: ConflictGraph, budget: int = 2_000_000) -> ChromaticBounds:
    """Iterative deepening on palette size, seeded by a clique lower bound and
    a DSATUR upper bound; bounds are always sound, exact when closed in budget."""
    m = g.m
    if m == 0:
        return ChromaticBounds(0, 0, True, Coloring((), 0))
    greedy = greedy_color(g)
    ub = greedy.palette
    best_col = greedy
    cl = clique_index(g, budget=min(budget, 300_000))
    lb = max(1, cl.size)
    remaining = [budget]
    for k in range(lb, ub):
        res = _try_color(g, k, cl.members, remaining)
        if res is None:
            return ChromaticBounds(lb, ub, False, best_col)
        if res is False:
            lb = k + 1
            continue
        return ChromaticBounds(k, k, True, Coloring(tuple(res), k))
    return ChromaticBounds(ub, ub, True, best_col)


def _try_color(g: ConflictGraph, k: int, seed_clique: list[int], remaining: list[int]):
    """Find a k-coloring (tuple), prove impossibility (False), or run out of
    budget (None).  Branch on the lowest-index uncolored part, colors ascending,
    never opening more than one fresh color."""
    m = g.m
    adj = g.adj
    if len(seed_clique) > k:
        return False
    full = (1 << k) - 1
    colors = [-1] * m
    avail = [full] * m

    def assign(v: int, c: int, trail: list[int]) -> bool:
        colors[v] = c
        bit = 1 << c
        for u in _bits(adj[v]):
            if colors[u] < 0 and avail[u] & bit:
                avail[u] &= ~bit
                trail.append(u)
                if avail[u] == 0:
                    return False
        return True

    pre_trail: list[int] = []
    for ci, v in enumerate(seed_clique):
        if not assign(v, ci, pre_trail):
            return False
    max_used = [max(len(seed_clique) - 1, -1)]

    def undo(v: int, c: int, trail: list[int]):
        colors[v] = -1
        bit = 1 << c
        for u in trail:
            avail[u] |= bit

    def dfs() -> bool | None:
        remaining[0] -= 1
        if remaining[0] < 0:
            return None
        v = -1
        for i in range(m):
            if colors[i] < 0:
                v = i
                break
        if v < 0:
            return True
        cap = min(k - 1, max_used[0] + 1)
        options = avail[v] & ((1 << (cap + 1)) - 1)
        for c in _bits(options):
            trail: list[int] = []
            ok = assign(v, c, trail)
            bumped = False
            if c > max_used[0]:
                max_used[0] = c
                bumped = True
            if ok:
                sub = dfs()
                if sub:
                    return True
                if sub is None:
                    return None
            if bumped:
                max_used[0] = c - 1
            undo(v, c, trail)
        return False

    res = dfs()
    if res is True:
        return list(colors)
    return res


# --- exact algebraic census threshold ----------------------------------------------

_SQRT6_PREC = 10 ** 50
_SQRT6_NUM = math.isqrt(6 * _SQRT6_PREC * _SQRT6_PREC)
SQRT6_LO = Fraction(_SQRT6_NUM, _SQRT6_PREC)
SQRT6_HI = Fraction(_SQRT6_NUM + 1, _SQRT6_PREC)


@dataclass(frozen=True)
class AlgebraicX:
    """The value a + b*sqrt(6) with rational a, b >= 0; exact comparisons."""

    a: Fraction
    b: Fraction

    def cmp_rational(self, r) -> int:
        """Sign of (a + b sqrt 6) - r, decided by exact squaring."""
        s = self.a - Fraction(r)
        if self.b == 0:
            return (s > 0) - (s < 0)
        if s >= 0:
            return 1
        lhs = 6 * self.b * self.b
        rhs = s * s
        return (lhs > rhs) - (lhs < rhs)

    def floor(self) -> int:
        k = int(self.a + self.b * SQRT6_HI)
        while self.cmp_rational(k + 1) >= 0:
            k += 1
        while self.cmp_rational(k) < 0:
            k -= 1
        return k

    def interval(self) -> tuple[Fraction, Fraction]:
        return self.a + self.b * SQRT6_LO, self.a + self.b * SQRT6_HI

    def ratio_at_least(self, num: int, den: int) -> bool:
        """True iff num/den <= a + b sqrt 6 ... used as `t >= n/x` via t*x >= n."""
        # decides t*x >= n with t = den, n = num: den*(a+b sqrt6) - num >= 0
        s = self.a * den - num
        if self.b == 0:
            return s >= 0
        if s >= 0:
            return True
        return 6 * (self.b * den) ** 2 >= s * s


def paper_x() -> AlgebraicX:
    """x = 2(3 + sqrt 6), the census threshold minimizing the bound constant."""
    return AlgebraicX(Fraction(6), Fraction(2))


def _as_threshold(x) -> AlgebraicX:
    if x is None:
        return paper_x()
    if isinstance(x, AlgebraicX):
        return x
    return AlgebraicX(Fraction(x), Fraction(0))


# --- triangle census ----------------------------------------------------------------

def cyclic_length(n: int, u: int, v: int) -> int:
    d = abs(u - v) % n
    return min(d, n - d)


def triangle_length(n: int, verts) -> int:
    a, b, c = verts
    return min(cyclic_length(n, a, b), cyclic_length(n, b, c), cyclic_length(n, a, c))


@dataclass
class TriangleCensus:
    x: str
    limit: int
    lengths: dict[int, int]
    per_class_large: dict[int, int]
    violations: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "limit": self.limit,
            "per_class_large": self.per_class_large,
            "violations": self.violations,
            "max_class_large": max(self.per_class_large.values(), default=0),
        }


def triangle_census(d: Decomposition, c: Coloring, x=None) -> TriangleCensus:
    """Count large triangles per color class; flag classes beyond floor(x)-2.

    A triangle is large when its length is at least n/x, with the boundary
    case (length exactly n/x) classified large; the comparison is exact.
    """
    if d.config.mode != "convex":
        raise ChromaError("triangle_census needs a convex configuration")
    xa = _as_threshold(x)
    if xa.cmp_rational(3) < 0:
        raise ChromaError("threshold x must be >= 3")
    n = d.config.n
    limit = xa.floor() - 2
    lengths: dict[int, int] = {}
    per_class: dict[int, int] = {}
    for i, part in enumerate(d.parts):
        if len(part.vertices) > 3:
            raise ChromaError(f"part {i} is not a triangle or edge: {part.vertices}")
        if len(part.vertices) != 3:
            continue
        t = triangle_length(n, part.vertices)
        lengths[i] = t
        col = c.colors[i]
        per_class.setdefault(col, 0)
        if xa.ratio_at_least(n, t):  # t >= n/x  <=>  t*x >= n
            per_class[col] += 1
    violations = sorted(col for col, cnt in per_class.items() if cnt > limit)
    return TriangleCensus(
        x=f"{xa.a}+{xa.b}*sqrt(6)" if xa.b else str(xa.a),
        limit=limit,
        lengths=lengths,
        per_class_large=per_class,
        violations=violations,
    )


# --- closed-form bound evaluators ----------------------------------------------------

class BoundValue(NamedTuple):
    lo: Fraction
    hi: Fraction

    def midpoint(self) -> float:
        return float((self.lo + self.hi) / 2)

    def exact(self) -> bool:
        return self.lo == self.hi


def _sqrt_interval(v: Fraction) -> tuple[Fraction, Fraction]:
    scale = 10 ** 40
    num = math.isqrt(int(v * scale * scale))
    return Fraction(num, scale), Fraction(num + 1, scale)


def bound_evaluators(n: int, variant: str, c=0, x=None) -> BoundValue:
    """Exact (interval) evaluation of the named closed-form bounds.

    Asymptotic terms appear as explicit finite-n expressions with the constant
    `c` exposed as a parameter; irrational values are returned as tight
    rational intervals.
    """
    if n < 3:
        raise ChromaError("n must be >= 3")
    c = Fraction(c)
    binom = Fraction(n * (n - 1), 2)
    if variant == "prop1":
        lo, hi = _sqrt_interval(Fraction(n) ** 3)
        return BoundValue(binom / 3 + c * lo, binom / 3 + c * hi)
    if variant == "prop2":
        lo, hi = _sqrt_interval(Fraction(n) ** 3)
        return BoundValue(binom / 6 + c * lo, binom / 6 + c * hi)
    if variant == "thm3":
        v = Fraction(2 * n * n, 49) - c * n
        return BoundValue(v, v)
    if variant == "thm4":
        v = Fraction(n * n, 9) - c
        return BoundValue(v, v)
    if variant == "thm5":
        lo, hi = _sqrt_interval(Fraction(n) ** 3)
        return BoundValue(Fraction(n * n, 9) + c * lo, Fraction(n * n, 9) + c * hi)
    if variant == "thm32":
        v = Fraction(n * n, 36) + c * n
        return BoundValue(v, v)
    if variant == "thm33":
        xa = _as_threshold(x)
        xlo, xhi = xa.interval()
        num_lo = binom / 3 - Fraction(n * n) / xlo
        num_hi = binom / 3 - Fraction(n * n) / xhi
        return BoundValue(num_lo / (xhi - 2), num_hi / (xlo - 2))
    if variant == "thm33_denom":
        xa = _as_threshold(x)
        xlo, xhi = xa.interval()
        # 6x(x-2)/(x-6), the effective n^2 denominator of the thm33 bound
        return BoundValue(
            6 * xlo * (xlo - 2) / (xhi - 6), 6 * xhi * (xhi - 2) / (xlo - 6)
        )
    raise ChromaError(f"unknown bound variant {variant!r}")


# --- exhaustive searches ---------------------------------------------------------------

class FamilyResult(NamedTuple):
    family: list[tuple[int, ...]]
    exact: bool


def max_intersecting_family(config: Configuration, k: int, budget: int = 2_000_000) -> FamilyResult:
    """Maximum family of pairwise-conflicting, pairwise edge-disjoint k-vertex
    parts, by exhaustive clique search over all candidate parts."""
    if k not in (2, 3):
        raise ChromaError("part size must be 2 or 3")
    cands = [tuple(t) for t in combinations(range(config.n), k)]
    m = len(cands)
    adj = [0] * m
    for i in range(m):
        si = set(cands[i])
        for j in range(i + 1, m):
            sj = set(cands[j])
            if len(si & sj) > 1:
                continue  # not edge-disjoint
            if si & sj or parts_conflict(config, cands[i], cands[j]):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    g = ConflictGraph(m=m, adj=tuple(adj))
    res = clique_index(g, budget=budget)
    return FamilyResult([cands[i] for i in res.members], res.exact)


class TauResult(NamedTuple):
    count: int
    exact: bool


def tau_point(config: Configuration, p, budget: int = 500_000) -> TauResult:
    """Largest number of edge-disjoint triangles whose closed triangle
    contains p, exact by exhaustive search within budget."""
    if config.mode != "coordinates":
        raise ChromaError("tau_point needs a coordinates configuration")
    pts = config.points
    px, py = (p.x, p.y) if hasattr(p, "x") else (p[0], p[1])
    if any(q.x == px and q.y == py for q in pts):
        raise ChromaError("p must not be a vertex")
    cands = [
        tri
        for tri in combinations(range(config.n), 3)
        if point_in_triangle((px, py), pts[tri[0]], pts[tri[1]], pts[tri[2]], closed=True)
    ]
    cand_edges = [frozenset(part_edges(t)) for t in cands]
    best = [0]
    nodes = [0]

    def dfs(i: int, used: frozenset, count: int) -> bool:
        nodes[0] += 1
        if nodes[0] > budget:
            return False
        if count > best[0]:
            best[0] = count
        if count + (len(cands) - i) <= best[0]:
            return True
        ok = True
        for j in range(i, len(cands)):
            if not (cand_edges[j] & used):
                if not dfs(j + 1, used | cand_edges[j], count + 1):
                    ok = False
        return ok

    exact = dfs(0, frozenset(), 0)
    return TauResult(best[0], exact)
