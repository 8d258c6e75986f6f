"""Discrete plane partitions: parallel strips, concurrent fans, nine-region refinements.

The continuous existence results (equal-measure partitions by three lines) are
realized here by exhaustive candidate search with exact integer arithmetic.
Cut lines are always placed strictly between points: no input point ever lies
on a cut, and every assignment can be recounted from the stored lines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .exactgeom import Configuration, Point, _canonical_direction

NUMPY_SAFE_COORD = 1 << 25  # int64 cross products stay exact below this


class PlanecutError(RuntimeError):
    """Candidate search exhausted or infeasible region request."""


def _sign(v) -> int:
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


@dataclass(frozen=True)
class CutLine:
    """Oriented line a*x + b*y = c with integer coefficients."""

    a: int
    b: int
    c: int

    def value(self, p) -> int:
        x, y = (p.x, p.y) if isinstance(p, Point) else (p[0], p[1])
        return self.a * x + self.b * y - self.c

    def side(self, p) -> int:
        return _sign(self.value(p))


@dataclass
class RegionAssignment:
    """Vertex buckets cut out by lines, with recountable side patterns.

    patterns[i] lists the sign vectors (one entry per cut, 0 = don't care)
    that members of region i must satisfy.  Spill points are recorded, never
    dropped; downstream constructions turn their edges into singleton parts.
    """

    regions: list[list[int]]
    spill: list[int]
    cuts: list[CutLine]
    patterns: list[list[tuple[int, ...]]]
    strips: list[list[int]] | None = None
    center: tuple[Fraction, Fraction] | None = None
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "regions": [list(r) for r in self.regions],
            "spill": list(self.spill),
            "cuts": [[ln.a, ln.b, ln.c] for ln in self.cuts],
            "patterns": [[list(p) for p in pats] for pats in self.patterns],
        }
        if self.strips is not None:
            d["strips"] = [list(s) for s in self.strips]
        if self.center is not None:
            d["center"] = [str(self.center[0]), str(self.center[1])]
        return d


def recount_regions(assignment: RegionAssignment, config: Configuration) -> None:
    """Independent oracle: re-evaluate every member against the stored cuts.

    Raises PlanecutError unless each member matches an allowed pattern of its
    region, regions and spill are disjoint, and together they cover all
    vertices.
    """
    pts = config.points
    seen: set[int] = set()
    for bucket in list(assignment.regions) + [assignment.spill]:
        for v in bucket:
            if v in seen:
                raise PlanecutError(f"vertex {v} assigned twice")
            seen.add(v)
    if len(seen) != config.n:
        raise PlanecutError("regions plus spill do not cover the vertex set")
    for i, region in enumerate(assignment.regions):
        pats = assignment.patterns[i]
        for v in region:
            sig = tuple(cut.side(pts[v]) for cut in assignment.cuts)
            if any(s == 0 for s in sig):
                raise PlanecutError(f"vertex {v} lies on a cut line")
            ok = any(
                all(p == 0 or p == s for p, s in zip(pat, sig)) for pat in pats
            )
            if not ok:
                raise PlanecutError(f"vertex {v} fails the pattern of region {i}")


# --- candidate directions ----------------------------------------------------

_FIXED_NORMALS = [
    (1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (2, -1), (1, -2),
    (3, 1), (1, 3), (3, -1), (1, -3), (3, 2), (2, 3), (3, -2), (2, -3),
]


def _candidate_normals(pts, first=None):
    seen = set()
    order = list(_FIXED_NORMALS)
    if first is not None:
        order = [first] + order
    for w in order:
        w = _canonical_direction(*w)
        if w not in seen:
            seen.add(w)
            yield w
    for i, j in combinations(range(len(pts)), 2):
        dx, dy = pts[j].x - pts[i].x, pts[j].y - pts[i].y
        # the pair direction itself, then a slight rotation of its normal
        for a, b in ((dx, dy), (8 * -dy + dx, 8 * dx + dy)):
            if a == 0 and b == 0:
                continue
            w = _canonical_direction(a, b)
            if w not in seen:
                seen.add(w)
                yield w


def _projection_split(pts, idxs, w, rank):
    """CutLine with normal w separating the `rank` lowest projections.

    Returns (low, high, line) or None when the boundary projections tie.
    """
    wx, wy = w
    proj = sorted((wx * pts[i].x + wy * pts[i].y, i) for i in idxs)
    lo_v = proj[rank - 1][0]
    hi_v = proj[rank][0]
    if lo_v == hi_v:
        return None
    line = CutLine(2 * wx, 2 * wy, lo_v + hi_v)
    low = [i for _, i in proj[:rank]]
    high = [i for _, i in proj[rank:]]
    return low, high, line


# --- exact nudged lines ------------------------------------------------------

def _line_through(P: Point, Q: Point) -> tuple[int, int, int]:
    dx, dy = Q.x - P.x, Q.y - P.y
    return -dy, dx, dx * P.y - dy * P.x


def _nudged_line(pts, P: Point, Q: Point, sp: int, sq: int) -> CutLine:
    """Line agreeing with line(P,Q) on all other points, pushing P to side sp
    and Q to side sq (each +-1).  Exact integer construction."""
    a0, b0, c0 = _line_through(P, Q)
    if sp == sq:
        # translate: f' = 2 f + sp
        return CutLine(2 * a0, 2 * b0, 2 * c0 - sp)
    # rotate about the midpoint: g = 2N f + delta * (d . (2x - P - Q))
    dx, dy = Q.x - P.x, Q.y - P.y
    delta = -sp  # g(P) = -delta |d|^2
    N = 1
    for p in pts:
        N = max(N, abs(dx * (2 * p.x - P.x - Q.x) + dy * (2 * p.y - P.y - Q.y)))
    N += 1
    a1 = 2 * N * a0 + 2 * delta * dx
    b1 = 2 * N * b0 + 2 * delta * dy
    c1 = 2 * N * c0 + delta * (dx * (P.x + Q.x) + dy * (P.y + Q.y))
    return CutLine(a1, b1, c1)


# --- six parts by three lines, two parallel ----------------------------------

def _side_signs(pts_np, pure_pts, P: Point, Q: Point):
    dx, dy = Q.x - P.x, Q.y - P.y
    if pts_np is not None:
        s = dx * (pts_np[:, 1] - P.y) - dy * (pts_np[:, 0] - P.x)
        return np.sign(s).astype(np.int64)
    out = []
    for p in pure_pts:
        out.append(_sign(dx * (p.y - P.y) - dy * (p.x - P.x)))
    return np.array(out, dtype=np.int64)


def six_parts_two_parallel(config: Configuration, lo: int | None = None) -> RegionAssignment:
    """Three cuts, two of them parallel, giving six regions of >= ceil(n/6)-1.

    Candidate strip directions are scanned in a fixed deterministic order; for
    each, a simultaneous bisector of the outer strips is brute-forced over
    lines through one point of each strip, then nudged off the points.
    """
    if config.mode != "coordinates":
        raise PlanecutError("six_parts_two_parallel needs a coordinates configuration")
    n = config.n
    if n < 6:
        raise PlanecutError("need n >= 6")
    pts = config.points
    if lo is None:
        lo = -(-n // 6) - 1  # ceil(n/6) - 1
    # outer strip size t must allow halves >= lo and a middle of >= 2*lo;
    # the canonical allocation ceil(n/3) comes first (it is the one the
    # continuity proof fixes), smaller middles only as feasibility fallbacks
    # (n = 6r+1 forces t below ceil(n/3))
    t_min = max(1, 2 * lo)
    t_max = (n - 2 * lo) // 2
    if t_min > t_max:
        raise PlanecutError(f"no feasible strip size for n={n}, bound={lo}")
    canonical = -(-n // 3)
    third = n / 3
    t_order = sorted(range(t_min, t_max + 1),
                     key=lambda t: (t != canonical, abs(t - third), t))
    maxc = max(max(abs(p.x), abs(p.y)) for p in pts)
    pts_np = None
    if maxc <= NUMPY_SAFE_COORD:
        pts_np = np.array([[p.x, p.y] for p in pts], dtype=np.int64)

    def attempt(t, w):
        low_split = _projection_split(pts, range(n), w, t)
        if low_split is None:
            return None
        B, rest, line_lo = low_split
        high_split = _projection_split(pts, range(n), w, n - t)
        if high_split is None:
            return None
        _, A, line_hi = high_split
        Aset = set(A)
        M = [i for i in rest if i not in Aset]
        label = np.zeros(n, dtype=np.int64)  # 0=A 1=M 2=B
        label[M] = 1
        label[B] = 2
        found = _ham_sandwich(pts, pts_np, label, A, B, lo)
        if found is None:
            return None
        return found, label, line_hi, line_lo, (A, M, B)

    # preferred strip sizes first over a bounded direction sweep, then an
    # unbounded last resort before declaring exhaustion
    hit = None
    for cap in (48, None):
        for t in t_order:
            for i, w in enumerate(_candidate_normals(pts, first=(1, 0))):
                if cap is not None and i >= cap:
                    break
                hit = attempt(t, w)
                if hit is not None:
                    break
            if hit is not None:
                break
        if hit is not None:
            break
    if hit is not None:
        (l3, sides), label, line_hi, line_lo, (A, M, B) = hit
        regions = [[], [], [], [], [], []]  # A+ M+ B+ A- M- B-
        for i in range(n):
            strip = label[i]
            if sides[i] > 0:
                regions[strip].append(i)
            else:
                regions[3 + strip].append(i)
        cuts = [line_hi, line_lo, l3]
        patterns = [
            [(1, 1, 1)], [(-1, 1, 1)], [(-1, -1, 1)],
            [(1, 1, -1)], [(-1, 1, -1)], [(-1, -1, -1)],
        ]
        strips = [sorted(A), sorted(M), sorted(B)]
        asg = RegionAssignment(
            regions=[sorted(r) for r in regions],
            spill=[],
            cuts=cuts,
            patterns=patterns,
            strips=strips,
        )
        recount_regions(asg, config)
        return asg
    raise PlanecutError(
        f"six_parts_two_parallel: search exhausted (n={n}, bound={lo})"
    )


def _ham_sandwich(pts, pts_np, label, A, B, lo):
    """Line splitting strips A and B near-evenly with both middle parts >= lo.

    Brute force over lines through one point of A and one of B; first valid
    candidate (in lexicographic order, nudges tried in a fixed order) wins.
    Returns (CutLine, side array) or None.
    """
    n = len(pts)
    for ia in sorted(A):
        Pa = pts[ia]
        for ib in sorted(B):
            Pb = pts[ib]
            s = _side_signs(pts_np, pts, Pa, Pb)
            cnt = {}
            for strip in (0, 1, 2):
                mask = label == strip
                cnt[strip, 1] = int(np.count_nonzero(mask & (s > 0)))
                cnt[strip, -1] = int(np.count_nonzero(mask & (s < 0)))
            for sa, sb in ((1, 1), (-1, -1), (1, -1), (-1, 1)):
                ap = cnt[0, 1] + (sa > 0)
                am = cnt[0, -1] + (sa < 0)
                bp = cnt[2, 1] + (sb > 0)
                bm = cnt[2, -1] + (sb < 0)
                mp, mm = cnt[1, 1], cnt[1, -1]
                if min(ap, am, bp, bm, mp, mm) < lo:
                    continue
                line = _nudged_line(pts, Pa, Pb, sa, sb)
                sides = [line.side(p) for p in pts]
                if any(v == 0 for v in sides):
                    continue
                # exact recount must reproduce the predicted counts
                want = {(0, 1): ap, (0, -1): am, (1, 1): mp, (1, -1): mm,
                        (2, 1): bp, (2, -1): bm}
                got: dict[tuple[int, int], int] = {}
                for i, sv in enumerate(sides):
                    key = (int(label[i]), sv)
                    got[key] = got.get(key, 0) + 1
                if got != {k: v for k, v in want.items() if v}:
                    raise PlanecutError("nudged line miscounts its sides")
                return line, sides
    return None


# --- six equal angular parts by three concurrent lines ------------------------

def _clear_center(fx: Fraction, fy: Fraction) -> tuple[int, int, int]:
    den = math.lcm(fx.denominator, fy.denominator)
    return int(fx * den), int(fy * den), den


def _dir_vectors(pts, idxs, PX, PY, PD):
    return {i: (pts[i].x * PD - PX, pts[i].y * PD - PY) for i in idxs}


def _cross(v1, v2) -> int:
    return v1[0] * v2[1] - v1[1] * v2[0]


def _sort_halfplane(dirs, idxs):
    """Sort indices by ccw angle; valid within one open halfplane."""
    import functools

    def cmp(i, j):
        c = _cross(dirs[i], dirs[j])
        return -1 if c > 0 else (1 if c < 0 else 0)

    return sorted(idxs, key=functools.cmp_to_key(cmp))


def _ray_between(dirs, i, j, all_dirs):
    """Integer direction strictly between dirs[i] and dirs[j] (consecutive in
    angle), not parallel to any point direction."""
    v1, v2 = dirs[i], dirs[j]
    for k in range(1, len(all_dirs) + 3):
        cand = (v1[0] * k + v2[0], v1[1] * k + v2[1])
        if all(_cross(cand, d) != 0 for d in all_dirs.values()):
            return cand
    raise PlanecutError("no clean ray direction found")  # pragma: no cover


def six_fan(config: Configuration, q: int) -> RegionAssignment:
    """Three concurrent cuts whose six angular sectors each hold >= q points.

    Exactly q points per sector are labelled (in angular order); the remaining
    m - 6q points are spill.  The common point is never an input point.
    Regions are listed clockwise around the center.
    """
    if config.mode != "coordinates":
        raise PlanecutError("six_fan needs a coordinates configuration")
    pts = config.points
    m = config.n
    if m < 6 * q or q < 1:
        raise PlanecutError(f"six_fan needs m >= 6q (m={m}, q={q})")

    for w in _candidate_normals(pts, first=(0, 1)):
        split = _projection_split(pts, range(m), w, m // 2)
        if split is None:
            continue
        D_idx, U_idx, line1 = split
        if min(len(D_idx), len(U_idx)) < 3 * q:
            continue
        wx, wy = w
        # L1 direction with the U side on its ccw half
        ux, uy = wy, -wx
        # foot of the perpendicular from origin, as a rational point on L1
        c2 = Fraction(line1.c, 2)
        den = Fraction(wx * wx + wy * wy)
        X0 = (c2 * wx / den, c2 * wy / den)

        ts: set[Fraction] = set()
        for i, j in combinations(range(m), 2):
            dx, dy = pts[j].x - pts[i].x, pts[j].y - pts[i].y
            Bc = dx * uy - dy * ux
            if Bc == 0:
                continue
            Ac = dx * (X0[1] - pts[i].y) - dy * (X0[0] - pts[i].x)
            ts.add(Fraction(-Ac, Bc))
        tl = sorted(ts)
        cands: list[Fraction] = []
        if tl:
            cands.append(tl[0] - 1)
            cands.extend((tl[k] + tl[k + 1]) / 2 for k in range(len(tl) - 1))
            cands.append(tl[-1] + 1)
        else:
            cands.append(Fraction(0))

        for t in cands:
            fan = _try_fan_center(pts, q, line1, (ux, uy), X0, t, U_idx, D_idx)
            if fan is not None:
                asg = fan
                recount_regions(asg, config)
                return asg
    raise PlanecutError(f"six_fan: candidate search exhausted (m={m}, q={q})")


def _try_fan_center(pts, q, line1, u, X0, t, U_idx, D_idx):
    PX, PY, PD = _clear_center(X0[0] + t * u[0], X0[1] + t * u[1])
    dirs = _dir_vectors(pts, range(len(pts)), PX, PY, PD)
    uvec = u
    # U must be the ccw side of uvec; D the other (points never on L1)
    U = [i for i in U_idx if _cross(uvec, dirs[i]) > 0]
    if len(U) != len(U_idx):
        U = [i for i in D_idx if _cross(uvec, dirs[i]) > 0]
        D = list(U_idx)
        if len(U) != len(D_idx):
            return None
    else:
        D = list(D_idx)
    Us = _sort_halfplane(dirs, U)
    Ds = _sort_halfplane(dirs, D)
    su, sd = len(Us), len(Ds)
    if su < 3 * q or sd < 3 * q:
        return None

    for a in range(q, su - 2 * q + 1):
        for b in range(a + q, su - q + 1):
            try:
                r2 = _ray_between(dirs, Us[a - 1], Us[a], dirs)
                r3 = _ray_between(dirs, Us[b - 1], Us[b], dirs)
            except PlanecutError:
                continue
            nr2 = (-r2[0], -r2[1])
            nr3 = (-r3[0], -r3[1])
            i2 = sum(1 for i in Ds if _cross(dirs[i], nr2) > 0)
            i3 = sum(1 for i in Ds if _cross(dirs[i], nr3) > 0)
            if i3 < i2:
                continue
            d1, d2, d3 = i2, i3 - i2, sd - i3
            if min(d1, d2, d3) < q:
                continue
            # ccw sectors: U[:a], U[a:b], U[b:], D[:i2], D[i2:i3], D[i3:]
            ccw = [Us[:a], Us[a:b], Us[b:], Ds[:i2], Ds[i2:i3], Ds[i3:]]
            cw = list(reversed(ccw))
            cut2 = _line_through_center(PX, PY, PD, r2)
            cut3 = _line_through_center(PX, PY, PD, r3)
            cuts = [line1, cut2, cut3]
            regions, spill, patterns = [], [], []
            ok = True
            for sector in cw:
                sig = None
                for v in sector:
                    s = tuple(cut.side(pts[v]) for cut in cuts)
                    if 0 in s or (sig is not None and s != sig):
                        ok = False
                        break
                    sig = s
                if not ok:
                    break
                regions.append(sector[:q])
                spill.extend(sector[q:])
                patterns.append([sig])
            if not ok:
                continue
            center = (Fraction(PX, PD), Fraction(PY, PD))
            return RegionAssignment(
                regions=regions,
                spill=sorted(spill),
                cuts=cuts,
                patterns=patterns,
                center=center,
            )
    return None


def _line_through_center(PX, PY, PD, direction) -> CutLine:
    dx, dy = direction
    # normal (-dy, dx); line passes through (PX/PD, PY/PD)
    a = -dy * PD
    b = dx * PD
    c = -dy * PX + dx * PY
    g = math.gcd(math.gcd(abs(a), abs(b)), abs(c))
    if g > 1:
        a, b, c = a // g, b // g, c // g
    return CutLine(a, b, c)


# --- nine regions for the recursive triangle decomposition --------------------

def nine_regions(config: Configuration, q: int, base: RegionAssignment | None = None) -> RegionAssignment:
    """Buckets R1..R9: R1..R6 are the q points of each sixth nearest the
    third cut; R7..R9 merge the leftovers of each strip, truncated to q."""
    if q < 1:
        raise PlanecutError("q must be >= 1")
    if base is None:
        base = six_parts_two_parallel(config)
    pts = config.points
    S = base.regions  # A+ M+ B+ A- M- B-
    for i, s in enumerate(S):
        if len(s) < q:
            raise PlanecutError(
                f"region S{i + 1} has {len(s)} < q = {q} points; choose smaller q"
            )
    for strip in range(3):
        rest = (len(S[strip]) - q) + (len(S[strip + 3]) - q)
        if rest < q:
            raise PlanecutError(
                f"strip {strip + 1} cannot fill its merged region; choose smaller q"
            )
    l3 = base.cuts[2]
    # secondary functional along l3's direction, for tie-free sub-cuts
    gx, gy = -l3.b, l3.a
    gmax = max(abs(gx * p.x + gy * p.y) for p in pts)
    N = 2 * gmax + 2

    subcuts = []
    lower: list[list[int]] = []
    upper: list[list[int]] = []
    keys = {}
    for i in range(6):
        sgn = 1 if i < 3 else -1
        ranked = sorted(
            S[i],
            key=lambda v: (N * sgn * l3.value(pts[v]) + gx * pts[v].x + gy * pts[v].y),
        )
        Ri, Rrest = ranked[:q], ranked[q:]

        def key(v):
            return N * sgn * l3.value(pts[v]) + gx * pts[v].x + gy * pts[v].y

        k1 = key(Ri[-1])
        k2 = key(Rrest[0]) if Rrest else k1 + 2
        # F(x) = 4(N*sgn*f3(x) + g(x)) - (2(k1+k2)+1): negative exactly on Ri,
        # and odd everywhere, so no point can lie on the sub-cut.
        a = 4 * (N * sgn * l3.a + gx)
        b = 4 * (N * sgn * l3.b + gy)
        c = 4 * N * sgn * l3.c + 2 * (k1 + k2) + 1
        cut = CutLine(a, b, c)
        subcuts.append(cut)
        lower.append(Ri)
        upper.append(Rrest)
        for v in S[i]:
            keys[v] = (abs(l3.value(pts[v])), gx * pts[v].x + gy * pts[v].y, v)

    regions = [sorted(r) for r in lower]
    spill = []
    merged_patterns = []
    for strip in range(3):
        pool = sorted(upper[strip] + upper[strip + 3], key=lambda v: keys[v])
        regions.append(sorted(pool[:q]))
        spill.extend(pool[q:])
    cuts = base.cuts + subcuts
    strip_pat = [(1, 1), (-1, 1), (-1, -1)]
    patterns = []
    for i in range(6):
        sub = [0] * 6
        sub[i] = -1
        pat = strip_pat[i % 3] + ((1,) if i < 3 else (-1,)) + tuple(sub)
        patterns.append([pat])
    for strip in range(3):
        pats = []
        for half, l3s in ((strip, 1), (strip + 3, -1)):
            sub = [0] * 6
            sub[half] = 1
            pats.append(strip_pat[strip] + (l3s,) + tuple(sub))
        patterns.append(pats)
    asg = RegionAssignment(
        regions=regions,
        spill=sorted(spill),
        cuts=cuts,
        patterns=patterns,
        strips=base.strips,
    )
    recount_regions(asg, config)
    return asg


# --- prime powers -------------------------------------------------------------

def is_prime_power(m: int) -> bool:
    if m < 2:
        return False
    f = m
    p = None
    d = 2
    while d * d <= f:
        if f % d == 0:
            p = d
            while f % d == 0:
                f //= d
            break
        d += 1
    if p is None:
        return True  # m itself prime
    return f == 1


def prime_power_below(x: int) -> int:
    """Largest prime power <= x."""
    if x < 2:
        raise PlanecutError("prime_power_below needs x >= 2")
    m = x
    while not is_prime_power(m):
        m -= 1
    return m
