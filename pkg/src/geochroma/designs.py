"""Finite fields, projective planes, STS(9), and cyclic Steiner triple systems.

Desarguesian planes are built from homogeneous triples over GF(q), normalized
so the first nonzero coordinate is 1.  Prime powers are supported through a
fixed table of irreducible polynomials (q <= 32); everything is validated by
exhaustive checks rather than trusted from the generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .planecut import is_prime_power


class DesignError(ValueError):
    pass


# irreducible polynomials over GF(p), coefficients little-endian, monic
_IRREDUCIBLE = {
    4: (2, (1, 1, 1)),            # x^2 + x + 1
    8: (2, (1, 1, 0, 1)),         # x^3 + x + 1
    9: (3, (1, 0, 1)),            # x^2 + 1
    16: (2, (1, 1, 0, 0, 1)),     # x^4 + x + 1
    25: (5, (1, 1, 1)),           # x^2 + x + 1
    27: (3, (1, 2, 0, 1)),        # x^3 + 2x + 1
    32: (2, (1, 0, 1, 0, 0, 1)),  # x^5 + x^2 + 1
}


class FiniteField:
    """GF(q) with add/mul tables; elements are integers 0..q-1.

    For prime q this is plain modular arithmetic.  For prime powers the
    integer encodes polynomial coefficients base p (little-endian).
    """

    __slots__ = ("q", "p", "e", "add_table", "mul_table", "inv_table")

    def __init__(self, q: int):
        if not is_prime_power(q):
            raise DesignError(f"{q} is not a prime power")
        p = _smallest_prime_factor(q)
        e = 0
        m = q
        while m > 1:
            m //= p
            e += 1
        self.q, self.p, self.e = q, p, e
        if e == 1:
            self.add_table = None
            self.mul_table = None
        else:
            if q not in _IRREDUCIBLE:
                raise DesignError(f"no irreducible polynomial stored for q={q}")
            fp, poly = _IRREDUCIBLE[q]
            assert fp == p
            self.add_table = [
                [self._poly_add(a, b) for b in range(q)] for a in range(q)
            ]
            self.mul_table = [
                [self._poly_mul(a, b, poly) for b in range(q)] for a in range(q)
            ]
        self.inv_table = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul(a, b) == 1:
                    self.inv_table[a] = b
                    break
            else:
                raise DesignError(f"element {a} has no inverse in GF({q})")

    def _digits(self, a):
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds):
        v = 0
        for d in reversed(ds):
            v = v * self.p + d
        return v

    def _poly_add(self, a, b):
        return self._undigits(
            [(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))]
        )

    def _poly_mul(self, a, b, poly):
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.e)
        for i, x in enumerate(da):
            if x == 0:
                continue
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        # reduce modulo the monic irreducible polynomial of degree e
        for k in range(2 * self.e - 1, self.e - 1, -1):
            c = prod[k]
            if c == 0:
                continue
            prod[k] = 0
            for j in range(self.e):
                prod[k - self.e + j] = (prod[k - self.e + j] - c * poly[j]) % self.p
        return self._undigits(prod[: self.e])

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return self.add_table[a][b]

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return self._undigits([(-d) % self.p for d in self._digits(a)])

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DesignError("zero has no inverse")
        return self.inv_table[a]


def _smallest_prime_factor(m: int) -> int:
    d = 2
    while d * d <= m:
        if m % d == 0:
            return d
        d += 1
    return m


@dataclass(frozen=True)
class ProjectivePlane:
    """Desarguesian plane of order q as a point/line incidence structure.

    Points and lines are both normalized homogeneous triples; index i names
    point i and line i alike (the structure is self-dual in coordinates).
    """

    q: int
    points: tuple[tuple[int, int, int], ...]
    line_points: tuple[frozenset, ...]
    point_lines: tuple[frozenset, ...]

    @property
    def size(self) -> int:
        return self.q * self.q + self.q + 1

    def line_through(self, p1: int, p2: int) -> int:
        if p1 == p2:
            raise DesignError("two distinct points are needed")
        common = self.point_lines[p1] & self.point_lines[p2]
        (line,) = common
        return line


def _normalized_triples(ff: FiniteField):
    q = ff.q
    out = [(1, y, z) for y in range(q) for z in range(q)]
    out.extend((0, 1, z) for z in range(q))
    out.append((0, 0, 1))
    return out


def projective_plane(q: int) -> ProjectivePlane:
    """Desarguesian projective plane of order q (q a prime power <= 43 prime,
    or a tabled prime power <= 32)."""
    ff = FiniteField(q)
    pts = _normalized_triples(ff)
    size = q * q + q + 1
    index = {t: i for i, t in enumerate(pts)}
    if ff.e == 1:
        arr = np.array(pts, dtype=np.int64)
        inc = (arr @ arr.T) % q  # inc[i,j] = <line i, point j>
        line_points = tuple(
            frozenset(np.nonzero(inc[i] == 0)[0].tolist()) for i in range(size)
        )
    else:
        line_points_l = []
        for a, b, c in pts:
            members = []
            for j, (x, y, z) in enumerate(pts):
                v = ff.add(ff.add(ff.mul(a, x), ff.mul(b, y)), ff.mul(c, z))
                if v == 0:
                    members.append(j)
            line_points_l.append(frozenset(members))
        line_points = tuple(line_points_l)
    point_lines_l = [set() for _ in range(size)]
    for li, members in enumerate(line_points):
        if len(members) != q + 1:
            raise DesignError(f"line {li} has {len(members)} points, expected {q + 1}")
        for pj in members:
            point_lines_l[pj].add(li)
    plane = ProjectivePlane(
        q=q,
        points=tuple(pts),
        line_points=line_points,
        point_lines=tuple(frozenset(s) for s in point_lines_l),
    )
    del index
    return plane


def pencil_through(plane: ProjectivePlane, z: int, m: int) -> list[list[int]]:
    """m lines through z, each returned with z removed (pairwise disjoint q-sets)."""
    lines = sorted(plane.point_lines[z])
    if m > len(lines):
        raise DesignError(
            f"only {len(lines)} lines pass through a point, requested {m}"
        )
    return [sorted(plane.line_points[li] - {z}) for li in lines[:m]]


# --- block designs -------------------------------------------------------------

@dataclass(frozen=True)
class BlockDesign:
    n: int
    blocks: tuple[tuple[int, ...], ...]
    kappa: int = 3


def validate_design(d: BlockDesign) -> dict:
    """Pair-coverage report: empty 'uncovered'/'repeated' lists iff a 2-design."""
    cover: dict[tuple[int, int], int] = {}
    for blk in d.blocks:
        for u, v in combinations(sorted(blk), 2):
            cover[(u, v)] = cover.get((u, v), 0) + 1
    uncovered = [
        (u, v)
        for u, v in combinations(range(d.n), 2)
        if (u, v) not in cover
    ]
    repeated = [pair for pair, c in cover.items() if c > 1]
    return {"uncovered": uncovered, "repeated": repeated,
            "valid": not uncovered and not repeated}


_STS9_CLASSES = (
    ((0, 1, 2), (3, 4, 5), (6, 7, 8)),      # rows: the (1,2,3)-type class
    ((0, 3, 6), (1, 4, 7), (2, 5, 8)),      # columns: the (1,4,7)-type class
    ((0, 4, 8), (1, 5, 6), (2, 3, 7)),
    ((0, 5, 7), (1, 3, 8), (2, 4, 6)),
)


def sts9() -> tuple[BlockDesign, tuple[tuple[tuple[int, ...], ...], ...]]:
    """The unique STS(9): 12 blocks in 4 parallel classes of 3 blocks each."""
    blocks = tuple(blk for cls in _STS9_CLASSES for blk in cls)
    return BlockDesign(n=9, blocks=blocks, kappa=3), _STS9_CLASSES


# --- difference triples (cyclic STS generator table) ---------------------------

@dataclass(frozen=True)
class TableRow:
    e123: tuple[int, int, int]
    e456: tuple[int, int, int]
    e789: tuple[int, int, int]
    box: int


@dataclass(frozen=True)
class DifferenceTripleTable:
    k: int
    n: int
    rows: tuple[TableRow, ...]

    def triples(self) -> list[tuple[int, int, int]]:
        out = []
        for row in self.rows:
            out.extend((row.e123, row.e456, row.e789))
        return out

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "rows": [
                {"e123": list(r.e123), "e456": list(r.e456),
                 "e789": list(r.e789), "box": r.box}
                for r in self.rows
            ],
        }


def _triple_a(k: int, a: int) -> tuple[int, int, int]:
    return (1 + 3 * a, 4 * k + 1 - a, 4 * k + 2 + 2 * a)


def _triple_b(k: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (3 * k, 3 * k + 1, 6 * k + 1)
    return (3 * k - 3 * b, 4 * k + 1 + 2 * b, 7 * k + 1 - b)


def _triple_c(k: int, c: int, n: int) -> tuple[int, int, int]:
    d1 = 2 + 3 * c
    d2 = 8 * k - c
    s = d1 + d2
    d3 = s if s <= 9 * k else n - s
    return (d1, d2, d3)


def _row_partner(k: int, c: int) -> int:
    # rows c and k-3-c share a box; the two last rows stand alone
    return k - 3 - c if c <= k - 3 else c


def _row_box(k: int, c: int) -> int:
    if c <= k - 3:
        return min(c, k - 3 - c) + 1
    return k // 2 if c == k - 2 else k // 2 + 1


def difference_triples(k: int) -> DifferenceTripleTable:
    """Difference-triple table for n = 18k+1 with box (color-group) labels.

    Each row holds one triple per column block; the box labels group rows
    whose triples can be simultaneously placed without conflicts (boxes
    1..k/2-1 pair two rows, the last two rows stand alone).  The validator
    below is authoritative: any inconsistency fails loudly, naming the row.
    """
    if k % 2 != 0 or k < 4:
        raise DesignError(f"difference_triples requires even k >= 4, got {k}")
    n = 18 * k + 1
    rows = []
    for c in range(k):
        rows.append(
            TableRow(
                e123=_triple_a(k, _row_partner(k, c)),
                e456=_triple_b(k, k - 1 - c),
                e789=_triple_c(k, c, n),
                box=_row_box(k, c),
            )
        )
    table = DifferenceTripleTable(k=k, n=n, rows=tuple(rows))
    _validate_table(table)
    return table


def _validate_table(table: DifferenceTripleTable) -> None:
    k, n = table.k, table.n
    seen: dict[int, int] = {}
    for ridx, row in enumerate(table.rows):
        if not 1 <= row.box <= k // 2 + 1:
            raise DesignError(f"row {ridx}: box label {row.box} out of range")
        for triple in (row.e123, row.e456, row.e789):
            d1, d2, d3 = triple
            if not (d1 < d2 < d3):
                raise DesignError(f"row {ridx}: triple {triple} not increasing")
            if d3 > 9 * k:
                raise DesignError(f"row {ridx}: entry {d3} exceeds 9k = {9 * k}")
            if d1 < 1:
                raise DesignError(f"row {ridx}: entry {d1} below 1")
            if (d1 + d2) % n != d3 % n and (d1 + d2 + d3) % n != 0:
                raise DesignError(
                    f"row {ridx}: {triple} is not a difference triple mod {n}"
                )
            for d in triple:
                if d in seen:
                    raise DesignError(
                        f"row {ridx}: difference {d} repeats (also row {seen[d]})"
                    )
                seen[d] = ridx
    if len(seen) != 9 * k:
        missing = sorted(set(range(1, 9 * k + 1)) - set(seen))
        raise DesignError(f"differences not covered: {missing[:10]}")


def cyclic_sts(n: int, table: DifferenceTripleTable) -> BlockDesign:
    """Cyclic STS(n): the orbit {s, s+d1, s+d1+d2} of every table triple."""
    if n != table.n:
        raise DesignError(f"table was built for n={table.n}, got {n}")
    blocks = []
    for d1, d2, _ in table.triples():
        for s in range(n):
            blocks.append(tuple(sorted((s, (s + d1) % n, (s + d1 + d2) % n))))
    design = BlockDesign(n=n, blocks=tuple(sorted(blocks)), kappa=3)
    report = validate_design(design)
    if not report["valid"]:
        raise DesignError(
            f"cyclic STS invalid: {len(report['uncovered'])} uncovered, "
            f"{len(report['repeated'])} repeated pairs"
        )
    return design


def design_to_dict(d: BlockDesign) -> dict:
    return {"n": d.n, "blocks": [list(b) for b in d.blocks]}


def design_from_dict(data: dict) -> BlockDesign:
    blocks = tuple(tuple(b) for b in data["blocks"])
    kappa = len(blocks[0]) if blocks else 3
    return BlockDesign(n=int(data["n"]), blocks=blocks, kappa=kappa)
