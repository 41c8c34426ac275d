"""Integral polytopes, Minkowski arithmetic and the polytope map.

All geometry is exact: extreme points are found with integer orientation
tests where possible and an exact rational simplex feasibility check
otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .groupring import GroupRingElt
from .laurent import LaurentPoly
from .leading import Character, char_value

Point = tuple[int, ...]
MAX_DIM = 8


class EmptyPolytopeError(ValueError):
    pass


def _lp_feasible(a_cols: list[list[Fraction]], b: list[Fraction]) -> bool:
    """Is there ``λ ≥ 0`` with ``Σ λ_j a_cols[j] = b``?  Phase-one simplex, Bland's rule."""
    m = len(b)
    n = len(a_cols)
    rows = []
    for i in range(m):
        row = [a_cols[j][i] for j in range(n)]
        rhs = b[i]
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        rows.append(row + [Fraction(int(k == i)) for k in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimize sum of artificials, written as reduced costs
    cost = [Fraction(0)] * (width + 1)
    for r in rows:
        for k in range(width + 1):
            cost[k] -= r[k]
    for i in range(m):
        cost[n + i] += 1
    while True:
        enter = next((k for k in range(width) if cost[k] < 0), None)
        if enter is None:
            break
        best = None
        for i, r in enumerate(rows):
            if r[enter] > 0:
                ratio = r[-1] / r[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            break
        _, piv = best
        pr = rows[piv]
        f = pr[enter]
        pr = [x / f for x in pr]
        rows[piv] = pr
        for i, r in enumerate(rows):
            if i != piv and r[enter] != 0:
                g = r[enter]
                rows[i] = [x - g * y for x, y in zip(r, pr)]
        g = cost[enter]
        cost = [x - g * y for x, y in zip(cost, pr)]
        basis[piv] = enter
    return -cost[-1] == 0


def in_convex_hull(p: Sequence[int], pts: Sequence[Sequence[int]]) -> bool:
    if not pts:
        return False
    cols = [[Fraction(x) for x in q] + [Fraction(1)] for q in pts]
    return _lp_feasible(cols, [Fraction(x) for x in p] + [Fraction(1)])


def _hull_2d(pts: list[Point]) -> list[Point]:
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return sorted(set(lower[:-1] + upper[:-1]))


def _directions(dim: int) -> list[Point]:
    dirs: list[Point] = []
    for i in range(dim):
        for s in (1, -1):
            e = [0] * dim
            e[i] = s
            dirs.append(tuple(e))
    for signs in itertools.product((1, -1, 2, -3), repeat=dim):
        dirs.append(signs)
        if len(dirs) > 200:
            break
    return dirs


def extreme_points(points: Iterable[Sequence[int]]) -> list[Point]:
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if len(pts) <= 2:
        return pts
    dim = len(pts[0])
    if dim > MAX_DIM:
        raise ValueError(f"polytope dimension {dim} exceeds cap {MAX_DIM}")
    if dim == 1:
        return [pts[0], pts[-1]]
    if dim == 2:
        return _hull_2d(pts)
    sure: set[Point] = set()
    for d in _directions(dim):
        vals = [sum(a * b for a, b in zip(d, p)) for p in pts]
        lo = min(vals)
        at = [p for p, v in zip(pts, vals) if v == lo]
        if len(at) == 1:
            sure.add(at[0])
    out = []
    for p in pts:
        if p in sure:
            out.append(p)
            continue
        others = [q for q in pts if q != p]
        if not in_convex_hull(p, others):
            out.append(p)
    return out


@dataclass(frozen=True)
class IntPolytope:
    """Convex hull of finitely many lattice points, stored by its vertices."""

    dim: int
    vertices: tuple[Point, ...]

    @classmethod
    def empty(cls, dim: int) -> IntPolytope:
        return cls(dim, ())

    @classmethod
    def point(cls, p: Sequence[int]) -> IntPolytope:
        return cls(len(p), (tuple(p),))

    def is_empty(self) -> bool:
        return not self.vertices

    def __add__(self, other: IntPolytope) -> IntPolytope:
        return minkowski(self, other)

    def translate(self, v: Sequence[int]) -> IntPolytope:
        return IntPolytope(
            self.dim, tuple(sorted(tuple(a + b for a, b in zip(p, v)) for p in self.vertices))
        )

    def scale(self, k: int) -> IntPolytope:
        if k < 0:
            raise ValueError("use PolytopeDiff for negative multiples")
        if k == 0:
            return IntPolytope.point((0,) * self.dim) if self.vertices else self
        return IntPolytope(self.dim, tuple(sorted(tuple(k * x for x in p) for p in self.vertices)))

    def lex_min(self) -> Point:
        if not self.vertices:
            raise EmptyPolytopeError("empty polytope")
        return self.vertices[0]

    def normalized(self) -> IntPolytope:
        """Translate so the lexicographically least vertex is the origin."""
        v = self.lex_min()
        return self.translate(tuple(-x for x in v))

    def affine_dimension(self) -> int:
        if len(self.vertices) <= 1:
            return 0 if self.vertices else -1
        base = self.vertices[0]
        vecs = [[Fraction(a - b) for a, b in zip(p, base)] for p in self.vertices[1:]]
        return _rank(vecs)

    def to_json(self) -> dict:
        if not self.vertices:
            return {"empty": True}
        return {"dim": self.dim, "vertices": [list(p) for p in self.vertices]}

    @classmethod
    def from_json(cls, data: dict) -> IntPolytope:
        if data.get("empty"):
            return cls.empty(int(data.get("dim", 0)))
        return hull(data["vertices"], int(data["dim"]))

    def __str__(self) -> str:
        if not self.vertices:
            return "Empty"
        return "conv{" + ", ".join(str(list(p)) for p in self.vertices) + "}"


def _rank(vecs: list[list[Fraction]]) -> int:
    rows = [list(v) for v in vecs]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def hull(points: Iterable[Sequence[int]], dim: int | None = None) -> IntPolytope:
    pts = [tuple(int(x) for x in p) for p in points]
    if not pts:
        return IntPolytope.empty(dim or 0)
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise ValueError("points of mixed dimension")
    if dim is not None and dim != d:
        raise ValueError(f"points have dimension {d}, expected {dim}")
    return IntPolytope(d, tuple(sorted(extreme_points(pts))))


def minkowski(p: IntPolytope, q: IntPolytope) -> IntPolytope:
    if p.is_empty() or q.is_empty():
        raise EmptyPolytopeError("Minkowski sum with the empty polytope")
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch {p.dim} vs {q.dim}")
    return hull((tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices), p.dim)


def face(phi: Character, p: IntPolytope) -> IntPolytope:
    """The face on which ``φ`` attains its minimum."""
    if p.is_empty():
        raise EmptyPolytopeError("face of the empty polytope")
    vals = [char_value(phi, v) for v in p.vertices]
    lo = min(vals)
    return IntPolytope(p.dim, tuple(v for v, x in zip(p.vertices, vals) if x == lo))


def poly_of_elt(a: GroupRingElt | LaurentPoly) -> IntPolytope:
    """Hull of the homology classes of the support of ``a``."""
    if a.is_zero():
        raise EmptyPolytopeError("polytope of the zero element")
    dim = a.rank if isinstance(a, GroupRingElt) else a.dim
    return hull(a.support_points(), dim)


@dataclass(frozen=True)
class PolytopeDiff:
    """Formal difference ``[plus] - [minus]`` in the polytope group."""

    plus: IntPolytope
    minus: IntPolytope

    def __post_init__(self):
        if self.plus.is_empty() or self.minus.is_empty():
            raise EmptyPolytopeError("polytope differences need non-empty parts")

    @classmethod
    def of(cls, p: IntPolytope) -> PolytopeDiff:
        return cls(p, IntPolytope.point((0,) * p.dim))

    @classmethod
    def zero(cls, dim: int) -> PolytopeDiff:
        o = IntPolytope.point((0,) * dim)
        return cls(o, o)

    @property
    def dim(self) -> int:
        return self.plus.dim

    def __add__(self, other: PolytopeDiff) -> PolytopeDiff:
        return PolytopeDiff(self.plus + other.plus, self.minus + other.minus)

    def __neg__(self) -> PolytopeDiff:
        return PolytopeDiff(self.minus, self.plus)

    def __sub__(self, other: PolytopeDiff) -> PolytopeDiff:
        return self + (-other)

    def scale(self, k: int) -> PolytopeDiff:
        if k < 0:
            return (-self).scale(-k)
        return PolytopeDiff(self.plus.scale(k), self.minus.scale(k))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolytopeDiff):
            return NotImplemented
        return diff_equal(self, other)

    def __hash__(self):
        raise TypeError("PolytopeDiff is not hashable")

    def to_json(self) -> dict:
        return {"plus": self.plus.to_json(), "minus": self.minus.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> PolytopeDiff:
        return cls(IntPolytope.from_json(data["plus"]), IntPolytope.from_json(data["minus"]))

    def __str__(self) -> str:
        return f"[{self.plus}] - [{self.minus}]"


def diff_equal(d1: PolytopeDiff, d2: PolytopeDiff) -> bool:
    """``[P1]-[Q1] == [P2]-[Q2]`` iff ``P1+Q2 == P2+Q1``."""
    return (d1.plus + d2.minus) == (d2.plus + d1.minus)


@dataclass(frozen=True)
class WhPolytope:
    """A polytope difference modulo lattice translations.

    The stored difference has both parts translated so their lex-least
    vertices sit at the origin; equality compares ``P1+Q2`` and ``P2+Q1``
    after the same normalization.
    """

    diff: PolytopeDiff

    def __eq__(self, other) -> bool:
        if not isinstance(other, WhPolytope):
            return NotImplemented
        a = self.diff.plus + other.diff.minus
        b = other.diff.plus + self.diff.minus
        return a.normalized() == b.normalized()

    def __hash__(self):
        raise TypeError("WhPolytope is not hashable")

    def __add__(self, other: WhPolytope) -> WhPolytope:
        return wh_normalize(self.diff + other.diff)

    def is_zero(self) -> bool:
        return self == wh_normalize(PolytopeDiff.zero(self.diff.dim))

    def to_json(self) -> dict:
        return self.diff.to_json()

    def __str__(self) -> str:
        return str(self.diff)


def wh_normalize(d: PolytopeDiff) -> WhPolytope:
    return WhPolytope(PolytopeDiff(d.plus.normalized(), d.minus.normalized()))


def standard_simplex(dim: int, scale: int = 1) -> IntPolytope:
    pts = [(0,) * dim]
    for i in range(dim):
        e = [0] * dim
        e[i] = scale
        pts.append(tuple(e))
    return hull(pts, dim)


def thurston_dual_ball(tau) -> WhPolytope:
    """Twice the torsion polytope, as the canonical dual Thurston ball representative."""
    if getattr(tau, "is_zero", lambda: False)():
        raise ValueError("zero torsion has no polytope")
    poly = getattr(tau, "polytope", None)
    if poly is None:
        raise ValueError("torsion value carries no polytope invariant")
    return wh_normalize(poly.scale(2))


def fibered_report(a: GroupRingElt | LaurentPoly) -> list[dict]:
    """Per-vertex monicity of ``a``.

    A vertex is monic when exactly one support word lies over it and its
    coefficient is ±1; then ``L_φ(a)`` is a trivial unit for every ``φ``
    whose minimizing face is that vertex.
    """
    poly = poly_of_elt(a)
    over: dict[Point, list[int]] = {}
    if isinstance(a, GroupRingElt):
        for w, c in a.terms.items():
            over.setdefault(w.exponent_sums(), []).append(c)
    else:
        for e, c in a.terms.items():
            over.setdefault(e, []).append(c)
    report = []
    for v in poly.vertices:
        coeffs = over[v]
        monic = len(coeffs) == 1 and abs(coeffs[0]) == 1
        report.append(
            {
                "vertex": list(v),
                "monic": monic,
                "coefficient": sum(coeffs),
                "support_words": len(coeffs),
            }
        )
    return report
