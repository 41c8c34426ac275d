import itertools
import random

import pytest

from l2torsion.complex import TorsionValue
from l2torsion.catalog import circle_complex
from l2torsion.complex import torsion
from l2torsion.groupring import GroupRingElt, parse_element
from l2torsion.laurent import LaurentPoly
from l2torsion.leading import Character, leading_elt
from l2torsion.polytope import (
    EmptyPolytopeError,
    IntPolytope,
    PolytopeDiff,
    diff_equal,
    face,
    fibered_report,
    hull,
    minkowski,
    poly_of_elt,
    standard_simplex,
    thurston_dual_ball,
    wh_normalize,
)
from l2torsion.randgen import random_element


def orient(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def on_segment(p, a, b):
    return orient(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def in_triangle(p, a, b, c):
    if orient(a, b, c) == 0:
        return on_segment(p, a, b) or on_segment(p, b, c) or on_segment(p, a, c)
    s = [orient(a, b, p), orient(b, c, p), orient(c, a, p)]
    return all(x >= 0 for x in s) or all(x <= 0 for x in s)


def brute_extreme(points):
    pts = sorted(set(points))
    out = []
    for p in pts:
        others = [q for q in pts if q != p]
        if len(others) == 0:
            out.append(p)
            continue
        if len(others) == 1:
            out.append(p)
            continue
        covered = any(in_triangle(p, a, b, c) for a, b, c in itertools.combinations(others, 3)) or any(
            on_segment(p, a, b) for a, b in itertools.combinations(others, 2)
        )
        if not covered:
            out.append(p)
    return tuple(out)


def rand_poly(rng, dim, n=None, span=3):
    n = n or rng.randint(1, 6)
    return hull([tuple(rng.randint(-span, span) for _ in range(dim)) for _ in range(n)], dim)


def test_hull_examples():
    assert hull([(0,), (1,), (2,)]).vertices == ((0,), (2,))
    assert hull([(0, 0)]).vertices == ((0, 0),)
    sq = hull([(0, 0), (1, 0), (0, 1), (1, 1), (0, 0)])
    assert len(sq.vertices) == 4
    assert hull([]).is_empty()
    with pytest.raises(ValueError):
        hull([(0,), (1, 2)])


def test_hull_matches_orientation_oracle():
    rng = random.Random(51)
    for _ in range(200):
        pts = [(rng.randint(-4, 4), rng.randint(-4, 4)) for _ in range(rng.randint(1, 9))]
        assert hull(pts).vertices == brute_extreme(pts)


def test_hull_3d_contains_its_points():
    # every input point is a convex combination of the computed vertices (checked via the LP helper)
    from l2torsion.polytope import in_convex_hull

    rng = random.Random(52)
    for _ in range(40):
        pts = [tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(rng.randint(1, 8))]
        p = hull(pts)
        for q in pts:
            assert in_convex_hull(q, list(p.vertices))
        for v in p.vertices:
            assert not in_convex_hull(v, [u for u in p.vertices if u != v])


def test_minkowski():
    p = rand_poly(random.Random(53), 2)
    assert minkowski(p, IntPolytope.point((2, -1))) == p.translate((2, -1))
    square = minkowski(hull([(0, 0), (1, 0)]), hull([(0, 0), (0, 1)]))
    assert square.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    rng = random.Random(54)
    for _ in range(200):
        dim = rng.randint(1, 3)
        a, b, c = (rand_poly(rng, dim, rng.randint(1, 4)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
    with pytest.raises(EmptyPolytopeError):
        minkowski(IntPolytope.empty(2), square)


def test_face_examples():
    square = hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert face(Character([0, 0]), square) == square
    assert face(Character([0, 1]), square).vertices == ((0, 0), (1, 0))
    assert face(Character([1, 1]), standard_simplex(2)).vertices == ((0, 0),)


def test_face_of_sum():
    rng = random.Random(55)
    for _ in range(300):
        dim = rng.randint(1, 3)
        p, q = rand_poly(rng, dim), rand_poly(rng, dim)
        phi = Character(rng.randint(-3, 3) for _ in range(dim))
        assert face(phi, p + q) == face(phi, p) + face(phi, q)


def test_poly_of_elt():
    xy = ["x", "y"]
    assert poly_of_elt(parse_element("-3 x y X", 2, xy)).vertices == ((0, 1),)
    s = parse_element("1 + a + b + c", 3)
    assert poly_of_elt(s) == standard_simplex(3)
    assert poly_of_elt(parse_element("x y - y x", 2, xy)).vertices == ((1, 1),)
    with pytest.raises(EmptyPolytopeError):
        poly_of_elt(GroupRingElt.zero(2))


def test_poly_of_product_and_leading():
    rng = random.Random(56)
    for _ in range(300):
        a, b = random_element(rng, 2), random_element(rng, 2)
        assert poly_of_elt(a * b) == poly_of_elt(a) + poly_of_elt(b)
        phi = Character(rng.randint(-3, 3) for _ in range(2))
        assert poly_of_elt(leading_elt(phi, a)) == face(phi, poly_of_elt(a))


def test_diff_equal():
    rng = random.Random(57)
    p, q = rand_poly(rng, 2), rand_poly(rng, 2)
    assert diff_equal(PolytopeDiff(p, p), PolytopeDiff(q, q))
    pt = IntPolytope.point((0, 0))
    square = hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert not diff_equal(PolytopeDiff(square, pt), PolytopeDiff(hull([(0, 0), (1, 0)]), pt))
    for _ in range(200):
        p, q, r = (rand_poly(rng, 2) for _ in range(3))
        assert diff_equal(PolytopeDiff(p + r, q + r), PolytopeDiff(p, q))


def test_wh_normalize():
    rng = random.Random(58)
    pt = IntPolytope.point((3, -2))
    assert wh_normalize(PolytopeDiff(pt, IntPolytope.point((1, 1)))).is_zero()
    for _ in range(200):
        p, q = rand_poly(rng, 2), rand_poly(rng, 2)
        v = (rng.randint(-5, 5), rng.randint(-5, 5))
        neg = tuple(-x for x in v)
        assert wh_normalize(PolytopeDiff(p.translate(v), q)) == wh_normalize(PolytopeDiff(p, q.translate(neg)))
        assert wh_normalize(PolytopeDiff(p.translate(v), q)) == wh_normalize(PolytopeDiff(p, q))
        d1 = PolytopeDiff(p, q)
        d2 = PolytopeDiff(rand_poly(rng, 2), rand_poly(rng, 2))
        assert wh_normalize(d1) + wh_normalize(d2) == wh_normalize(d1 + d2)


def test_thurston_dual_ball():
    tau = torsion(circle_complex())
    ball = thurston_dual_ball(tau)
    expected = wh_normalize(PolytopeDiff(IntPolytope.point((0,)), hull([(0,), (2,)])))
    assert ball == expected
    unit = TorsionValue(False, 2, polytope=PolytopeDiff.zero(2))
    assert thurston_dual_ball(unit).is_zero()
    s = TorsionValue(False, 2, polytope=PolytopeDiff.of(standard_simplex(2)))
    assert thurston_dual_ball(s) == wh_normalize(PolytopeDiff.of(standard_simplex(2, 2)))
    with pytest.raises(ValueError):
        thurston_dual_ball(TorsionValue.zero_value(2, "zero"))


def test_fibered_report():
    rep = fibered_report(parse_element("1 + a + b", 2))
    assert len(rep) == 3 and all(r["monic"] and abs(r["coefficient"]) == 1 for r in rep)
    rep = fibered_report(parse_element("2 + a", 1))
    by_vertex = {tuple(r["vertex"]): r for r in rep}
    assert not by_vertex[(0,)]["monic"] and by_vertex[(0,)]["coefficient"] == 2
    assert by_vertex[(1,)]["monic"]
    # two distinct support words over the vertex [x]
    rep = fibered_report(parse_element("1 + x y x Y + x y^2 x Y^2", 2, ["x", "y"]))
    by_vertex = {tuple(r["vertex"]): r for r in rep}
    assert not by_vertex[(2, 0)]["monic"]
    assert by_vertex[(2, 0)]["support_words"] == 2
    lp = LaurentPoly.var(2, 1) + 1
    assert all(r["monic"] for r in fibered_report(lp))


def test_json_round_trip():
    rng = random.Random(59)
    for _ in range(50):
        p = rand_poly(rng, 3)
        assert IntPolytope.from_json(p.to_json()) == p
        d = PolytopeDiff(p, rand_poly(rng, 3))
        assert PolytopeDiff.from_json(d.to_json()) == d
