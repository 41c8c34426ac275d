import pytest

from l2torsion.plotting import render_diff, render_polytopes
from l2torsion.polytope import IntPolytope, PolytopeDiff, hull, standard_simplex


def test_render_files(tmp_path):
    p = render_polytopes([(standard_simplex(2), "simplex"), (hull([(0, 0), (2, 1)]), "segment")], tmp_path / "a.svg", "demo")
    assert p.read_text().lstrip().startswith("<?xml")
    d = PolytopeDiff(standard_simplex(2, 2), IntPolytope.point((0, 0)))
    q = render_diff(d, tmp_path / "b.png")
    assert q.read_bytes()[:4] == b"\x89PNG"


def test_render_rejects_other_dimensions(tmp_path):
    with pytest.raises(ValueError):
        render_polytopes([(standard_simplex(3), "")], tmp_path / "c.png")
