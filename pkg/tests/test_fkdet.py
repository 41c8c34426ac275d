import math
import random

import pytest

from l2torsion.catalog import chainlink_expected, chainlink_hom, circle_complex, fk_closed_form
from l2torsion.complex import TorsionValue, torsion, torsion_of_hom
from l2torsion.fkdet import FKEstimationError, estimate_fk, estimate_fk_matrix, fk_of_torsion
from l2torsion.freegroup import FreeHom, Word
from l2torsion.groupring import GroupRingElt, parse_element
from l2torsion.laurent import LaurentPoly
from l2torsion.matrix import Matrix
from l2torsion.randgen import random_element


def test_trivial_unit_is_one():
    a = parse_element("-x y X^2", 2, ["x", "y"])
    est = estimate_fk(a, N=64, trials=5)
    assert est.mean == pytest.approx(1.0, abs=1e-9)
    assert est.discarded == 0


def test_constant():
    est = estimate_fk(GroupRingElt.constant(3, 2), N=64, trials=3)
    assert est.mean == pytest.approx(2.0, abs=1e-9)


def test_chainlink3_element():
    est = estimate_fk(chainlink_expected(3), N=512, trials=20, seed=3)
    assert abs(est.mean / fk_closed_form(3) - 1) < 0.02


def test_chainlink4_torsion():
    tau = torsion_of_hom(chainlink_hom(4))
    est = fk_of_torsion(tau, N=512, trials=20, seed=4)
    assert abs(est.mean / (3**1.5 / 4) - 1) < 0.02


def test_trivial_unit_torsion():
    tau = torsion_of_hom(FreeHom.identity(2))
    assert fk_of_torsion(tau).mean == 1.0


def test_circle_torsion():
    # Mahler measure of t - 1 is 1
    est = fk_of_torsion(torsion(circle_complex()), N=512, trials=20)
    assert abs(est.mean - 1.0) < 0.02


def test_laurent_mahler_measure():
    # Mahler measure of 2 + t is 2
    t = LaurentPoly.var(1, 1)
    est = estimate_fk(2 + t, N=256, trials=10)
    assert abs(est.mean - 2.0) < 0.02


def test_multiplicativity():
    rng = random.Random(101)
    for k in range(20):
        a, b = random_element(rng, 2, 3, 2, 2), random_element(rng, 2, 3, 2, 2)
        ea = estimate_fk(a, N=256, trials=20, seed=k)
        eb = estimate_fk(b, N=256, trials=20, seed=k + 100)
        eab = estimate_fk(a * b, N=256, trials=20, seed=k + 200)
        prod = ea.mean * eb.mean
        se = math.sqrt(eab.stderr**2 + (ea.stderr * eb.mean) ** 2 + (eb.stderr * ea.mean) ** 2)
        assert abs(eab.mean - prod) <= 3 * se + 1e-9, (str(a), str(b), eab, ea, eb)


def test_involution_invariance():
    rng = random.Random(102)
    for k in range(5):
        a = random_element(rng, 2, 3, 2, 2)
        e1 = estimate_fk(a, N=256, trials=20, seed=k)
        e2 = estimate_fk(a.involute(), N=256, trials=20, seed=k + 50)
        assert abs(e1.mean - e2.mean) <= 3 * math.hypot(e1.stderr, e2.stderr) + 1e-9


def test_trivial_unit_multiple():
    a = chainlink_expected(3)
    g = GroupRingElt.from_word(Word.from_letters(2, [(1, 1), (2, -1)]), -1)
    e1 = estimate_fk(a, N=256, trials=20, seed=1)
    e2 = estimate_fk(g * a, N=256, trials=20, seed=1)
    assert e1.mean == pytest.approx(e2.mean, rel=1e-9)


def test_convergence_trend():
    a = chainlink_expected(4)
    target = fk_closed_form(4)
    small = estimate_fk(a, N=32, trials=20, seed=7)
    large = estimate_fk(a, N=512, trials=20, seed=7)
    assert abs(large.mean - target) < abs(small.mean - target) + 3 * small.stderr
    assert large.stderr < small.stderr


def test_matrix_estimate():
    z = GroupRingElt.zero(2)
    m = Matrix([[GroupRingElt.constant(2, 3), z], [z, GroupRingElt.constant(2, 2)]], z)
    assert estimate_fk_matrix(m, N=32, trials=2).mean == pytest.approx(6.0)


def test_errors():
    with pytest.raises(ValueError):
        estimate_fk(GroupRingElt.zero(2))
    with pytest.raises(ValueError):
        estimate_fk(GroupRingElt.one(2), N=4)
    with pytest.raises(ValueError):
        fk_of_torsion(TorsionValue.zero_value(2, "zero"))
    z = GroupRingElt.zero(1)
    singular = Matrix([[GroupRingElt.one(1), GroupRingElt.one(1)], [GroupRingElt.one(1), GroupRingElt.one(1)]], z)
    with pytest.raises(FKEstimationError):
        estimate_fk_matrix(singular, N=32, trials=4)


def test_json():
    est = estimate_fk(chainlink_expected(3), N=64, trials=4, seed=9)
    data = est.to_json()
    assert set(data) >= {"estimate", "stderr", "N", "trials", "discarded", "seed"}
    assert data["N"] == 64 and data["seed"] == 9
