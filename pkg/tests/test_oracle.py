import random

import numpy as np
import pytest
import sympy

from l2torsion.catalog import chainlink_hom
from l2torsion.fox import fox_jacobian
from l2torsion.freegroup import FreeHom, parse_word
from l2torsion.groupring import GroupRingElt, parse_element
from l2torsion.matrix import Matrix
from l2torsion.oracle import (
    PRIME,
    Budget,
    abelian_cert,
    certify,
    random_matrix_cert,
    rank_mod_p,
    substitution,
)
from l2torsion.randgen import random_element, random_unimodular
from l2torsion.stallings import decide_weak_iso

XY = ["x", "y"]
Z2 = GroupRingElt.zero(2)


def el(text):
    return parse_element(text, 2, XY)


DIEUDONNE = Matrix([[el("x"), el("1")], [el("x y"), el("y")]], Z2)


def test_abelian_cert():
    x1 = Matrix([[parse_element("a - 1", 1)]], GroupRingElt.zero(1))
    assert abelian_cert(x1).invertible
    assert abelian_cert(DIEUDONNE) is None
    assert abelian_cert(Matrix([[el("0"), el("0")], [el("x"), el("1")]], Z2)) is None


def test_random_cert():
    fired = [random_matrix_cert(DIEUDONNE, 2, s) is not None for s in range(5)]
    assert sum(fired) >= 3
    zero = Matrix([[Z2]], Z2)
    assert all(random_matrix_cert(zero, d, s) is None for d in (1, 2, 4) for s in range(3))
    one_by_one = Matrix([[el("1 + x - y x Y")]], Z2)
    assert any(random_matrix_cert(one_by_one, d, s) for d in (1, 2, 4) for s in range(3))
    with pytest.raises(ValueError):
        random_matrix_cert(Matrix([[el("x"), el("y")]], Z2), 2, 0)


def test_substitution_inverses():
    gens, invs = substitution(3, 4, 7)
    for g, h in zip(gens, invs):
        assert np.array_equal((g @ h) % PRIME, np.eye(4, dtype=np.int64))


def test_rank_mod_p_vs_exact():
    rng = random.Random(61)
    for _ in range(100):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        k = rng.randint(1, min(r, c))
        left = np.array([[rng.randint(-3, 3) for _ in range(k)] for _ in range(r)], dtype=np.int64)
        right = np.array([[rng.randint(-3, 3) for _ in range(c)] for _ in range(k)], dtype=np.int64)
        a = left @ right
        exact = sympy.Matrix(a.tolist()).rank()
        assert rank_mod_p(a % PRIME) == exact


def test_certify_escalation():
    assert certify(Matrix([[el("2")]], Z2)).invertible
    v = certify(Matrix([[el("x"), el("y"), el("1")], [el("1"), el("1"), el("1")]], Z2))
    assert v.singular and v.certificate["reason"] == "non-square"
    assert certify(Matrix([[Z2, el("x")], [Z2, el("y")]], Z2)).singular
    v = certify(DIEUDONNE)
    assert v.invertible and v.certificate["kind"] == "random_substitution"
    assert certify(DIEUDONNE, Budget(4, 2, 3)) == certify(DIEUDONNE, Budget(4, 2, 3))


def test_non_injective_jacobian():
    phi = FreeHom.from_strings(["xy", "xy"], 2, XY)
    j = fox_jacobian(phi)
    assert certify(j).undecided
    assert certify(j, exact_singular=True).singular


def test_constructed_invertible_certified():
    rng = random.Random(62)
    for _ in range(40):
        n = rng.randint(1, 3)
        u, _ = random_unimodular(rng, n, Z2, lambda: random_element(rng, 2, 2, 2, 1))
        assert certify(u, Budget(4)).invertible


def test_constructed_singular_never_certified():
    rng = random.Random(63)
    for _ in range(40):
        n = rng.randint(2, 3)
        rows = [[random_element(rng, 2, 2, 2, 2) for _ in range(n)] for _ in range(n - 1)]
        combo = [random_element(rng, 2, 2, 2, 1) for _ in range(n - 1)]
        last = [sum((combo[k] * rows[k][j] for k in range(n - 1)), Z2) for j in range(n)]
        m = Matrix(rows + [last], Z2)
        assert abelian_cert(m) is None
        assert all(random_matrix_cert(m, d, s) is None for d in (1, 2, 4) for s in range(2))


def test_certified_implies_weak_iso():
    rng = random.Random(64)
    for n in (3, 4):
        assert decide_weak_iso(chainlink_hom(n))
    from l2torsion.freegroup import random_hom

    for _ in range(30):
        phi = random_hom(rng, 2, 2, 3)
        v = certify(fox_jacobian(phi), Budget(4))
        if v.invertible:
            assert decide_weak_iso(phi) is not False
