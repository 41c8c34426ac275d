import random

import pytest

from l2torsion.freegroup import (
    FreeHom,
    RankError,
    Word,
    apply_hom,
    compose,
    parse_word,
    random_hom,
    random_word,
    reduce_letters,
)


def naive_reduce(letters):
    # stack-free oracle: repeatedly delete the first cancelling pair
    out = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            if out[i][0] == out[i + 1][0] and out[i][1] == -out[i + 1][1]:
                del out[i : i + 2]
                changed = True
                break
    return out


def random_letters(rng, rank, n):
    return [(rng.randint(1, rank), rng.choice((1, -1))) for _ in range(n)]


def test_reduce_examples():
    assert reduce_letters(2, [(1, 1), (2, 1), (2, -1), (1, -1)]).is_identity()
    w = reduce_letters(2, [(1, 1), (1, 1), (2, -1)])
    assert w.blocks == ((1, 2), (2, -1))
    assert len(w) == 3


def test_reduce_matches_naive_oracle():
    rng = random.Random(1)
    for _ in range(500):
        letters = random_letters(rng, 3, rng.randint(0, 14))
        assert list(reduce_letters(3, letters).letters()) == naive_reduce(letters)


def test_inverse_cancels():
    rng = random.Random(2)
    for _ in range(500):
        w = random_word(rng, 3, 10)
        assert (w * w.inverse()).is_identity()
        assert (w.inverse() * w).is_identity()


def test_multiplication_associative():
    rng = random.Random(3)
    for _ in range(500):
        a, b, c = (random_word(rng, 3, 6) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_reduction_confluent():
    # cancelling in random order gives the same word
    rng = random.Random(4)
    for _ in range(200):
        letters = random_letters(rng, 2, rng.randint(0, 12))
        target = reduce_letters(2, letters)
        work = list(letters)
        while True:
            pairs = [
                i for i in range(len(work) - 1)
                if work[i][0] == work[i + 1][0] and work[i][1] == -work[i + 1][1]
            ]
            if not pairs:
                break
            i = rng.choice(pairs)
            del work[i : i + 2]
        assert Word.from_letters(2, work) == target


def test_parse_word_forms():
    x, y = Word.generator(2, 1), Word.generator(2, 2)
    assert parse_word("x1 x2^-1", 2) == x * y.inverse()
    assert parse_word("x1^2*x2", 2) == x * x * y
    assert parse_word("aB", 2) == x * y.inverse()
    assert parse_word("xyX", 2, ["x", "y"]) == x * y * x.inverse()
    assert parse_word("1", 2).is_identity()
    assert parse_word("", 2).is_identity()
    assert parse_word("x^(-3)", 2, ["x", "y"]) == x.inverse() ** 3


def test_parse_word_errors():
    with pytest.raises(RankError):
        parse_word("x3", 2)
    with pytest.raises(ValueError):
        parse_word("z", 2, ["x", "y"])
    with pytest.raises(ValueError):
        parse_word("x1^0", 2)
    with pytest.raises(ValueError):
        parse_word("x1 ?", 2)


def test_string_round_trip():
    rng = random.Random(5)
    for _ in range(200):
        w = random_word(rng, 3, 8)
        assert parse_word(w.to_string(), 3) == w


def test_apply_hom_examples():
    phi = FreeHom.from_strings(["x^2", "y"], 2, ["x", "y"])
    w = parse_word("xy", 2, ["x", "y"])
    assert apply_hom(phi, w) == parse_word("xxy", 2, ["x", "y"])
    ident = FreeHom.identity(3)
    rng = random.Random(6)
    for _ in range(50):
        w = random_word(rng, 3, 8)
        assert apply_hom(ident, w) == w


def test_apply_hom_is_homomorphism():
    rng = random.Random(7)
    for _ in range(500):
        phi = random_hom(rng, 2, 3, 4)
        a, b = random_word(rng, 2, 6), random_word(rng, 2, 6)
        assert apply_hom(phi, a * b) == apply_hom(phi, a) * apply_hom(phi, b)


def test_compose():
    rng = random.Random(8)
    for _ in range(20):
        phi = random_hom(rng, 2, 3, 4)
        assert compose(FreeHom.identity(3), phi) == phi
        assert compose(phi, FreeHom.identity(2)) == phi
    for _ in range(500):
        phi, psi = random_hom(rng, 2, 3, 3), random_hom(rng, 3, 2, 3)
        w = random_word(rng, 2, 6)
        assert apply_hom(compose(psi, phi), w) == apply_hom(psi, apply_hom(phi, w))


def test_rank_errors():
    phi = FreeHom.identity(2)
    with pytest.raises(RankError):
        apply_hom(phi, Word.generator(3, 1))
    with pytest.raises(RankError):
        compose(phi, FreeHom.identity(3))
    with pytest.raises(RankError):
        FreeHom(2, 2, (Word.generator(2, 1),))
    with pytest.raises(RankError):
        reduce_letters(1, [(2, 1)])


def test_exponent_sums_and_cyclic_reduction():
    w = parse_word("x y x^-1 y^3", 2, ["x", "y"])
    assert w.exponent_sums() == (0, 4)
    conj, core = parse_word("x y^2 x^-1", 2, ["x", "y"]).cyclically_reduced()
    assert conj == Word.generator(2, 1)
    assert core == Word.generator(2, 2, 2)
