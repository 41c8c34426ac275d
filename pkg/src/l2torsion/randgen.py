"""Seeded random objects for property checks."""

from __future__ import annotations

import random

from .freegroup import Word, random_word
from .groupring import GroupRingElt
from .laurent import LaurentPoly
from .matrix import Matrix
from .complex import BasedComplex


def random_element(rng: random.Random, rank: int, max_terms: int = 4, max_len: int = 4, coeff: int = 3) -> GroupRingElt:
    """A nonzero element of ``Z F_rank``."""
    while True:
        terms: dict[Word, int] = {}
        for _ in range(rng.randint(1, max_terms)):
            w = random_word(rng, rank, max_len)
            terms[w] = terms.get(w, 0) + rng.choice([c for c in range(-coeff, coeff + 1) if c])
        a = GroupRingElt(rank, terms)
        if not a.is_zero():
            return a


def random_laurent(rng: random.Random, dim: int, max_terms: int = 3, span: int = 2, coeff: int = 2) -> LaurentPoly:
    while True:
        terms: dict[tuple, int] = {}
        for _ in range(rng.randint(1, max_terms)):
            e = tuple(rng.randint(-span, span) for _ in range(dim))
            terms[e] = terms.get(e, 0) + rng.choice([c for c in range(-coeff, coeff + 1) if c])
        p = LaurentPoly(dim, terms)
        if not p.is_zero():
            return p


def random_unimodular(rng: random.Random, n: int, zero, entry) -> tuple[Matrix, Matrix]:
    """A random invertible matrix and its inverse, from elementary moves.

    ``entry()`` draws off-diagonal multipliers.
    """
    z, one = zero.zero_like(), zero.one_like()
    u = Matrix.identity(n, z)
    inv = Matrix.identity(n, z)
    if n == 0:
        return u, inv
    for _ in range(2 * n):
        if n > 1:
            a, b = rng.sample(range(n), 2)
            c = entry()
            e = [[one if i == j else z for j in range(n)] for i in range(n)]
            ei = [[one if i == j else z for j in range(n)] for i in range(n)]
            e[a][b] = c
            ei[a][b] = -c
            u = Matrix(e, z, n) * u
            inv = inv * Matrix(ei, z, n)
    # a diagonal of trivial units
    diag, dinv = [], []
    for _ in range(n):
        unit = _random_unit(rng, zero)
        diag.append(unit)
        dinv.append(_unit_inv(unit))
    d = Matrix([[diag[i] if i == j else z for j in range(n)] for i in range(n)], z, n)
    di = Matrix([[dinv[i] if i == j else z for j in range(n)] for i in range(n)], z, n)
    return d * u, inv * di


def _random_unit(rng: random.Random, zero):
    s = rng.choice((1, -1))
    if isinstance(zero, GroupRingElt):
        return GroupRingElt.from_word(random_word(rng, zero.rank, 2), s)
    return LaurentPoly.monomial(tuple(rng.randint(-1, 1) for _ in range(zero.dim)), s)


def _unit_inv(u):
    s, g = u.trivial_unit()
    if isinstance(u, GroupRingElt):
        return GroupRingElt.from_word(g.inverse(), s)
    return LaurentPoly.monomial(tuple(-x for x in g), s)


def random_acyclic_laurent_complex(rng: random.Random, dim: int = 1, max_len: int = 3) -> BasedComplex:
    """A based complex over ``Z[Z^dim]`` that is acyclic over the fraction field.

    Built from elementary pieces ``Λ --p--> Λ`` in random degrees, then
    scrambled by random unimodular base changes in every degree.
    """
    zero = LaurentPoly.zero(dim)
    while True:
        n = rng.randint(1, max_len)
        pieces = {i: [random_laurent(rng, dim) for _ in range(rng.randint(0, 2))] for i in range(1, n + 1)}
        counts = {i: len(pieces.get(i, [])) for i in range(0, n + 2)}
        dims_by_deg = {i: counts[i + 1] + counts[i] for i in range(0, n + 1)}
        if sum(dims_by_deg.values()):
            break
    bases = {}
    for i in range(0, n + 1):
        bases[i] = random_unimodular(rng, dims_by_deg[i], zero, lambda: random_laurent(rng, dim, 2, 1, 1))
    bds = []
    for i in range(n, 0, -1):
        rows, cols = dims_by_deg[i], dims_by_deg[i - 1]
        ent = [[zero] * cols for _ in range(rows)]
        for a, p in enumerate(pieces[i]):
            ent[counts[i + 1] + a][a] = p
        a_i = Matrix(ent, zero, cols)
        u, _ = bases[i]
        _, vinv = bases[i - 1]
        bds.append(u * a_i * vinv)
    dims = [dims_by_deg[i] for i in range(n, -1, -1)]
    return BasedComplex(dims, bds, zero).validate()
