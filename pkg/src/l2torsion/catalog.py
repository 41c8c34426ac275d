"""Worked examples: circle, torus, chain links, genus-2 handlebody, trefoil."""

from __future__ import annotations

from .complex import BasedComplex, presentation_complex
from .freegroup import FreeHom, Word
from .groupring import GroupRingElt
from .laurent import LaurentPoly
from .matrix import Matrix


def circle_complex() -> BasedComplex:
    """``0 → ZF_1 --(x-1)--> ZF_1 → 0``."""
    x = GroupRingElt.from_word(Word.generator(1, 1))
    z = GroupRingElt.zero(1)
    return BasedComplex((1, 1), (Matrix([[x - 1]], z),), z).validate()


def torus_complex() -> BasedComplex:
    """Cellular chains of the torus over ``Z[t1^±, t2^±]``."""
    z = LaurentPoly.zero(2)
    t1, t2 = LaurentPoly.var(2, 1), LaurentPoly.var(2, 2)
    a2 = Matrix([[1 - t2, t1 - 1]], z)
    a1 = Matrix([[t1 - 1], [t2 - 1]], z)
    return BasedComplex((1, 2, 1), (a2, a1), z).validate()


def chainlink_hom(n: int) -> FreeHom:
    """Inclusion ``R_+ → H`` for the ``n``-chain link complement, ``n ≥ 3``.

    ``u_i ↦ x_i x_{i+1}^{-1}`` for ``i ≤ n-2`` and
    ``u_{n-1} ↦ x_{n-1}^2 x_{n-2} ⋯ x_1``.
    """
    if n < 3:
        raise ValueError("chain links need n >= 3")
    r = n - 1
    images = []
    for i in range(1, r):
        images.append(Word.from_letters(r, [(i, 1), (i + 1, -1)]))
    last = [(r, 1), (r, 1)] + [(k, 1) for k in range(r - 1, 0, -1)]
    images.append(Word.from_letters(r, last))
    return FreeHom(r, r, tuple(images))


def chainlink_y_words(n: int) -> list[Word]:
    """``y_i = x_{n-1} x_{n-2} ⋯ x_i`` in the free group on ``x_1..x_{n-1}``."""
    r = n - 1
    return [Word.from_letters(r, [(k, 1) for k in range(r, i - 1, -1)]) for i in range(1, r + 1)]


def chainlink_expected(n: int) -> GroupRingElt:
    """``1 + y_1 + ⋯ + y_{n-1}`` written in the ``x`` basis."""
    r = n - 1
    return GroupRingElt.from_words(r, [Word.identity(r)] + chainlink_y_words(n))


def y_basis_change(n: int) -> FreeHom:
    """Automorphism sending ``x_i`` to its expression in ``y_1..y_{n-1}``.

    ``x_i = y_{i+1}^{-1} y_i`` for ``i < n-1`` and ``x_{n-1} = y_{n-1}``;
    pushing an element forward rewrites it in the ``y`` basis.
    """
    r = n - 1
    images = [Word.from_letters(r, [(i + 1, -1), (i, 1)]) for i in range(1, r)]
    images.append(Word.generator(r, r))
    return FreeHom(r, r, tuple(images))


def genus2_hom() -> FreeHom:
    """``x ↦ x``, ``u ↦ y x y x^{-1} y^{-1}`` into ``F(x, y)``."""
    return FreeHom(2, 2, (Word.generator(2, 1), Word.from_letters(2, [(2, 1), (1, 1), (2, 1), (1, -1), (2, -1)])))


def genus2_expected() -> GroupRingElt:
    x, y = Word.generator(2, 1), Word.generator(2, 2)
    u = y * x * y * x.inverse() * y.inverse()
    one = GroupRingElt.one(2)
    return one + GroupRingElt.from_word(y * x) - GroupRingElt.from_word(u)


def trefoil_relators() -> tuple[int, list[Word]]:
    """``⟨a, b | a b a b^{-1} a^{-1} b^{-1}⟩``."""
    return 2, [Word.from_letters(2, [(1, 1), (2, 1), (1, 1), (2, -1), (1, -1), (2, -1)])]


def trefoil_complex() -> BasedComplex:
    m, rels = trefoil_relators()
    return presentation_complex(m, rels)


def fk_closed_form(n: int) -> float:
    """Closed form for the Fuglede–Kadison determinant of ``1 + y_1 + ⋯ + y_{n-1}``."""
    return (n - 1) ** ((n - 1) / 2) / n ** ((n - 2) / 2)
