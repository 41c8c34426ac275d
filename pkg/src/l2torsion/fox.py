"""Fox free differential calculus."""

from __future__ import annotations

from .freegroup import FreeHom, RankError, Word
from .groupring import GroupRingElt
from .matrix import Matrix


def fox_derivative(w: Word, j: int) -> GroupRingElt:
    """``∂w/∂x_j`` via one left-to-right pass over the prefixes of ``w``.

    Uses ``∂x_j = 1`` and ``∂(x_j^{-1}) = -x_j^{-1}`` with the twisted rule
    ``∂(uv) = ∂u + u·∂v``.
    """
    if not 1 <= j <= w.rank:
        raise RankError(f"generator x{j} outside rank {w.rank}")
    terms: dict[Word, int] = {}
    prefix = Word.identity(w.rank)
    step = Word.generator(w.rank, j)
    back = step.inverse()
    for g, e in w.blocks:
        if g != j:
            prefix = prefix * Word(w.rank, ((g, e),))
            continue
        if e > 0:
            for _ in range(e):
                terms[prefix] = terms.get(prefix, 0) + 1
                prefix = prefix * step
        else:
            for _ in range(-e):
                prefix = prefix * back
                terms[prefix] = terms.get(prefix, 0) - 1
    return GroupRingElt(w.rank, terms)


def fox_gradient(w: Word) -> list[GroupRingElt]:
    return [fox_derivative(w, j) for j in range(1, w.rank + 1)]


def fox_jacobian(phi: FreeHom) -> Matrix:
    """``(J_φ)_{ij} = ∂φ(x_i)/∂y_j``, an ``n × m`` matrix over ``Z F_m``."""
    zero = GroupRingElt.zero(phi.codomain_rank)
    rows = [fox_gradient(img) for img in phi.images]
    return Matrix(rows, zero, phi.codomain_rank)


def apply_hom_to_matrix(psi: FreeHom, m: Matrix) -> Matrix:
    """Push every entry of ``m`` forward along ``psi``."""
    zero = GroupRingElt.zero(psi.codomain_rank)
    return Matrix(
        [[x.map_words(psi, psi.codomain_rank) for x in r] for r in m.entries],
        zero,
        m.cols,
    )
