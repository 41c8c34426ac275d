"""Characters, the degree map and leading-term maps.

A character is a rational linear functional on the free abelianization.
For a group ring element ``a`` the degree is the least character value over
the support of ``a`` and the leading term keeps exactly the terms attaining
it.  Everything works the same on free group rings and Laurent rings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Sequence, Union

from .freegroup import Word
from .groupring import GroupRingElt
from .laurent import LaurentPoly
from .matrix import Matrix

if TYPE_CHECKING:
    from .complex import BasedComplex

INFINITY = math.inf
Degree = Union[Fraction, float]
Element = Union[GroupRingElt, LaurentPoly]


@dataclass(frozen=True)
class Character:
    values: tuple[Fraction, ...]

    def __init__(self, values: Iterable):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in values))

    @property
    def dim(self) -> int:
        return len(self.values)

    @classmethod
    def zero(cls, dim: int) -> Character:
        return cls([0] * dim)

    def __call__(self, x) -> Fraction:
        return char_value(self, x)

    def scaled(self, r) -> Character:
        return Character(v * Fraction(r) for v in self.values)

    def to_json(self) -> dict:
        return {"values": [str(v) for v in self.values]}

    @classmethod
    def from_json(cls, data) -> Character:
        vals = data["values"] if isinstance(data, dict) else data
        return cls(Fraction(str(v)) for v in vals)

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.values) + ")"


def _exps(x) -> Sequence[int]:
    if isinstance(x, Word):
        return x.exponent_sums()
    return x


def char_value(phi: Character, x: Word | Sequence[int]) -> Fraction:
    e = _exps(x)
    if len(e) != phi.dim:
        raise ValueError(f"character of dim {phi.dim} applied to rank {len(e)}")
    return sum((v * k for v, k in zip(phi.values, e)), Fraction(0))


def _keys_and_values(phi: Character, a: Element):
    if isinstance(a, GroupRingElt):
        if a.rank != phi.dim:
            raise ValueError(f"character of dim {phi.dim} applied to rank {a.rank}")
        return [(w, char_value(phi, w.exponent_sums())) for w in a.terms]
    if a.dim != phi.dim:
        raise ValueError(f"character of dim {phi.dim} applied to dim {a.dim}")
    return [(e, char_value(phi, e)) for e in a.terms]


def delta(phi: Character, a: Element) -> Degree:
    """Least character value on the support; ``+inf`` for zero."""
    kv = _keys_and_values(phi, a)
    if not kv:
        return INFINITY
    return min(v for _, v in kv)


def leading_elt(phi: Character, a: Element) -> Element:
    kv = _keys_and_values(phi, a)
    if not kv:
        return a
    d = min(v for _, v in kv)
    keep = {k: a.terms[k] for k, v in kv if v == d}
    return type(a)._raw(a.rank if isinstance(a, GroupRingElt) else a.dim, keep)


def is_phi_pure(phi: Character, a: Element) -> bool:
    return leading_elt(phi, a) == a


def matrix_delta(phi: Character, m: Matrix) -> Degree:
    return min((delta(phi, x) for r in m.entries for x in r), default=INFINITY)


def leading_matrix(phi: Character, m: Matrix) -> Matrix:
    """Keep, in every entry, only the terms of value ``δ_φ(M)`` (global minimum)."""
    d = matrix_delta(phi, m)
    if d == INFINITY:
        return m
    out = []
    for r in m.entries:
        row = []
        for x in r:
            if x.is_zero() or delta(phi, x) != d:
                row.append(m.zero)
            else:
                row.append(leading_elt(phi, x))
        out.append(row)
    return Matrix(out, m.zero, m.cols)


def leading_matrix_bidegree(
    phi: Character, m: Matrix, row_deg: Sequence, col_deg: Sequence
) -> Matrix:
    """Terms whose value is ``row_deg[i] - col_deg[j]`` in entry ``(i, j)``."""
    out = []
    for i, r in enumerate(m.entries):
        row = []
        for j, x in enumerate(r):
            target = Fraction(row_deg[i]) - Fraction(col_deg[j])
            kv = _keys_and_values(phi, x)
            keep = {k: x.terms[k] for k, v in kv if v == target}
            row.append(type(x)._raw(x.rank if isinstance(x, GroupRingElt) else x.dim, keep))
        out.append(row)
    return Matrix(out, m.zero, m.cols)


def leading_complex(phi: Character, c: BasedComplex) -> BasedComplex:
    from .complex import BasedComplex

    c.validate()
    out = BasedComplex(c.dims, [leading_matrix(phi, a) for a in c.boundaries], c.zero)
    out.validate()
    return out
