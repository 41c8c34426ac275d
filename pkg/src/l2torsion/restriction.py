"""Restriction to finite-index normal subgroups.

A normal subgroup ``L`` of ``F_m`` is given by a transitive permutation
action of the generators on cosets ``1..d`` (right action, one-indexed in
JSON, zero-indexed internally); ``L`` is the stabilizer of coset 1 and must
act trivially.  Schreier representatives come from a spanning tree of the
coset graph, and the non-tree edges give a free basis of ``L``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .freegroup import Word
from .groupring import GroupRingElt
from .laurent import LaurentFraction, LaurentPoly
from .leading import Character, char_value, leading_elt
from .matrix import Matrix, abelian_det


class QuotientError(ValueError):
    pass


class ResUnavailable(ArithmeticError):
    """The abelianized determinant vanished, so the shadow says nothing."""


@dataclass(frozen=True)
class FiniteQuotientSpec:
    rank: int
    degree: int
    perms: tuple[tuple[int, ...], ...]  # zero-indexed images, perms[j][k] = k·x_{j+1}

    @classmethod
    def from_json(cls, data: dict) -> FiniteQuotientSpec:
        m, d = int(data["rank"]), int(data["degree"])
        perms = data["perms"]
        if len(perms) != m:
            raise QuotientError(f"expected {m} permutations, got {len(perms)}")
        out = []
        for p in perms:
            p = [int(v) - 1 for v in p]
            if sorted(p) != list(range(d)):
                raise QuotientError(f"{[v + 1 for v in p]} is not a permutation of 1..{d}")
            out.append(tuple(p))
        return cls(m, d, tuple(out))

    def to_json(self) -> dict:
        return {"rank": self.rank, "degree": self.degree, "perms": [[v + 1 for v in p] for p in self.perms]}

    def act(self, k: int, gen: int, sign: int) -> int:
        p = self.perms[gen - 1]
        return p[k] if sign > 0 else p.index(k)

    def act_word(self, k: int, w: Word) -> int:
        for g, s in w.letters():
            k = self.act(k, g, s)
        return k


@dataclass
class SchreierData:
    spec: FiniteQuotientSpec
    transversal: list[Word]
    # (coset, generator) -> basis index for the non-tree edges
    edge_gen: dict[tuple[int, int], int]
    basis: list[Word]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def degree(self) -> int:
        return self.spec.degree

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "transversal": [str(w) for w in self.transversal],
            "basis": [str(w) for w in self.basis],
            "rank": self.rank,
        }


def coset_table(spec: FiniteQuotientSpec, reverse: bool = False) -> SchreierData:
    """Breadth-first Schreier transversal and free basis of ``L``.

    ``reverse`` scans generators in the opposite order, which gives a
    different spanning tree (used to test independence of the section).
    """
    d, m = spec.degree, spec.rank
    steps = [(g, s) for g in range(1, m + 1) for s in (1, -1)]
    if reverse:
        steps.reverse()
    trans: list[Word | None] = [None] * d
    trans[0] = Word.identity(m)
    tree: set[tuple[int, int]] = set()  # positive edges (coset, gen) in the tree
    queue = deque([0])
    while queue:
        k = queue.popleft()
        for g, s in steps:
            t = spec.act(k, g, s)
            if trans[t] is None:
                trans[t] = trans[k] * Word.generator(m, g, s)
                tree.add((k, g) if s > 0 else (t, g))
                queue.append(t)
    if any(w is None for w in trans):
        raise QuotientError("the permutation action is not transitive")
    edge_gen: dict[tuple[int, int], int] = {}
    basis: list[Word] = []
    for k in range(d):
        for g in range(1, m + 1):
            if (k, g) in tree:
                continue
            t = spec.act(k, g, 1)
            edge_gen[(k, g)] = len(basis)
            basis.append(trans[k] * Word.generator(m, g) * trans[t].inverse())
    for s in basis:
        if any(spec.act_word(k, s) != k for k in range(d)):
            raise QuotientError("the stabilizer of coset 1 is not normal")
    return SchreierData(spec, trans, edge_gen, basis)


def rewrite(w: Word, data: SchreierData) -> Word:
    """Express ``w ∈ L`` in the Schreier basis."""
    spec = data.spec
    r = data.rank
    letters = []
    c = 0
    for g, s in w.letters():
        if s > 0:
            t = spec.act(c, g, 1)
            idx = data.edge_gen.get((c, g))
            if idx is not None:
                letters.append((idx + 1, 1))
        else:
            t = spec.act(c, g, -1)
            idx = data.edge_gen.get((t, g))
            if idx is not None:
                letters.append((idx + 1, -1))
        c = t
    if c != 0:
        raise QuotientError(f"{w} is not in the subgroup")
    return Word.from_letters(r, letters)


def expand(v: Word, data: SchreierData) -> Word:
    """Inverse of :func:`rewrite`: substitute the basis words back into ``F``."""
    out = Word.identity(data.spec.rank)
    for i, s in v.letters():
        b = data.basis[i - 1]
        out = out * (b if s > 0 else b.inverse())
    return out


def lambda_matrix(z: GroupRingElt, data: SchreierData) -> Matrix:
    """``d × d`` matrix over ``Z L`` with ``g_k · z = Σ_j Λ[k][j] · g_j``."""
    spec, trans = data.spec, data.transversal
    if z.rank != spec.rank:
        raise ValueError(f"element of rank {z.rank} restricted along rank {spec.rank}")
    d, r = spec.degree, data.rank
    cells: list[list[dict[Word, int]]] = [[{} for _ in range(d)] for _ in range(d)]
    for k in range(d):
        for w, c in z.terms.items():
            j = spec.act_word(k, w)
            v = rewrite(trans[k] * w * trans[j].inverse(), data)
            cell = cells[k][j]
            cell[v] = cell.get(v, 0) + c
    zero = GroupRingElt.zero(r)
    return Matrix([[GroupRingElt(r, cell) for cell in row] for row in cells], zero, d)


def lambda_of_matrix(m: Matrix, data: SchreierData) -> Matrix:
    """Blockwise ``Λ`` of a matrix over ``Z F``."""
    d = data.degree
    zero = GroupRingElt.zero(data.rank)
    blocks = [[lambda_matrix(x, data) for x in row] for row in m.entries]
    out = []
    for i in range(m.rows):
        for a in range(d):
            out.append([blocks[i][j][a, b] for j in range(m.cols) for b in range(d)])
    return Matrix(out, zero, m.cols * d)


def restricted_character(phi: Character, data: SchreierData) -> Character:
    """``φ|_L`` in the Schreier basis."""
    return Character([char_value(phi, b) for b in data.basis])


def res_invariants(z: GroupRingElt, data: SchreierData) -> LaurentPoly:
    """Abelianized ``det Λ(z)`` over ``Z[H_1(L)]``, normalized up to ``±t^k``."""
    if z.is_zero():
        raise ValueError("restriction of zero")
    det = abelian_det(lambda_matrix(z, data))
    if det.is_zero():
        raise ResUnavailable("abelianized determinant of Λ(z) vanishes")
    return det.unit_normal()


def res_of_matrix(m: Matrix, data: SchreierData) -> LaurentPoly:
    det = abelian_det(lambda_of_matrix(m, data))
    if det.is_zero():
        raise ResUnavailable("abelianized determinant of Λ(M) vanishes")
    return det.unit_normal()


def res_of_torsion(tau, data: SchreierData) -> LaurentFraction:
    """Factorwise restriction of a torsion value's formal product."""
    if tau.is_zero():
        raise ValueError("restriction of zero torsion")
    out = LaurentFraction.one(data.rank)
    for b, e in tau.factors:
        f = LaurentFraction(res_of_matrix(b, data))
        out = out * (f if e > 0 else f.inverse())
    return out


def check_res_leading_commute(z: GroupRingElt, phi: Character, data: SchreierData) -> bool:
    """Compare the lowest ``φ|_L`` part of ``res(z)`` with ``res(L_φ z)``."""
    values = restricted_character(phi, data).values
    lhs = res_invariants(z, data).lowest_part(values)
    rhs = res_invariants(leading_elt(phi, z), data)
    return lhs.equal_up_to_unit(rhs)


def quotient_from_perms(perms: Sequence[Sequence[int]]) -> FiniteQuotientSpec:
    """Build a spec from one-indexed permutations."""
    d = len(perms[0]) if perms else 1
    return FiniteQuotientSpec.from_json({"rank": len(perms), "degree": d, "perms": [list(p) for p in perms]})
