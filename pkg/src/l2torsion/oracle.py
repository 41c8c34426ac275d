"""Certificates that square matrices over group rings are invertible over the skew field.

Two sound certificates are used, both one-sided:

* the abelianized determinant is a nonzero Laurent polynomial;
* after substituting random invertible integer ``d×d`` matrices for the
  generators the ``nd×nd`` block matrix has full rank.

A matrix that is not invertible over the skew field is not full over the
group ring, so it factors through a smaller free module and every ring
homomorphic image of it has deficient rank.  Full rank at any substitution
therefore proves invertibility.  Ranks are computed modulo a large prime,
which can only under-estimate the rational rank.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .groupring import GroupRingElt
from .laurent import LaurentPoly
from .matrix import Matrix, abelian_det

PRIME = 2_147_483_647  # 2^31 - 1; products of residues fit in int64

INVERTIBLE = "invertible"
SINGULAR = "singular"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class Budget:
    max_size: int = 8
    seeds_per_size: int = 3
    seed: int = 0

    def sizes(self) -> list[int]:
        out, d = [], 1
        while d <= self.max_size:
            out.append(d)
            d *= 2
        return out

    def to_json(self) -> dict:
        return {"max_size": self.max_size, "seeds_per_size": self.seeds_per_size, "seed": self.seed}


@dataclass(frozen=True)
class InvertVerdict:
    status: str
    certificate: dict = field(default_factory=dict)

    @property
    def invertible(self) -> bool:
        return self.status == INVERTIBLE

    @property
    def singular(self) -> bool:
        return self.status == SINGULAR

    @property
    def undecided(self) -> bool:
        return self.status == UNDECIDED

    def to_json(self) -> dict:
        return {"status": self.status, "certificate": self.certificate}


def abelian_cert(m: Matrix) -> InvertVerdict | None:
    if not m.is_square():
        raise ValueError(f"abelian certificate needs a square matrix, got {m.shape}")
    if m.rows == 0:
        return InvertVerdict(INVERTIBLE, {"kind": "empty"})
    det = abelian_det(m)
    if det.is_zero():
        return None
    return InvertVerdict(INVERTIBLE, {"kind": "abelian_det", "det": det.to_json()})


def _elementary_product(rng: random.Random, d: int) -> tuple[list[list[int]], list[list[int]]]:
    """A random invertible integer matrix together with its exact inverse."""
    m = [[int(i == j) for j in range(d)] for i in range(d)]
    inv = [[int(i == j) for j in range(d)] for i in range(d)]
    for i in range(d):
        if rng.random() < 0.5:
            m[i] = [-x for x in m[i]]
            for r in inv:
                r[i] = -r[i]
    if d == 1:
        return m, inv
    for _ in range(3 * d):
        i, j = rng.sample(range(d), 2)
        c = rng.choice((-2, -1, 1, 2))
        # m <- E_ij(c) m ; inv <- inv E_ij(-c)
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        for r in inv:
            r[j] -= c * r[i]
    perm = list(range(d))
    rng.shuffle(perm)
    m = [m[p] for p in perm]
    inv = [[r[p] for p in perm] for r in inv]
    return m, inv


def substitution(rank: int, d: int, seed: int) -> tuple[list[np.ndarray], list[np.ndarray]]:
    rng = random.Random(f"subst:{rank}:{d}:{seed}")
    gens, invs = [], []
    for _ in range(rank):
        m, inv = _elementary_product(rng, d)
        gens.append(np.array(m, dtype=np.int64) % PRIME)
        invs.append(np.array(inv, dtype=np.int64) % PRIME)
    return gens, invs


def _mulmod(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # split b to keep every partial sum below 2^63
    lo = b & 0xFFFF
    hi = b >> 16
    return ((a @ lo) % PRIME + (((a @ hi) % PRIME) << 16) % PRIME) % PRIME


def evaluate_matrix_mod_p(m: Matrix, gens, invs, d: int) -> np.ndarray:
    """The ``(rows·d) × (cols·d)`` block matrix of ``m`` at the substitution, mod ``PRIME``."""
    out = np.zeros((m.rows * d, m.cols * d), dtype=np.int64)
    cache: dict = {}
    for i, r in enumerate(m.entries):
        for j, x in enumerate(r):
            if x.is_zero():
                continue
            block = np.zeros((d, d), dtype=np.int64)
            for w, c in x.terms.items():
                mat = cache.get(w)
                if mat is None:
                    mat = np.eye(d, dtype=np.int64)
                    for g, e in w.blocks:
                        step = gens[g - 1] if e > 0 else invs[g - 1]
                        for _ in range(abs(e)):
                            mat = _mulmod(mat, step)
                    cache[w] = mat
                block = (block + (c % PRIME) * mat) % PRIME
            out[i * d : (i + 1) * d, j * d : (j + 1) * d] = block
    return out


def rank_mod_p(a: np.ndarray) -> int:
    a = a.copy() % PRIME
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        inv = pow(int(a[r, c]), PRIME - 2, PRIME)
        a[r] = (a[r] * inv) % PRIME
        col = a[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            f = col[mask][:, None]
            a[mask] = (a[mask] - _mulmod(f, a[r][None, :])) % PRIME
        r += 1
    return r


def random_matrix_cert(m: Matrix, d: int, seed: int) -> InvertVerdict | None:
    if not m.is_square():
        raise ValueError(f"random substitution needs a square matrix, got {m.shape}")
    if d < 1:
        raise ValueError("substitution size must be positive")
    if not isinstance(m.zero, GroupRingElt):
        raise TypeError("random substitution applies to free group ring matrices")
    gens, invs = substitution(m.zero.rank, d, seed)
    big = evaluate_matrix_mod_p(m, gens, invs, d)
    if rank_mod_p(big) < m.rows * d:
        return None
    digest = hashlib.sha256(b"".join(g.tobytes() for g in gens)).hexdigest()[:16]
    return InvertVerdict(
        INVERTIBLE,
        {"kind": "random_substitution", "size": d, "seed": seed, "prime": PRIME, "substitution_hash": digest},
    )


def certify(m: Matrix, budget: Budget = Budget(), exact_singular: bool | None = None) -> InvertVerdict:
    """Escalating invertibility check.

    ``exact_singular`` lets a caller with an exact decision (e.g. the
    Stallings route for Fox Jacobians) settle the singular side.
    """
    if not m.is_square():
        return InvertVerdict(SINGULAR, {"reason": "non-square", "shape": list(m.shape)})
    if m.rows and (m.has_zero_row() or m.has_zero_column()):
        return InvertVerdict(SINGULAR, {"reason": "zero-row-or-column"})
    if exact_singular:
        return InvertVerdict(SINGULAR, {"reason": "exact-hom-decision"})
    v = abelian_cert(m)
    if v is not None:
        return v
    if isinstance(m.zero, LaurentPoly):
        # over a commutative domain the determinant decides exactly
        return InvertVerdict(SINGULAR, {"reason": "commutative-determinant-zero"})
    tried = []
    for d in budget.sizes():
        for k in range(budget.seeds_per_size):
            s = budget.seed + k
            v = random_matrix_cert(m, d, s)
            tried.append([d, s])
            if v is not None:
                return v
    return InvertVerdict(UNDECIDED, {"tried": tried, "budget": budget.to_json()})


def evaluate_element(a: GroupRingElt, gens: Sequence[np.ndarray], invs: Sequence[np.ndarray]) -> np.ndarray:
    """Evaluate ``a`` at float or complex matrices (used by numerical estimators)."""
    n = gens[0].shape[0]
    out = np.zeros((n, n), dtype=np.result_type(gens[0], float))
    for w, c in a.terms.items():
        mat = np.eye(n, dtype=out.dtype)
        for g, e in w.blocks:
            step = gens[g - 1] if e > 0 else invs[g - 1]
            for _ in range(abs(e)):
                mat = mat @ step
        out += c * mat
    return out
