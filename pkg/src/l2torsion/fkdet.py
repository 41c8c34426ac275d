"""Numerical Fuglede–Kadison determinants via random monomial matrices.

Each free generator is replaced by an independent ``N × N`` permutation
matrix whose nonzero entries carry independent uniform unit phases.  Such
matrices are Haar-distributed on a subgroup that is asymptotically free, and
unlike bare permutation matrices they share no fixed eigenvector, so
elements like ``1 - x`` are not singular in every sample.  For Laurent
polynomials the variables become independent diagonal phase matrices, which
recovers the Mahler measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .groupring import GroupRingElt
from .laurent import LaurentPoly
from .matrix import Matrix

MIN_N = 16
DEFAULT_N = 512
DEFAULT_TRIALS = 20
# per-site log|det| below this is treated as a numerically singular sample
SINGULAR_THRESHOLD = -30.0


class FKEstimationError(RuntimeError):
    pass


@dataclass(frozen=True)
class FKEstimate:
    mean: float
    stderr: float
    trials: int
    N: int
    seed: int
    discarded: int = 0

    def to_json(self) -> dict:
        return {
            "estimate": self.mean,
            "stderr": self.stderr,
            "N": self.N,
            "trials": self.trials,
            "discarded": self.discarded,
            "seed": self.seed,
        }


class _Monomial:
    """Sparse ``M[i, perm[i]] = phase[i]``."""

    __slots__ = ("perm", "phase")

    def __init__(self, perm: np.ndarray, phase: np.ndarray):
        self.perm = perm
        self.phase = phase

    @classmethod
    def identity(cls, n: int) -> _Monomial:
        return cls(np.arange(n), np.ones(n, dtype=complex))

    def __mul__(self, other: _Monomial) -> _Monomial:
        return _Monomial(other.perm[self.perm], self.phase * other.phase[self.perm])

    def inverse(self) -> _Monomial:
        perm = np.empty_like(self.perm)
        perm[self.perm] = np.arange(len(self.perm))
        phase = np.empty_like(self.phase)
        phase[self.perm] = np.conj(self.phase)
        return _Monomial(perm, phase)


def _sample(rng: np.random.Generator, rank: int, n: int, commuting: bool) -> list[_Monomial]:
    gens = []
    for _ in range(rank):
        perm = np.arange(n) if commuting else rng.permutation(n)
        phase = np.exp(2j * np.pi * rng.random(n))
        gens.append(_Monomial(perm, phase))
    return gens


def _word_monomial(key, gens, invs, n, commuting, cache) -> _Monomial:
    hit = cache.get(key)
    if hit is not None:
        return hit
    out = _Monomial.identity(n)
    if commuting:
        for i, e in enumerate(key):
            step = gens[i] if e > 0 else invs[i]
            for _ in range(abs(e)):
                out = out * step
    else:
        for g, e in key.blocks:
            step = gens[g - 1] if e > 0 else invs[g - 1]
            for _ in range(abs(e)):
                out = out * step
    cache[key] = out
    return out


def _dense(a, gens, invs, n, commuting, cache) -> np.ndarray:
    out = np.zeros((n, n), dtype=complex)
    rows = np.arange(n)
    for key, c in a.terms.items():
        m = _word_monomial(key, gens, invs, n, commuting, cache)
        out[rows, m.perm] += c * m.phase
    return out


def _ring_info(zero) -> tuple[int, bool]:
    if isinstance(zero, GroupRingElt):
        return zero.rank, False
    if isinstance(zero, LaurentPoly):
        return zero.dim, True
    raise TypeError(f"unsupported coefficient ring {type(zero).__name__}")


def estimate_fk_matrix(
    m: Matrix, N: int = DEFAULT_N, trials: int = DEFAULT_TRIALS, seed: int = 0
) -> FKEstimate:
    """Estimate the FK determinant of a square matrix over a group ring."""
    if not m.is_square() or m.rows == 0:
        raise ValueError(f"need a non-empty square matrix, got {m.shape}")
    if N < MIN_N:
        raise ValueError(f"matrix size N must be at least {MIN_N}")
    if trials < 1:
        raise ValueError("trials must be positive")
    rank, commuting = _ring_info(m.zero)
    logs = []
    discarded = 0
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        gens = _sample(rng, rank, N, commuting)
        invs = [g.inverse() for g in gens]
        cache: dict = {}
        big = np.block([[_dense(x, gens, invs, N, commuting, cache) for x in row] for row in m.entries])
        sign, logabs = np.linalg.slogdet(big)
        per_site = logabs / N
        if sign == 0 or not math.isfinite(per_site) or per_site < SINGULAR_THRESHOLD * m.rows:
            discarded += 1
            continue
        logs.append(per_site)
    if not logs or discarded * 2 > trials:
        raise FKEstimationError(f"{discarded} of {trials} samples were numerically singular")
    arr = np.array(logs)
    mean_log = float(arr.mean())
    se_log = float(arr.std(ddof=1) / math.sqrt(len(arr))) if len(arr) > 1 else 0.0
    est = math.exp(mean_log)
    return FKEstimate(est, est * se_log, trials, N, seed, discarded)


def estimate_fk(
    a: GroupRingElt | LaurentPoly, N: int = DEFAULT_N, trials: int = DEFAULT_TRIALS, seed: int = 0
) -> FKEstimate:
    """Estimate ``det_{NG}(a)`` by averaging ``(1/N) log|det A|`` over samples."""
    if a.is_zero():
        raise ValueError("FK determinant of zero")
    return estimate_fk_matrix(Matrix([[a]], a.zero_like()), N, trials, seed)


def fk_of_torsion(tau, N: int = DEFAULT_N, trials: int = DEFAULT_TRIALS, seed: int = 0) -> FKEstimate:
    """FK determinant of a torsion value, factor by factor with exponent signs."""
    if tau.is_zero():
        raise ValueError("FK determinant of zero torsion")
    if tau.element_rep is not None:
        if tau.element_rep.trivial_unit() is not None:
            return FKEstimate(1.0, 0.0, trials, N, seed)
        return estimate_fk(tau.element_rep, N, trials, seed)
    parts = tau.element_factors
    if parts is None:
        parts = [(b, e) for b, e in tau.factors]
    log_total, var, discarded = 0.0, 0.0, 0
    for x, e in parts:
        est = estimate_fk_matrix(x, N, trials, seed) if isinstance(x, Matrix) else estimate_fk(x, N, trials, seed)
        log_total += e * math.log(est.mean)
        var += (est.stderr / est.mean) ** 2
        discarded += est.discarded
    total = math.exp(log_total)
    return FKEstimate(total, total * math.sqrt(var), trials, N, seed, discarded)
