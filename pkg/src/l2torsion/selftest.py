"""Acceptance checks with independent oracles.

Each ``check_*`` function returns a :class:`CriterionResult`.  The oracles
here deliberately avoid the library's own algorithms: torsion of random
complexes is compared against an exact Laplacian determinant formula, the
trefoil against a sympy Fox-calculus Alexander polynomial, injectivity
against a kernel brute force.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .catalog import (
    chainlink_expected,
    chainlink_hom,
    circle_complex,
    fk_closed_form,
    genus2_expected,
    genus2_hom,
    torus_complex,
    trefoil_complex,
    trefoil_relators,
    y_basis_change,
)
from .complex import BasedComplex, dualize, torsion, torsion_of_hom, wh_element_equal
from .fkdet import estimate_fk
from .fox import apply_hom_to_matrix, fox_derivative, fox_jacobian
from .freegroup import FreeHom, Word, compose, random_hom, random_word
from .groupring import GroupRingElt
from .laurent import LaurentFraction, LaurentPoly
from .leading import Character, leading_complex, leading_elt
from .matrix import Matrix, abelian_det
from .oracle import Budget, certify
from .polytope import PolytopeDiff, hull, standard_simplex
from .randgen import random_acyclic_laurent_complex, random_element, random_unimodular
from .restriction import (
    FiniteQuotientSpec,
    QuotientError,
    ResUnavailable,
    check_res_leading_commute,
    coset_table,
    lambda_matrix,
    res_invariants,
)
from .stallings import build_core, decide_weak_iso, is_compressed, is_injective, is_isomorphism


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] criterion {self.number}: {self.name} ({self.seconds:.2f}s) {self.detail}"

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed, "detail": self.detail, "seconds": round(self.seconds, 3)}


def _timed(number: int, name: str, body: Callable[[], tuple[bool, str]]) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        ok, detail = body()
    except Exception as exc:  # a crash is a failure, reported with its message
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    return CriterionResult(number, name, ok, detail, time.perf_counter() - t0)


# ----------------------------------------------------------------- oracles


def laplacian_torsion_squared(c: BasedComplex, point) -> Fraction | None:
    """``τ(point)^2`` from combinatorial Laplacians, exact over Q.

    ``τ^2 = ∏_i det(Δ_i)^{(-1)^i i}`` with ``Δ_i = A_i A_i^T + A_{i+1}^T A_{i+1}``;
    ``None`` if the specialized complex is not acyclic.
    """
    import sympy

    n = c.top
    mats = {}
    for i in range(1, n + 1):
        a = c.boundary(i)
        vals = [sympy.Rational(x.evaluate(point)) for r in a.entries for x in r]
        mats[i] = sympy.Matrix(a.rows, a.cols, vals)
    total = sympy.Rational(1)
    for i in range(n + 1):
        d = c.dim(i)
        if d == 0:
            continue
        lap = sympy.zeros(d, d)
        if i >= 1:
            lap += mats[i] * mats[i].T
        if i + 1 <= n:
            lap += mats[i + 1].T * mats[i + 1]
        det = lap.det()
        if det == 0:
            return None
        total *= det ** ((-1) ** i * i)
    return Fraction(int(total.p), int(total.q))


def alexander_torsion_oracle(m: int, relator: Word):
    """Alexander polynomial of a one-relator presentation with all generators sent to ``t``.

    Independent of the library: Fox derivatives are summed directly as sympy
    monomials along the relator.
    """
    import sympy

    t = sympy.symbols("t")
    derivs = [sympy.Integer(0)] * m
    prefix = sympy.Integer(0)  # exponent of t for the prefix read so far
    for g, s in relator.letters():
        if s > 0:
            derivs[g - 1] += t**prefix
            prefix += 1
        else:
            prefix -= 1
            derivs[g - 1] -= t**prefix
    polys = [sympy.Poly(sympy.expand(d * t ** (2 * len(relator))), t) for d in derivs]
    delta = polys[0]
    for p in polys[1:]:
        delta = sympy.gcd(delta, p)
    # strip the power of t
    while delta.degree() > 0 and delta.eval(0) == 0:
        delta = sympy.Poly(sympy.cancel(delta.as_expr() / t), t)
    return t, delta


def kernel_brute_force(phi: FreeHom, max_len: int = 6) -> bool:
    """``True`` when no reduced word of length ``1..max_len`` maps to the identity."""
    n = phi.domain_rank
    letters = [(g, s) for g in range(1, n + 1) for s in (1, -1)]

    def extend(prefix, image, depth):
        for g, s in letters:
            if prefix and prefix[-1] == (g, -s):
                continue
            step = phi.images[g - 1] if s > 0 else phi.images[g - 1].inverse()
            img = image * step
            if img.is_identity():
                return False
            if depth + 1 < max_len and not extend(prefix + [(g, s)], img, depth + 1):
                return False
        return True

    return extend([], Word.identity(phi.codomain_rank), 0)


# ---------------------------------------------------------------- criteria


def check_chainlinks() -> tuple[bool, str]:
    notes = []
    ok = True
    for n in range(3, 9):
        t0 = time.perf_counter()
        phi = chainlink_hom(n)
        tau = torsion_of_hom(phi)
        rep = tau.element_rep
        same = rep is not None and wh_element_equal(rep, chainlink_expected(n))
        rep_y = rep.map_words(y_basis_change(n), n - 1) if rep is not None else None
        simplex = rep_y is not None and hull(rep_y.support_points(), n - 1) == standard_simplex(n - 1)
        taut = decide_weak_iso(phi) is True
        product = is_isomorphism(phi)
        dt = time.perf_counter() - t0
        good = same and simplex and taut and not product and dt < 5
        ok &= good
        notes.append(f"n={n}:{'ok' if good else 'bad'}({dt:.2f}s)")
    return ok, " ".join(notes)


def check_genus2() -> tuple[bool, str]:
    t0 = time.perf_counter()
    tau = torsion_of_hom(genus2_hom())
    dt = time.perf_counter() - t0
    rep_ok = tau.element_rep == genus2_expected()
    target = PolytopeDiff.of(hull([(0, 0), (0, 1), (1, 1)], 2))
    poly_ok = tau.polytope is not None and tau.polytope == target
    return rep_ok and poly_ok and dt < 1, f"rep={tau.element_rep.to_string(['x', 'y'])} polytope_ok={poly_ok} t={dt:.3f}s"


def check_fk(ns=(3, 4, 5), N: int = 512, trials: int = 20) -> tuple[bool, str]:
    ok = True
    notes = []
    for n in ns:
        t0 = time.perf_counter()
        est = estimate_fk(chainlink_expected(n), N=N, trials=trials, seed=n)
        dt = time.perf_counter() - t0
        target = fk_closed_form(n)
        rel = abs(est.mean - target) / target
        good = rel < 0.02 and dt < 60
        ok &= good
        notes.append(f"n={n}: {est.mean:.5f} vs {target:.5f} (rel {rel:.2e}, {dt:.1f}s)")
    return ok, "; ".join(notes)


def check_circle_torus() -> tuple[bool, str]:
    t0 = time.perf_counter()
    c = torsion(circle_complex())
    x = GroupRingElt.from_word(Word.generator(1, 1))
    factors_ok = len(c.factors) == 1 and c.factors[0][1] == -1 and c.factors[0][0] == Matrix([[x - 1]], x.zero_like())
    t = LaurentPoly.var(1, 1)
    det_ok = c.abelian_det == LaurentFraction(t.one_like(), t - 1)
    tt = torsion(torus_complex())
    torus_ok = tt.abelian_det is not None and tt.abelian_det.is_unit()
    dt = time.perf_counter() - t0
    return factors_ok and det_ok and torus_ok and dt < 1, f"circle={c.abelian_det} torus={tt.abelian_det} t={dt:.3f}s"


def check_fox(seed: int = 5) -> tuple[bool, str]:
    rng = random.Random(seed)
    fails = [0, 0, 0]
    for _ in range(500):
        m = rng.randint(1, 3)
        u, v = random_word(rng, m, 8), random_word(rng, m, 8)
        j = rng.randint(1, m)
        lhs = fox_derivative(u * v, j)
        rhs = fox_derivative(u, j) + GroupRingElt.from_word(u) * fox_derivative(v, j)
        fails[0] += lhs != rhs
    for _ in range(300):
        m = rng.randint(1, 3)
        w = random_word(rng, m, 12)
        total = GroupRingElt.zero(m)
        for j in range(1, m + 1):
            total = total + fox_derivative(w, j) * (GroupRingElt.from_word(Word.generator(m, j)) - 1)
        fails[1] += total != GroupRingElt.from_word(w) - 1
    for _ in range(100):
        k, m, l = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 3)
        phi = random_hom(rng, k, m, 4)
        psi = random_hom(rng, m, l, 4)
        lhs = fox_jacobian(compose(psi, phi))
        rhs = apply_hom_to_matrix(psi, fox_jacobian(phi)) * fox_jacobian(psi)
        fails[2] += lhs != rhs
    return fails == [0, 0, 0], f"failures product={fails[0]}/500 fundamental={fails[1]}/300 chain={fails[2]}/100"


def check_leading(seed: int = 6) -> tuple[bool, str]:
    rng = random.Random(seed)
    homo_fail = 0
    for _ in range(500):
        m = rng.randint(1, 3)
        a, b = random_element(rng, m), random_element(rng, m)
        phi = Character([rng.randint(-3, 3) for _ in range(m)])
        homo_fail += leading_elt(phi, a * b) != leading_elt(phi, a) * leading_elt(phi, b)
    law_fail = law_cases = skipped = 0
    while law_cases < 100:
        dim = rng.choice([1, 2])
        c = random_acyclic_laurent_complex(rng, dim)
        phi = Character([rng.randint(-2, 2) for _ in range(dim)])
        lc = torsion(leading_complex(phi, c))
        if lc.is_zero():
            skipped += 1
            continue
        law_cases += 1
        tc = torsion(c)
        law_fail += not tc.abelian_det.lowest_part(phi.values).equal_up_to_unit(lc.abelian_det)
    oracle_fail = 0
    for _ in range(100):
        dim = rng.choice([1, 2])
        c = random_acyclic_laurent_complex(rng, dim)
        tc = torsion(c)
        while True:
            point = [Fraction(rng.randint(2, 19), rng.randint(2, 19)) for _ in range(dim)]
            sq = laplacian_torsion_squared(c, point)
            if sq is not None and tc.abelian_det.den.evaluate(point) != 0:
                break
        oracle_fail += tc.abelian_det.evaluate(point) ** 2 != sq
    ok = homo_fail == 0 and law_fail == 0 and oracle_fail == 0
    return ok, (
        f"homomorphy failures {homo_fail}/500; leading law failures {law_fail}/100 "
        f"({skipped} non-acyclic leading complexes redrawn); Laplacian oracle mismatches {oracle_fail}/100"
    )


def _regular_spec(rng: random.Random, m: int) -> FiniteQuotientSpec:
    """A random regular action of a group of order at most 4."""
    while True:
        kind = rng.choice(["cyclic2", "cyclic3", "cyclic4", "klein"])
        if kind == "klein":
            d = 4
            perms = [[(k ^ a) + 1 for k in range(d)] for a in (rng.randrange(4) for _ in range(m))]
        else:
            d = int(kind[-1])
            perms = [[(k + a) % d + 1 for k in range(d)] for a in (rng.randrange(d) for _ in range(m))]
        try:
            spec = FiniteQuotientSpec.from_json({"rank": m, "degree": d, "perms": perms})
            coset_table(spec)
            return spec
        except QuotientError:
            continue


def check_restriction(seed: int = 7) -> tuple[bool, str]:
    rng = random.Random(seed)
    mult_fail = 0
    for _ in range(100):
        m = rng.randint(1, 2)
        data = coset_table(_regular_spec(rng, m))
        a, b = random_element(rng, m, 3, 3), random_element(rng, m, 3, 3)
        mult_fail += lambda_matrix(a * b, data) != lambda_matrix(a, data) * lambda_matrix(b, data)
    spec = FiniteQuotientSpec.from_json({"rank": 1, "degree": 2, "perms": [[2, 1]]})
    data = coset_table(spec)
    x = GroupRingElt.from_word(Word.generator(1, 1))
    t = LaurentPoly.var(1, 1)
    norm = res_invariants(x - 1, data)
    norm_ok = norm == t - 1 or norm == 1 - t
    comm_fail = cases = skipped = 0
    while cases < 100:
        m = rng.randint(1, 2)
        data = coset_table(_regular_spec(rng, m))
        z = random_element(rng, m, 3, 3)
        phi = Character([rng.randint(-2, 2) for _ in range(m)])
        try:
            good = check_res_leading_commute(z, phi, data)
        except ResUnavailable:
            skipped += 1
            continue
        cases += 1
        comm_fail += not good
    ok = mult_fail == 0 and norm_ok and comm_fail == 0
    return ok, (
        f"multiplicativity failures {mult_fail}/100; res(x-1)={norm}; "
        f"commutation failures {comm_fail}/100 ({skipped} unavailable redrawn)"
    )


def check_stallings(seed: int = 8) -> tuple[bool, str]:
    rng = random.Random(seed)
    disagree = non_injective = 0
    for _ in range(30):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        phi = random_hom(rng, n, m, 3)
        inj = is_injective(phi)
        non_injective += not inj
        disagree += inj != kernel_brute_force(phi, 6)
    x, y = Word.generator(2, 1), Word.generator(2, 2)
    c1 = is_compressed(build_core([x * x, y], 2))
    c2 = is_compressed(build_core([x * x, y * y, (x * y) * (x * y)], 2))
    chain_ok = all(decide_weak_iso(chainlink_hom(n)) is True for n in range(3, 7))
    ok = disagree == 0 and c1 and not c2 and chain_ok
    return ok, f"injectivity disagreements {disagree}/30 ({non_injective} non-injective); <x^2,y> compressed={c1}; <x^2,y^2,(xy)^2> compressed={c2}; chainlinks taut={chain_ok}"


def _invertible_matrix(rng: random.Random, n: int, m: int) -> Matrix:
    """Unimodular scramble of a triangular matrix with nonzero diagonal."""
    zero = GroupRingElt.zero(m)
    x, y = Word.generator(m, 1), Word.generator(m, min(2, m))
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if j < i:
                row.append(zero)
            elif j == i:
                if m >= 2 and rng.random() < 0.5:
                    # abelianizes to zero: forces the random-substitution certificate
                    w = random_word(rng, m, 2)
                    row.append(GroupRingElt.from_word(w * x * y) - GroupRingElt.from_word(w * y * x))
                else:
                    row.append(random_element(rng, m, 3, 3))
            else:
                row.append(random_element(rng, m, 2, 2))
        rows.append(row)
    tri = Matrix(rows, zero, n)
    u, _ = random_unimodular(rng, n, zero, lambda: random_element(rng, m, 2, 2, 1))
    v, _ = random_unimodular(rng, n, zero, lambda: random_element(rng, m, 2, 2, 1))
    return u * tri * v


def _singular_matrix(rng: random.Random, n: int, m: int) -> Matrix:
    """A product through a free module of rank ``n-1`` (not full, hence singular)."""
    zero = GroupRingElt.zero(m)
    p = Matrix([[random_element(rng, m, 3, 3) for _ in range(n - 1)] for _ in range(n)], zero, n - 1)
    q = Matrix([[random_element(rng, m, 3, 3) for _ in range(n)] for _ in range(n - 1)], zero, n)
    return p * q


def check_oracle(seed: int = 9) -> tuple[bool, str]:
    rng = random.Random(seed)
    budget = Budget()
    missed = 0
    substituted = 0
    for _ in range(200):
        a = _invertible_matrix(rng, rng.randint(1, 3), rng.randint(1, 3))
        v = certify(a, budget)
        missed += not v.invertible
        substituted += v.certificate.get("kind") == "random_substitution"
    false_cert = 0
    for _ in range(200):
        a = _singular_matrix(rng, rng.randint(2, 3), rng.randint(1, 3))
        false_cert += certify(a, budget).invertible
    x, y = Word.generator(2, 1), Word.generator(2, 2)
    gx, gy, gxy = GroupRingElt.from_word(x), GroupRingElt.from_word(y), GroupRingElt.from_word(x * y)
    dieudonne = Matrix([[gx, GroupRingElt.one(2)], [gxy, gy]], gx.zero_like())
    ab_zero = abelian_det(dieudonne).is_zero()
    v = certify(dieudonne, budget)
    dieudonne_ok = ab_zero and v.invertible and v.certificate.get("kind") == "random_substitution"
    ok = missed == 0 and false_cert == 0 and dieudonne_ok
    return ok, (
        f"uncertified invertible {missed}/200 ({substituted} needed substitution); "
        f"false certificates {false_cert}/200; [[x,1],[xy,y]] certified={dieudonne_ok}"
    )


def check_duality(seed: int = 10) -> tuple[bool, str]:
    rng = random.Random(seed)
    fails = 0
    for _ in range(100):
        dim = rng.choice([1, 2])
        c = random_acyclic_laurent_complex(rng, dim)
        t = torsion(c).abelian_det
        td = torsion(dualize(c)).abelian_det
        fails += not td.involute().equal_up_to_unit(t ** ((-1) ** (c.top + 1)))
    return fails == 0, f"duality failures {fails}/100"


def check_trefoil() -> tuple[bool, str]:
    import sympy

    tau = torsion(trefoil_complex())
    m, rels = trefoil_relators()
    t, delta = alexander_torsion_oracle(m, rels[0])
    coeffs = [int(c) for c in delta.all_coeffs()]
    num = LaurentPoly(1, {(k,): c for k, c in enumerate(reversed(coeffs)) if c})
    expected = LaurentFraction(num, LaurentPoly.var(1, 1) - 1)
    match = tau.abelian_det is not None and tau.abelian_det.equal_up_to_unit(expected)
    monic = abs(coeffs[0]) == 1 and abs(coeffs[-1]) == 1
    target = sympy.Poly(t**2 - t + 1, t)
    oracle_ok = delta == target or delta == -target
    return match and monic and oracle_ok, f"torsion={tau.abelian_det} alexander={delta.as_expr()} monic={monic}"


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, str]], bool]] = [
    (1, "n-chain link family", check_chainlinks, False),
    (2, "genus-2 sutured handlebody", check_genus2, False),
    (3, "Fuglede-Kadison determinant", check_fk, True),
    (4, "circle and torus complexes", check_circle_torus, False),
    (5, "Fox calculus properties", check_fox, False),
    (6, "leading-term properties", check_leading, False),
    (7, "restriction properties", check_restriction, False),
    (8, "Stallings decisions", check_stallings, False),
    (9, "invertibility oracle", check_oracle, False),
    (10, "duality law", check_duality, False),
    (11, "trefoil fiberedness shadow", check_trefoil, False),
]


def run(level: str = "full", only: list[int] | None = None) -> list[CriterionResult]:
    """Run acceptance criteria; level ``quick`` skips the numerical FK check."""
    if level not in ("quick", "full"):
        raise ValueError(f"unknown selftest level {level!r}")
    out = []
    for number, name, body, heavy in CRITERIA:
        if only is not None and number not in only:
            continue
        if heavy and level == "quick":
            continue
        out.append(_timed(number, name, body))
    return out


def criterion(number: int) -> CriterionResult:
    for k, name, body, _ in CRITERIA:
        if k == number:
            return _timed(k, name, body)
    raise KeyError(number)

