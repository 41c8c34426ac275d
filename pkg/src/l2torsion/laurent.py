"""Multivariate Laurent polynomials over the integers and their fractions.

These are the abelianized shadows of group ring elements: a word maps to
the monomial of its exponent-sum vector.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Mapping, Sequence

Exps = tuple[int, ...]


class LaurentPoly:
    __slots__ = ("dim", "terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[Exps, int] | None = None):
        self.dim = dim
        clean: dict[Exps, int] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != dim:
                    raise ValueError(f"exponent {e} has length {len(e)}, expected {dim}")
                if c:
                    clean[e] = clean.get(e, 0) + c
            clean = {e: c for e, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, dim: int, terms: dict[Exps, int]) -> LaurentPoly:
        obj = cls.__new__(cls)
        obj.dim = dim
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, dim: int) -> LaurentPoly:
        return cls._raw(dim, {})

    @classmethod
    def one(cls, dim: int) -> LaurentPoly:
        return cls._raw(dim, {(0,) * dim: 1})

    @classmethod
    def constant(cls, dim: int, c: int) -> LaurentPoly:
        return cls._raw(dim, {(0,) * dim: c} if c else {})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> LaurentPoly:
        exps = tuple(exps)
        return cls._raw(len(exps), {exps: coeff} if coeff else {})

    @classmethod
    def var(cls, dim: int, i: int, power: int = 1) -> LaurentPoly:
        """The variable ``t_i`` (1-based) raised to ``power``."""
        e = [0] * dim
        e[i - 1] = power
        return cls.monomial(e)

    def zero_like(self) -> LaurentPoly:
        return LaurentPoly.zero(self.dim)

    def one_like(self) -> LaurentPoly:
        return LaurentPoly.one(self.dim)

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.dim != self.dim:
                raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.dim, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> LaurentPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            if not other:
                return self.zero_like()
            return LaurentPoly._raw(self.dim, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: dict[Exps, int] = {}
        for e1, a in self.terms.items():
            for e2, b in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + a * b
        return LaurentPoly._raw(self.dim, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            unit = self.trivial_unit()
            if unit is None:
                raise ValueError("only ±monomials have Laurent inverses")
            s, e = unit
            return LaurentPoly.monomial(tuple(x * n for x in e), s ** (-n))
        out = self.one_like()
        for _ in range(n):
            out = out * self
        return out

    def involute(self) -> LaurentPoly:
        """Invert every variable."""
        return LaurentPoly._raw(self.dim, {tuple(-x for x in e): c for e, c in self.terms.items()})

    def abelianize(self) -> LaurentPoly:
        return self

    def support_points(self) -> list[Exps]:
        return sorted(self.terms)

    def trivial_unit(self) -> tuple[int, Exps] | None:
        if len(self.terms) != 1:
            return None
        (e, c), = self.terms.items()
        return (c, e) if c in (1, -1) else None

    def shift(self, exps: Sequence[int]) -> LaurentPoly:
        return LaurentPoly._raw(
            self.dim, {tuple(x + y for x, y in zip(e, exps)): c for e, c in self.terms.items()}
        )

    def content(self) -> int:
        return reduce(gcd, (abs(c) for c in self.terms.values()), 0)

    def min_exponents(self) -> Exps:
        if not self.terms:
            return (0,) * self.dim
        return tuple(min(e[i] for e in self.terms) for i in range(self.dim))

    def unit_normal(self) -> LaurentPoly:
        """Representative modulo ``±monomial``: lex-least exponent at the origin, positive there."""
        if not self.terms:
            return self
        e0 = min(self.terms)
        p = self.shift(tuple(-x for x in e0))
        return -p if self.terms[e0] < 0 else p

    def equal_up_to_unit(self, other: LaurentPoly) -> bool:
        return self.unit_normal() == other.unit_normal()

    def degree(self, values: Sequence) -> Fraction | None:
        """Minimal value of the linear functional over the support; ``None`` for zero."""
        if not self.terms:
            return None
        return min(_pair(values, e) for e in self.terms)

    def lowest_part(self, values: Sequence) -> LaurentPoly:
        d = self.degree(values)
        if d is None:
            return self
        return LaurentPoly._raw(
            self.dim, {e: c for e, c in self.terms.items() if _pair(values, e) == d}
        )

    def substitute_linear(self, matrix: Sequence[Sequence[int]]) -> LaurentPoly:
        """Push exponents through an integer matrix (``k × dim``), giving a ``k``-variable poly."""
        k = len(matrix)
        out: dict[Exps, int] = {}
        for e, c in self.terms.items():
            f = tuple(sum(row[j] * e[j] for j in range(self.dim)) for row in matrix)
            out[f] = out.get(f, 0) + c
        return LaurentPoly(k, out)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for x, k in zip(point, e):
                term *= Fraction(x) ** k
            total += term
        return total

    def to_string(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = ["t"] if self.dim == 1 else [f"t{i + 1}" for i in range(self.dim)]
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = " ".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(names, e) if k
            )
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", s))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            text += f" {sign} {s}"
        return text

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_string()!r}, dim={self.dim})"

    def to_json(self) -> list[dict]:
        return [{"coeff": self.terms[e], "exps": list(e)} for e in sorted(self.terms)]

    @classmethod
    def from_json(cls, data: Sequence[Mapping], dim: int) -> LaurentPoly:
        terms: dict[Exps, int] = {}
        for item in data:
            e = tuple(int(x) for x in item["exps"])
            terms[e] = terms.get(e, 0) + int(item["coeff"])
        return cls(dim, terms)


def _pair(values: Sequence, e: Sequence[int]) -> Fraction:
    return sum((Fraction(v) * x for v, x in zip(values, e)), Fraction(0))


class LaurentFraction:
    """A quotient of Laurent polynomials, kept in a light canonical form.

    The stored pair has the integer contents divided out of a common factor,
    the denominator shifted so its componentwise-minimal exponent is zero, and
    the denominator's lex-least coefficient positive.  No polynomial gcd is
    taken; equality is by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = num.one_like()
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.dim != den.dim:
            raise ValueError("dimension mismatch")
        g = gcd(num.content(), den.content()) if num.terms else den.content()
        if g > 1:
            num = LaurentPoly._raw(num.dim, {e: c // g for e, c in num.terms.items()})
            den = LaurentPoly._raw(den.dim, {e: c // g for e, c in den.terms.items()})
        m = den.min_exponents()
        if any(m):
            neg = tuple(-x for x in m)
            num, den = num.shift(neg), den.shift(neg)
        if den.terms[min(den.terms)] < 0:
            num, den = -num, -den
        if num.is_zero():
            den = den.one_like()
        self.num = num
        self.den = den

    @property
    def dim(self) -> int:
        return self.num.dim

    @classmethod
    def one(cls, dim: int) -> LaurentFraction:
        return cls(LaurentPoly.one(dim))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __mul__(self, other) -> LaurentFraction:
        if isinstance(other, LaurentPoly):
            other = LaurentFraction(other)
        return LaurentFraction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other) -> LaurentFraction:
        if isinstance(other, LaurentPoly):
            other = LaurentFraction(other)
        return self * other.inverse()

    def inverse(self) -> LaurentFraction:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return LaurentFraction(self.den, self.num)

    def __pow__(self, n: int) -> LaurentFraction:
        base = self if n >= 0 else self.inverse()
        out = LaurentFraction.one(self.dim)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __add__(self, other) -> LaurentFraction:
        if isinstance(other, LaurentPoly):
            other = LaurentFraction(other)
        return LaurentFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> LaurentFraction:
        return LaurentFraction(-self.num, self.den)

    def __sub__(self, other) -> LaurentFraction:
        return self + (-other)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            other = LaurentFraction(other)
        if not isinstance(other, LaurentFraction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("LaurentFraction is not hashable; compare with ==")

    def equal_up_to_unit(self, other: LaurentFraction) -> bool:
        """Equality modulo ``±t^k``."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return (self.num * other.den).equal_up_to_unit(other.num * self.den)

    def is_unit(self) -> bool:
        """``True`` when the value is ``±t^k``."""
        return self.equal_up_to_unit(LaurentFraction.one(self.dim))

    def as_unit(self) -> LaurentPoly | None:
        """The monomial ``±t^k`` equal to this fraction, if there is one."""
        if not self.is_unit():
            return None
        en, ed = min(self.num.terms), min(self.den.terms)
        s = self.num.terms[en] // self.den.terms[ed]
        return LaurentPoly.monomial(tuple(a - b for a, b in zip(en, ed)), s)

    def involute(self) -> LaurentFraction:
        return LaurentFraction(self.num.involute(), self.den.involute())

    def lowest_part(self, values: Sequence) -> LaurentFraction:
        return LaurentFraction(self.num.lowest_part(values), self.den.lowest_part(values))

    def degree(self, values: Sequence) -> Fraction | None:
        d = self.num.degree(values)
        return None if d is None else d - self.den.degree(values)

    def evaluate(self, point: Sequence) -> Fraction:
        return self.num.evaluate(point) / self.den.evaluate(point)

    def __str__(self) -> str:
        if self.den == self.den.one_like():
            return self.num.to_string()
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"LaurentFraction({self})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json(), "dim": self.dim}

    @classmethod
    def from_json(cls, data: Mapping) -> LaurentFraction:
        dim = int(data["dim"])
        return cls(LaurentPoly.from_json(data["num"], dim), LaurentPoly.from_json(data["den"], dim))


def commutative_det(rows: Sequence[Sequence], zero, one):
    """Division-free determinant over a commutative ring.

    Laplace expansion along rows, memoized on the set of used columns, so the
    cost is ``O(n·2^n)`` ring multiplications and zero entries are skipped.
    """
    n = len(rows)
    if n == 0:
        return one
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    memo: dict[int, object] = {}

    def minor(row: int, used: int):
        if row == n:
            return one
        key = used
        if key in memo:
            return memo[key]
        total = zero
        sign_base = 0
        for col in range(n):
            if used >> col & 1:
                sign_base += 1
                continue
            entry = rows[row][col]
            if _is_zero(entry):
                continue
            sub = minor(row + 1, used | (1 << col))
            if _is_zero(sub):
                continue
            # sign of column position among the remaining columns
            pos = col - sign_base
            term = entry * sub
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return minor(0, 0)


def _is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0
