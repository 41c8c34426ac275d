"""Integral group rings of free groups."""

from __future__ import annotations

import re
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .freegroup import RankError, Word, parse_word

if TYPE_CHECKING:
    from .laurent import LaurentPoly


class GroupRingElt:
    """A finite integer combination of reduced words of a fixed rank.

    Instances are treated as immutable; ``terms`` never stores zero
    coefficients, so the zero element has an empty term map.
    """

    __slots__ = ("rank", "terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[Word, int] | None = None):
        self.rank = rank
        clean: dict[Word, int] = {}
        if terms:
            for w, c in terms.items():
                if w.rank != rank:
                    raise RankError(f"word {w} has rank {w.rank}, expected {rank}")
                if c:
                    clean[w] = clean.get(w, 0) + c
            clean = {w: c for w, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, rank: int, terms: dict[Word, int]) -> GroupRingElt:
        obj = cls.__new__(cls)
        obj.rank = rank
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, rank: int) -> GroupRingElt:
        return cls._raw(rank, {})

    @classmethod
    def one(cls, rank: int) -> GroupRingElt:
        return cls._raw(rank, {Word.identity(rank): 1})

    @classmethod
    def constant(cls, rank: int, c: int) -> GroupRingElt:
        return cls._raw(rank, {Word.identity(rank): c} if c else {})

    @classmethod
    def from_word(cls, w: Word, coeff: int = 1) -> GroupRingElt:
        return cls._raw(w.rank, {w: coeff} if coeff else {})

    @classmethod
    def from_words(cls, rank: int, words: Iterable[Word]) -> GroupRingElt:
        terms: dict[Word, int] = {}
        for w in words:
            terms[w] = terms.get(w, 0) + 1
        return cls(rank, terms)

    def zero_like(self) -> GroupRingElt:
        return GroupRingElt.zero(self.rank)

    def one_like(self) -> GroupRingElt:
        return GroupRingElt.one(self.rank)

    def _coerce(self, other) -> GroupRingElt:
        if isinstance(other, GroupRingElt):
            if other.rank != self.rank:
                raise RankError(f"rank mismatch: {self.rank} vs {other.rank}")
            return other
        if isinstance(other, int):
            return GroupRingElt.constant(self.rank, other)
        if isinstance(other, Word):
            return GroupRingElt.from_word(other)
        raise TypeError(f"cannot combine GroupRingElt with {type(other).__name__}")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Word)):
            other = self._coerce(other)
        if not isinstance(other, GroupRingElt):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other) -> GroupRingElt:
        other = self._coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return GroupRingElt._raw(self.rank, out)

    __radd__ = __add__

    def __neg__(self) -> GroupRingElt:
        return GroupRingElt._raw(self.rank, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> GroupRingElt:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> GroupRingElt:
        return self._coerce(other) - self

    def __mul__(self, other) -> GroupRingElt:
        if isinstance(other, int):
            if not other:
                return self.zero_like()
            return GroupRingElt._raw(self.rank, {w: c * other for w, c in self.terms.items()})
        other = self._coerce(other)
        out: dict[Word, int] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u * v
                out[w] = out.get(w, 0) + a * b
        return GroupRingElt._raw(self.rank, {w: c for w, c in out.items() if c})

    def __rmul__(self, other) -> GroupRingElt:
        if isinstance(other, int):
            return self * other
        return self._coerce(other) * self

    def __pow__(self, n: int) -> GroupRingElt:
        if n < 0:
            raise ValueError("group ring elements are not invertible in general")
        out = self.one_like()
        for _ in range(n):
            out = out * self
        return out

    def support(self) -> list[Word]:
        return sorted(self.terms, key=Word.shortlex_key)

    def coefficient(self, w: Word) -> int:
        return self.terms.get(w, 0)

    def __len__(self) -> int:
        return len(self.terms)

    def involute(self) -> GroupRingElt:
        """``Σ n_g g  ↦  Σ n_g g⁻¹``."""
        return GroupRingElt._raw(self.rank, {w.inverse(): c for w, c in self.terms.items()})

    def abelianize(self) -> LaurentPoly:
        from .laurent import LaurentPoly

        out: dict[tuple[int, ...], int] = {}
        for w, c in self.terms.items():
            e = w.exponent_sums()
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.rank, out)

    def support_points(self) -> list[tuple[int, ...]]:
        """Homology classes of the support words (no coefficient cancellation)."""
        return sorted({w.exponent_sums() for w in self.terms})

    def trivial_unit(self) -> tuple[int, Word] | None:
        return is_trivial_unit(self)

    def left_translate(self, w: Word) -> GroupRingElt:
        return GroupRingElt._raw(self.rank, {w * u: c for u, c in self.terms.items()})

    def right_translate(self, w: Word) -> GroupRingElt:
        return GroupRingElt._raw(self.rank, {u * w: c for u, c in self.terms.items()})

    def map_words(self, f, rank: int) -> GroupRingElt:
        """Apply a word map ``f`` into rank ``rank`` (e.g. a homomorphism) termwise."""
        out: dict[Word, int] = {}
        for w, c in self.terms.items():
            v = f(w)
            out[v] = out.get(v, 0) + c
        return GroupRingElt(rank, out)

    def to_string(self, alphabet: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in self.support():
            c = self.terms[w]
            body = w.to_string(alphabet)
            if w.is_identity():
                s = str(abs(c))
            elif abs(c) == 1:
                s = body
            else:
                s = f"{abs(c)}*{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, s))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, s in parts[1:]:
            text += f" {sign} {s}"
        return text

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"GroupRingElt({self.to_string()!r}, rank={self.rank})"

    def to_json(self, alphabet: Sequence[str] | None = None) -> list[dict]:
        return [{"coeff": self.terms[w], "word": w.to_string(alphabet)} for w in self.support()]

    @classmethod
    def from_json(
        cls, data: Sequence[Mapping], rank: int, alphabet: Sequence[str] | None = None
    ) -> GroupRingElt:
        terms: dict[Word, int] = {}
        for item in data:
            w = parse_word(str(item["word"]), rank, alphabet)
            c = item["coeff"]
            if not isinstance(c, int) or isinstance(c, bool):
                raise ValueError(f"coefficient must be an integer, got {c!r}")
            terms[w] = terms.get(w, 0) + c
        return cls(rank, terms)


_TERM_SPLIT = re.compile(r"(?<![\^(])\s*([+-])\s*")


def parse_element(text: str, rank: int, alphabet: Sequence[str] | None = None) -> GroupRingElt:
    """Parse ``"1 + y1 - 2*x1 x2^-1"``-style group ring expressions."""
    text = text.strip()
    if not text:
        raise ValueError("empty element")
    pieces = _TERM_SPLIT.split(text)
    # split yields [first, sign, term, sign, term, ...]
    signed: list[tuple[int, str]] = []
    head = pieces[0].strip()
    if head:
        signed.append((1, head))
    for i in range(1, len(pieces), 2):
        signed.append((1 if pieces[i] == "+" else -1, pieces[i + 1].strip()))
    out = GroupRingElt.zero(rank)
    for sign, body in signed:
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        m = re.match(r"^(\d+)(?:\s*\*\s*|\s+)(.+)$", body)
        if body.isdigit():
            coeff, word_text = int(body), ""
        elif m:
            coeff, word_text = int(m.group(1)), m.group(2)
        else:
            coeff, word_text = 1, body
        out = out + GroupRingElt.from_word(parse_word(word_text, rank, alphabet), sign * coeff)
    return out


def is_trivial_unit(a: GroupRingElt) -> tuple[int, Word] | None:
    """``(s, w)`` when ``a == s·w`` with ``s = ±1``, else ``None``."""
    if len(a.terms) != 1:
        return None
    (w, c), = a.terms.items()
    if c in (1, -1):
        return c, w
    return None


def equal_up_to_trivial_unit(a: GroupRingElt, b: GroupRingElt) -> bool:
    """Decide whether ``a == ±w·b`` for some word ``w`` (left multiples only)."""
    if a.is_zero() or b.is_zero():
        raise ValueError("equal_up_to_trivial_unit needs nonzero elements")
    if a.rank != b.rank:
        raise RankError(f"rank mismatch: {a.rank} vs {b.rank}")
    if len(a.terms) != len(b.terms):
        return False
    b0 = b.support()[0]
    cb = b.terms[b0]
    for a0, ca in a.terms.items():
        if abs(ca) != abs(cb):
            continue
        w = a0 * b0.inverse()
        s = 1 if ca == cb else -1
        if b.left_translate(w) * s == a:
            return True
    return False
