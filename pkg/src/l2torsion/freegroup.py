"""Reduced words in finitely generated free groups and homomorphisms between them.

Words are stored run-length compressed: a tuple of ``(generator, exponent)``
blocks with 1-based generator indices and nonzero exponents, no two adjacent
blocks sharing a generator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Block = tuple[int, int]
Letter = tuple[int, int]


class RankError(ValueError):
    """Operands live in free groups of different rank, or an index is out of range."""


def _push(blocks: list[Block], gen: int, exp: int) -> None:
    # append one block to an already reduced block list, cancelling at the junction
    if exp == 0:
        return
    if blocks and blocks[-1][0] == gen:
        e = blocks[-1][1] + exp
        if e == 0:
            blocks.pop()
        else:
            blocks[-1] = (gen, e)
    else:
        blocks.append((gen, exp))


def _concat(left: tuple[Block, ...], right: tuple[Block, ...]) -> tuple[Block, ...]:
    if not left:
        return right
    if not right:
        return left
    out = list(left)
    i = 0
    # reduced inputs only interact at the junction
    while i < len(right) and out and out[-1][0] == right[i][0]:
        e = out[-1][1] + right[i][1]
        if e == 0:
            out.pop()
            i += 1
        else:
            out[-1] = (right[i][0], e)
            i += 1
            break
    out.extend(right[i:])
    return tuple(out)


@dataclass(frozen=True, slots=True)
class Word:
    """A freely reduced word in the free group of the given rank."""

    rank: int
    blocks: tuple[Block, ...] = ()

    @classmethod
    def identity(cls, rank: int) -> Word:
        return cls(rank, ())

    @classmethod
    def generator(cls, rank: int, index: int, exp: int = 1) -> Word:
        if not 1 <= index <= rank:
            raise RankError(f"generator x{index} outside rank {rank}")
        return cls(rank, ((index, exp),) if exp else ())

    @classmethod
    def from_letters(cls, rank: int, letters: Iterable[Letter]) -> Word:
        return reduce_letters(rank, letters)

    @classmethod
    def from_blocks(cls, rank: int, blocks: Iterable[Block]) -> Word:
        out: list[Block] = []
        for gen, exp in blocks:
            if not 1 <= gen <= rank:
                raise RankError(f"generator x{gen} outside rank {rank}")
            _push(out, gen, exp)
        return cls(rank, tuple(out))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.blocks)

    def __bool__(self) -> bool:
        return bool(self.blocks)

    def is_identity(self) -> bool:
        return not self.blocks

    def letters(self) -> Iterator[Letter]:
        for gen, exp in self.blocks:
            s = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield (gen, s)

    def __mul__(self, other: Word) -> Word:
        if not isinstance(other, Word):
            return NotImplemented
        if other.rank != self.rank:
            raise RankError(f"rank mismatch: {self.rank} vs {other.rank}")
        return Word(self.rank, _concat(self.blocks, other.blocks))

    def inverse(self) -> Word:
        return Word(self.rank, tuple((g, -e) for g, e in reversed(self.blocks)))

    __invert__ = inverse

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else self.inverse()
        out = Word.identity(self.rank)
        for _ in range(abs(n)):
            out = out * base
        return out

    def exponent_sums(self) -> tuple[int, ...]:
        v = [0] * self.rank
        for g, e in self.blocks:
            v[g - 1] += e
        return tuple(v)

    def shortlex_key(self) -> tuple:
        # x1 < x1^-1 < x2 < x2^-1 < ...
        return (len(self), tuple(2 * g + (s < 0) for g, s in self.letters()))

    def __lt__(self, other: Word) -> bool:
        return self.shortlex_key() < other.shortlex_key()

    def cyclically_reduced(self) -> tuple[Word, Word]:
        """Return ``(c, r)`` with ``self == c * r * c^-1`` and ``r`` cyclically reduced."""
        letters = list(self.letters())
        i, j = 0, len(letters) - 1
        while i < j and letters[i][0] == letters[j][0] and letters[i][1] == -letters[j][1]:
            i += 1
            j -= 1
        conj = Word.from_letters(self.rank, letters[:i])
        core = Word.from_letters(self.rank, letters[i : j + 1])
        return conj, core

    def to_string(self, alphabet: Sequence[str] | None = None) -> str:
        if not self.blocks:
            return "1"
        parts = []
        for g, e in self.blocks:
            name = alphabet[g - 1] if alphabet else f"x{g}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Word({self.to_string()!r}, rank={self.rank})"


def reduce_letters(rank: int, letters: Iterable[Letter]) -> Word:
    """Freely reduce a raw letter sequence of ``(generator, ±1)`` pairs."""
    out: list[Block] = []
    for gen, sign in letters:
        if not 1 <= gen <= rank:
            raise RankError(f"generator x{gen} outside rank {rank}")
        if sign not in (1, -1):
            raise ValueError(f"letter exponent must be ±1, got {sign}")
        _push(out, gen, sign)
    return Word(rank, tuple(out))


_X_TOKEN = re.compile(r"x(\d+)(?:\^\(?(-?\d+)\)?)?")
_L_TOKEN = re.compile(r"([A-Za-z])(?:\^\(?(-?\d+)\)?)?")


def parse_word(text: str, rank: int, alphabet: Sequence[str] | None = None) -> Word:
    """Parse the word grammar shared with the CLI.

    Tokens are ``x<k>`` or ``x<k>^<e>`` separated by whitespace or ``*``; ``1``
    or the empty string is the identity.  With ``alphabet`` given (e.g.
    ``["x", "y"]``), those names are used instead and an uppercase letter is
    the inverse of its lowercase generator.  Without an alphabet, bare letters
    ``a..z`` stand for ``x1..x26``.
    """
    text = text.strip()
    blocks: list[Block] = []
    if text in ("", "1"):
        return Word.identity(rank)
    names = {name: i + 1 for i, name in enumerate(alphabet)} if alphabet else None
    for token in re.split(r"[\s*]+", text):
        if not token or token == "1":
            continue
        pos = 0
        while pos < len(token):
            m = None if names else _X_TOKEN.match(token, pos)
            if m:
                gen, exp = int(m.group(1)), int(m.group(2) or 1)
            else:
                m = _L_TOKEN.match(token, pos)
                if not m:
                    raise ValueError(f"cannot parse word token {token!r}")
                ch = m.group(1)
                low = ch.lower()
                if names is not None:
                    if ch in names:
                        gen, sign = names[ch], 1
                    elif low in names and ch != low:
                        gen, sign = names[low], -1
                    else:
                        raise ValueError(f"unknown generator {ch!r}")
                else:
                    gen, sign = ord(low) - ord("a") + 1, (1 if ch == low else -1)
                exp = sign * int(m.group(2) or 1)
            if exp == 0:
                raise ValueError(f"zero exponent in token {token!r}")
            if not 1 <= gen <= rank:
                raise RankError(f"generator {gen} outside rank {rank}")
            _push(blocks, gen, exp)
            pos = m.end()
    return Word(rank, tuple(blocks))


@dataclass(frozen=True, slots=True)
class FreeHom:
    """Homomorphism F_n -> F_m given by the images of the domain generators."""

    domain_rank: int
    codomain_rank: int
    images: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.domain_rank:
            raise RankError(
                f"{len(self.images)} images given for domain rank {self.domain_rank}"
            )
        for w in self.images:
            if w.rank != self.codomain_rank:
                raise RankError(f"image {w} not of codomain rank {self.codomain_rank}")

    @classmethod
    def identity(cls, rank: int) -> FreeHom:
        return cls(rank, rank, tuple(Word.generator(rank, i) for i in range(1, rank + 1)))

    @classmethod
    def from_strings(
        cls,
        images: Sequence[str],
        codomain_rank: int,
        alphabet: Sequence[str] | None = None,
    ) -> FreeHom:
        words = tuple(parse_word(s, codomain_rank, alphabet) for s in images)
        return cls(len(words), codomain_rank, words)

    def __call__(self, w: Word) -> Word:
        return apply_hom(self, w)

    def is_square(self) -> bool:
        return self.domain_rank == self.codomain_rank


def apply_hom(phi: FreeHom, w: Word) -> Word:
    if w.rank != phi.domain_rank:
        raise RankError(f"word of rank {w.rank} fed to hom with domain rank {phi.domain_rank}")
    out = Word.identity(phi.codomain_rank)
    inverses: dict[int, Word] = {}
    for g, e in w.blocks:
        img = phi.images[g - 1]
        if e < 0:
            img = inverses.get(g) or inverses.setdefault(g, img.inverse())
        for _ in range(abs(e)):
            out = out * img
    return out


def compose(psi: FreeHom, phi: FreeHom) -> FreeHom:
    """``psi ∘ phi`` (apply ``phi`` first)."""
    if phi.codomain_rank != psi.domain_rank:
        raise RankError(
            f"cannot compose: codomain rank {phi.codomain_rank} != domain rank {psi.domain_rank}"
        )
    return FreeHom(
        phi.domain_rank, psi.codomain_rank, tuple(apply_hom(psi, w) for w in phi.images)
    )


def random_word(rng, rank: int, max_length: int) -> Word:
    """Uniform-ish random reduced word of length at most ``max_length``."""
    length = rng.randint(0, max_length)
    letters: list[Letter] = []
    while len(letters) < length:
        g, s = rng.randint(1, rank), rng.choice((1, -1))
        if letters and letters[-1] == (g, -s):
            continue
        letters.append((g, s))
    return Word.from_letters(rank, letters)


def random_hom(rng, domain_rank: int, codomain_rank: int, max_length: int) -> FreeHom:
    return FreeHom(
        domain_rank,
        codomain_rank,
        tuple(random_word(rng, codomain_rank, max_length) for _ in range(domain_rank)),
    )
