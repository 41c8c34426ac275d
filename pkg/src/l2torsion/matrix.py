"""Dense matrices over the group rings (free or free abelian).

Convention: a matrix representing ``C_i -> C_{i-1}`` has one row per basis
element of the domain, so maps compose left to right (``A_i · A_{i-1}``).
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .laurent import LaurentPoly, commutative_det


class Matrix:
    """Immutable dense matrix of ring elements.

    ``zero`` is a prototype zero element of the coefficient ring; it lets
    empty matrices remember their ring.
    """

    __slots__ = ("rows", "cols", "entries", "zero")

    def __init__(self, entries: Iterable[Sequence], zero, cols: int | None = None):
        ent = tuple(tuple(r) for r in entries)
        if cols is None:
            cols = len(ent[0]) if ent else 0
        for r in ent:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        self.entries = ent
        self.rows = len(ent)
        self.cols = cols
        self.zero = zero.zero_like()

    @classmethod
    def zeros(cls, rows: int, cols: int, zero) -> Matrix:
        z = zero.zero_like()
        return cls([[z] * cols for _ in range(rows)], z, cols)

    @classmethod
    def identity(cls, n: int, zero) -> Matrix:
        z, o = zero.zero_like(), zero.one_like()
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], z, n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.entries for x in r)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self.zero,
            self.cols,
        )

    def __neg__(self) -> Matrix:
        return self.map(lambda x: -x)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def __mul__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for r in self.entries:
            row = []
            for j in range(other.cols):
                acc = self.zero
                for k, a in enumerate(r):
                    if a.is_zero():
                        continue
                    b = other.entries[k][j]
                    if not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out, self.zero, other.cols)

    def scale_left(self, a) -> Matrix:
        return self.map(lambda x: a * x)

    def map(self, f: Callable, zero=None) -> Matrix:
        z = zero if zero is not None else None
        ent = [[f(x) for x in r] for r in self.entries]
        if z is None:
            z = f(self.zero) if not ent or not ent[0] else ent[0][0]
        return Matrix(ent, z, self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix([[self.entries[i][j] for j in cols] for i in rows], self.zero, len(cols))

    def transpose(self) -> Matrix:
        return Matrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.zero,
            self.rows,
        )

    def involute_transpose(self) -> Matrix:
        """Transpose and apply the ring involution entrywise (the matrix ``P*``)."""
        return Matrix(
            [[self.entries[i][j].involute() for i in range(self.rows)] for j in range(self.cols)],
            self.zero,
            self.rows,
        )

    def abelianize(self) -> Matrix:
        z = self.zero.abelianize()
        return Matrix([[x.abelianize() for x in r] for r in self.entries], z, self.cols)

    def has_zero_row(self) -> bool:
        return any(all(x.is_zero() for x in r) for r in self.entries)

    def has_zero_column(self) -> bool:
        return any(all(r[j].is_zero() for r in self.entries) for j in range(self.cols))

    def to_json(self, alphabet=None) -> list[list]:
        out = []
        for r in self.entries:
            if isinstance(self.zero, LaurentPoly):
                out.append([x.to_json() for x in r])
            else:
                out.append([x.to_json(alphabet) for x in r])
        return out

    def to_strings(self, alphabet=None) -> list[list[str]]:
        if isinstance(self.zero, LaurentPoly):
            return [[x.to_string() for x in r] for r in self.entries]
        return [[x.to_string(alphabet) for x in r] for r in self.entries]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(r) + "]" for r in self.to_strings())

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols})"


GRMatrix = Matrix


def abelian_det(m: Matrix) -> LaurentPoly:
    """Determinant of the abelianized matrix in the Laurent polynomial ring."""
    if not m.is_square():
        raise ValueError(f"determinant of non-square {m.shape} matrix")
    a = m.abelianize()
    z = a.zero
    return commutative_det(a.entries, z, z.one_like())
