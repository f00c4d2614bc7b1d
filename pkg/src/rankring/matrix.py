"""Dense matrices over any ring implementing the chain-ring interface.

Entries are raw ring values (ints for :class:`~rankring.ring.ChainRing`,
coordinate tuples for :class:`~rankring.extension.Extension`).  A matrix is
treated as an immutable value; algorithms copy rows before mutating.
"""

from __future__ import annotations

from typing import Callable, Iterable, List, Sequence, Tuple

from .errors import DimensionMismatch, MixedRings


class Matrix:
    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring, rows: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionMismatch("an empty matrix needs an explicit column count")
            ncols = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise DimensionMismatch(f"row {i} has length {len(r)}, expected {ncols}")
        self.ring = ring
        self.rows: Tuple[tuple, ...] = rows
        self.nrows = len(rows)
        self.ncols = ncols

    # -- constructors --------------------------------------------------------
    @classmethod
    def zeros(cls, ring, nrows: int, ncols: int) -> "Matrix":
        return cls(ring, [[ring.zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, ring, n: int) -> "Matrix":
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def diagonal(cls, ring, diag: Sequence, nrows: int, ncols: int) -> "Matrix":
        rows = [[ring.zero] * ncols for _ in range(nrows)]
        for i, d in enumerate(diag):
            rows[i][i] = d
        return cls(ring, rows, ncols)

    # -- basic structure -----------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self.rows[i][j]
        return self.rows[idx]

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return self.nrows

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.ring, self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join(", ".join(self.ring.format(x) for x in r) for r in self.rows)
        return f"Matrix[{self.nrows}x{self.ncols} over {self.ring}]({body})"

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, [self.column(j) for j in range(self.ncols)], self.nrows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def map(self, fn: Callable, ring=None) -> "Matrix":
        return Matrix(ring if ring is not None else self.ring, [[fn(x) for x in r] for r in self.rows], self.ncols)

    def is_zero(self) -> bool:
        z = self.ring.is_zero
        return all(z(x) for r in self.rows for x in r)

    def stack(self, other: "Matrix") -> "Matrix":
        _check_ring(self, other)
        if self.ncols != other.ncols:
            raise DimensionMismatch("cannot stack matrices with different column counts")
        return Matrix(self.ring, self.rows + other.rows, self.ncols)

    def submatrix(self, rows: Sequence[int]) -> "Matrix":
        return Matrix(self.ring, [self.rows[i] for i in rows], self.ncols)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "Matrix") -> "Matrix":
        _check_ring(self, other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        add = self.ring.add
        return Matrix(self.ring, [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        _check_ring(self, other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        sub = self.ring.sub
        return Matrix(self.ring, [[sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def scale(self, c) -> "Matrix":
        mul = self.ring.mul
        return Matrix(self.ring, [[mul(c, x) for x in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        _check_ring(self, other)
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        ring = self.ring
        cols = [other.column(j) for j in range(other.ncols)]
        return Matrix(ring, [[dot(ring, r, c) for c in cols] for r in self.rows], other.ncols)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.ncols} columns")
        return tuple(dot(self.ring, r, vec) for r in self.rows)

    def left_apply(self, vec: Sequence) -> tuple:
        """Row vector times matrix."""
        if len(vec) != self.nrows:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.nrows} rows")
        ring = self.ring
        out = [ring.zero] * self.ncols
        for c, r in zip(vec, self.rows):
            if not ring.is_zero(c):
                out = [ring.add(o, ring.mul(c, x)) for o, x in zip(out, r)]
        return tuple(out)

    # -- serialization -------------------------------------------------------
    def to_json(self) -> List[list]:
        return [[self.ring.to_json(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, ring, obj, ncols: int | None = None) -> "Matrix":
        if not isinstance(obj, list) or any(not isinstance(r, list) for r in obj):
            raise TypeError("matrix must be a list of rows")
        return cls(ring, [[ring.from_json(x) for x in r] for r in obj], ncols)


def dot(ring, a: Sequence, b: Sequence):
    acc = ring.zero
    add, mul, is_zero = ring.add, ring.mul, ring.is_zero
    for x, y in zip(a, b):
        if not is_zero(x) and not is_zero(y):
            acc = add(acc, mul(x, y))
    return acc


def _check_ring(a: Matrix, b: Matrix):
    if a.ring != b.ring:
        raise MixedRings(f"matrices over {a.ring} and {b.ring}")
