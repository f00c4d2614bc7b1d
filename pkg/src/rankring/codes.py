"""Linear rank-metric codes over Galois extensions of chain rings.

A code is the S-row-module of a generator matrix.  Its structure (rank,
shape, freeness) comes from the Smith form over S; the socle, the free
envelope and the residue projection are derived from the same
decomposition.  Minimum rank distance is computed by exhausting codewords,
either of the code itself or of the residue projection of its envelope,
which has the same distance and far fewer words.
"""

from __future__ import annotations

import random as _random
from fractions import Fraction
from functools import cached_property
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    DependentRows,
    DimensionMismatch,
    MixedRings,
    OutOfRange,
    TooLarge,
    ZeroCode,
    ZeroProjection,
)
from .extension import Extension, matrix_representation
from .linalg import (
    batch_rank,
    dual_code_matrix,
    in_row_module,
    module_basis,
    numpy_supported,
    rank,
    smith_normal_form,
    vector_rank,
)
from .matrix import Matrix
from .ring import ChainRing
from .shapes import Partition, max_enumeration

METHODS = ("socle-projection", "brute")


class LinearCode:
    """S-linear code generated by the rows of ``gens``."""

    def __init__(self, ext: Extension, gens: Matrix | Sequence[Sequence], n: Optional[int] = None):
        if not isinstance(gens, Matrix):
            gens = Matrix(ext, [[ext.canonical(x) for x in row] for row in gens], n)
        if gens.ring != ext:
            raise MixedRings("generator matrix is not over this extension")
        if n is not None and gens.ncols != n:
            raise DimensionMismatch(f"generators have length {gens.ncols}, expected {n}")
        self.ext = ext
        self.gens = gens
        self.n = gens.ncols

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, k={self.rank}, over {self.ext})"

    @cached_property
    def snf(self):
        return smith_normal_form(self.gens, transforms=False)

    @cached_property
    def basis(self) -> Tuple[Matrix, Tuple[int, ...]]:
        """``(b, delta)`` with C = sum p^delta_i S b_i and the b_i part of an ambient basis."""
        return module_basis(self.gens)

    @property
    def rank(self) -> int:
        return self.snf.rank

    @property
    def is_free(self) -> bool:
        return self.snf.is_free

    @property
    def is_zero(self) -> bool:
        return self.rank == 0

    @property
    def shape(self) -> Partition:
        """Shape as an S-module (residue field of order p^m)."""
        nu = self.ext.nu
        return Partition.from_parts([nu - d for d in self.basis[1]])

    @property
    def log_p_size(self) -> int:
        return self.ext.m * self.shape.size

    @property
    def size(self) -> int:
        return self.ext.p ** self.log_p_size

    def contains(self, v: Sequence) -> bool:
        return in_row_module(self.gens, [self.ext.canonical(x) for x in v])

    def same_module(self, other: "LinearCode") -> bool:
        return all(other.contains(r) for r in self.gens.rows) and all(self.contains(r) for r in other.gens.rows)

    def parity_check(self) -> Matrix:
        return dual_code_matrix(self.gens)

    def encode(self, msg: Sequence) -> tuple:
        return self.gens.left_apply([self.ext.canonical(x) for x in msg])

    def codeword_count(self) -> int:
        return self.size

    def min_rank_distance(self, method: str = "socle-projection", cap: Optional[int] = None) -> int:
        return min_rank_distance(self, method, cap)


class FieldCode(LinearCode):
    """Linear rank-metric code over the residue field; generators are kept as a row basis."""

    def __init__(self, field: Extension, gens: Matrix | Sequence[Sequence], n: Optional[int] = None):
        if field.nu != 1:
            raise OutOfRange("a field code needs a nu = 1 extension")
        super().__init__(field, gens, n)
        b, _ = module_basis(self.gens)
        self.gens = b
        self.field = field


def code_rank(C: LinearCode) -> int:
    return C.rank


def is_free(C: LinearCode) -> bool:
    return C.is_free


def correction_capability(d) -> int:
    if isinstance(d, LinearCode):
        d = min_rank_distance(d)
    return (d - 1) // 2


def envelope(C: LinearCode) -> LinearCode:
    b, _ = C.basis
    return LinearCode(C.ext, b)


def socle(C: LinearCode) -> LinearCode:
    ext = C.ext
    b, _ = C.basis
    return LinearCode(ext, b.map(lambda x: ext.mul_pi_power(x, ext.nu - 1)))


def project_code(C: LinearCode) -> FieldCode:
    ext = C.ext
    rows = [[ext.residue(x) for x in r] for r in C.gens.rows]
    if all(not any(x) for r in rows for x in r):
        raise ZeroProjection("the residue projection of the code is zero; project its envelope instead")
    return FieldCode(ext.residue_field, Matrix(ext.residue_field, rows, C.n))


# ---------------------------------------------------------------------------
# codeword enumeration


def _base_generators(C: LinearCode) -> Tuple[List[List[int]], List[int]]:
    """Base-ring generators of C with their additive orders.

    Each S-generator p^delta b splits into a^c p^delta b for c < m, of
    additive order p^(nu-delta); every codeword has exactly one expansion
    with digits below those orders.  Generators are returned as flattened
    m x n matrix representations (row-major).
    """
    ext = C.ext
    b, deltas = C.basis
    gens, radices = [], []
    for row, d in zip(b.rows, deltas):
        row = [ext.mul_pi_power(x, d) for x in row]
        apow = ext.one
        for _ in range(ext.m):
            w = [ext.mul(apow, x) for x in row]
            rep = matrix_representation(ext, w)
            gens.append([x for r in rep.rows for x in r])
            radices.append(ext.p ** (ext.nu - d))
            apow = ext.mul(apow, ext.gen)
    return gens, radices


def _chunks(total: int, size: int) -> Iterator[Tuple[int, int]]:
    start = 0
    while start < total:
        yield start, min(total, start + size)
        start += size


def codeword_rank_batches(C: LinearCode, chunk: int = 1 << 14) -> Iterator[np.ndarray]:
    """Ranks of all codewords of C, in index order, as numpy batches."""
    ext = C.ext
    gens, radices = _base_generators(C)
    total = 1
    for r in radices:
        total *= r
    mod = ext.modulus
    G = np.array(gens, dtype=np.int64).reshape(len(gens), ext.m * C.n) if gens else np.zeros((0, ext.m * C.n), dtype=np.int64)
    for lo, hi in _chunks(total, chunk):
        idx = np.arange(lo, hi, dtype=np.int64)
        acc = np.zeros((hi - lo, ext.m * C.n), dtype=np.int64)
        for g, r in zip(G, radices):
            digit = idx % r
            idx //= r
            acc = (acc + digit[:, None] * g[None, :]) % mod
        yield batch_rank(acc.reshape(hi - lo, ext.m, C.n), ext.p, ext.nu)


def iter_codewords(C: LinearCode) -> Iterator[tuple]:
    """All codewords as tuples of extension elements (pure Python)."""
    ext = C.ext
    gens, radices = _base_generators(C)
    m, n = ext.m, C.n
    import itertools

    mod = ext.modulus
    for digits in itertools.product(*[range(r) for r in radices]):
        flat = [0] * (m * n)
        for d, g in zip(digits, gens):
            if d:
                flat = [(a + d * b) % mod for a, b in zip(flat, g)]
        yield tuple(tuple(flat[c * n + j] for c in range(m)) for j in range(n))


def _enumerate_min_rank(C: LinearCode, cap: int) -> int:
    if C.size > cap:
        raise TooLarge(f"{C.size} codewords exceed the enumeration cap {cap}")
    best = None
    limit = min(C.ext.m, C.n)
    if numpy_supported(C.ext.modulus):
        for ranks in codeword_rank_batches(C):
            nz = ranks[ranks > 0]
            if nz.size:
                low = int(nz.min())
                best = low if best is None else min(best, low)
                if best == 1:
                    break
    else:
        for w in iter_codewords(C):
            r = vector_rank(C.ext, w)
            if r and (best is None or r < best):
                best = r
                if best == 1:
                    break
    if best is None:
        raise ZeroCode("the code has no nonzero codeword")
    assert best <= limit
    return best


def min_rank_distance(C: LinearCode, method: str = "socle-projection", cap: Optional[int] = None) -> int:
    if method not in METHODS:
        raise OutOfRange(f"unknown method {method!r}; expected one of {METHODS}")
    if C.is_zero:
        raise ZeroCode("minimum distance of the zero code is undefined")
    cap = max_enumeration() if cap is None else cap
    if method == "brute":
        return _enumerate_min_rank(C, cap)
    field_code = project_code(envelope(C))
    return _enumerate_min_rank(field_code, cap)


def singleton_holds(C: LinearCode, d: int) -> bool:
    """log_|R| |C| <= max(m,n) (min(m,n) - d + 1)."""
    m, n, nu = C.ext.m, C.n, C.ext.nu
    lhs = Fraction(C.log_p_size, nu)
    return lhs <= max(m, n) * (min(m, n) - d + 1)


# ---------------------------------------------------------------------------
# field <-> ring reductions


def lift_field_code(Cf: LinearCode, ext: Extension) -> LinearCode:
    """Canonical coefficient-wise lift of a field code into the extension ``ext``."""
    if ext.residue_field != Cf.ext:
        raise MixedRings("the field code does not live over this extension's residue field")
    if rank(Cf.gens) != Cf.gens.nrows:
        raise DependentRows("field generator rows are linearly dependent")
    return LinearCode(ext, Cf.gens.map(ext.lift, ext))


def reduce_rd_instance(Cf: LinearCode, y: Sequence, t: int, ext: Extension):
    """Map a field rank-decoding instance to one over ``ext``.

    Returns ``(C2, y2, t)`` with C2 the socle of the lifted code and
    y2 = p^(nu-1) * lift(y).
    """
    lifted = lift_field_code(Cf, ext)
    c2 = socle(lifted)
    y2 = tuple(ext.mul_pi_power(ext.lift(x), ext.nu - 1) for x in y)
    return c2, y2, t


def socle_to_field(ext: Extension, v: Sequence) -> tuple:
    """Isometry from p^(nu-1) S^n onto the residue field vectors."""
    k = ext.nu - 1
    out = []
    for x in v:
        if ext.valuation(x) < k:
            raise OutOfRange("vector is not in the socle layer p^(nu-1) S^n")
        out.append(ext.residue(ext.div_pi_power(x, k)))
    return tuple(out)


# ---------------------------------------------------------------------------
# random instances


def residue_rank(ring, rows: Sequence[Sequence], ncols: int) -> int:
    """Rank of the reduction mod p of a matrix over the base ring."""
    field = ChainRing(ring.p, 1)
    return rank(Matrix(field, [[x % ring.p for x in r] for r in rows], ncols))


def _residue_independent(ext: Extension, elems: Sequence) -> bool:
    """R-independence of extension elements via F_p-independence of their residues."""
    rows = [list(e) for e in elems]
    return residue_rank(ext.base, rows, ext.m) == len(rows)


def sample_free_basis(ext: Extension, u: int, rng: _random.Random) -> List[tuple]:
    """``u`` elements of S spanning a free rank-``u`` R-submodule (rejection sampling)."""
    if not 0 <= u <= ext.m:
        raise OutOfRange(f"u = {u} outside [0, {ext.m}]")
    while True:
        f = [ext.random(rng) for _ in range(u)]
        if _residue_independent(ext, f):
            return f


def sample_full_rank_matrix(ring: ChainRing, rows: int, cols: int, rng: _random.Random) -> List[List[int]]:
    """Random rows x cols matrix over R whose reduction mod p has rank ``rows``."""
    if rows > cols:
        raise OutOfRange(f"cannot have residue rank {rows} with {cols} columns")
    while True:
        M = [[ring.random(rng) for _ in range(cols)] for _ in range(rows)]
        if residue_rank(ring, M, cols) == rows:
            return M


def random_free_code(ext: Extension, n: int, k: int, seed) -> LinearCode:
    if not 0 <= k <= n:
        raise OutOfRange(f"k = {k} outside [0, {n}]")
    rng = _random.Random(seed)
    field = ext.residue_field
    while True:
        rows = [[ext.random(rng) for _ in range(n)] for _ in range(k)]
        res = Matrix(field, [[ext.residue(x) for x in r] for r in rows], n)
        if rank(res) == k:
            return LinearCode(ext, Matrix(ext, rows, n))


def random_error_planted(ext: Extension, n: int, r: int, seed, shape: Optional[Sequence[int]] = None):
    """Random error of rank ``r`` together with its planted support data.

    Returns ``(e, f, X)`` with ``e_j = sum_i X[i][j] * f_i``.  Without
    ``shape`` the support is free; with ``shape = mu`` (mu'_1 = r) the
    support basis element f_i is scaled by p^(nu - mu_i).
    """
    if not 0 <= r <= min(ext.m, n):
        raise OutOfRange(f"r = {r} outside [0, min(m, n) = {min(ext.m, n)}]")
    rng = seed if isinstance(seed, _random.Random) else _random.Random(seed)
    f = sample_free_basis(ext, r, rng)
    if shape is not None:
        mu = Partition.from_parts(shape)
        if len(mu) != r or (mu.parts and mu.parts[0] > ext.nu):
            raise OutOfRange(f"shape {mu} must have {r} parts, each at most nu = {ext.nu}")
        f = [ext.mul_pi_power(x, ext.nu - part) for x, part in zip(f, mu.parts)]
    X = sample_full_rank_matrix(ext.base, r, n, rng)
    e = []
    for j in range(n):
        acc = ext.zero
        for i in range(r):
            acc = ext.add(acc, ext.scalar_mul(X[i][j], f[i]))
        e.append(acc)
    return tuple(e), f, X


def random_error(ext: Extension, n: int, r: int, seed, shape: Optional[Sequence[int]] = None) -> tuple:
    return random_error_planted(ext, n, r, seed, shape)[0]


def syndrome(ext, y: Sequence, H: Matrix) -> tuple:
    """``y H^T``."""
    if len(y) != H.ncols:
        raise DimensionMismatch(f"vector of length {len(y)} against {H.ncols} parity-check columns")
    return H.apply([ext.canonical(x) if not isinstance(x, tuple) else x for x in y])
