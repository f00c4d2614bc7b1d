"""Linear algebra over finite chain rings.

Everything here talks to the ring only through the chain-ring interface
(``valuation``, ``unit_inverse``, ``div_pi_power``, ...), so the same code
runs over Z/p^nu and over Galois extensions of it.

The Smith normal form is computed by full pivoting on an entry of minimal
valuation (lowest row, then column, on ties).  Such an entry divides every
other entry, so one row sweep and one column sweep clear its cross.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionMismatch, NotFree, OutOfRange, RankTooSmall
from .matrix import Matrix


@dataclass(frozen=True)
class SmithForm:
    """``left @ A @ right == diag(d)`` with non-decreasing pivot valuations.

    ``right`` and ``left_inv`` are kept transposed internally
    (``right_t``/``left_inv_t``) because the algorithms mostly need their
    columns.
    """

    ring: object
    shape: Tuple[int, int]
    d: Tuple
    deltas: Tuple[int, ...]
    rank: int
    left: Optional[Matrix] = None
    right_t: Optional[Matrix] = None
    left_inv_t: Optional[Matrix] = None
    right_inv: Optional[Matrix] = None

    @property
    def right(self) -> Matrix:
        return self.right_t.transpose()

    @property
    def left_inv(self) -> Matrix:
        return self.left_inv_t.transpose()

    def diagonal_matrix(self) -> Matrix:
        return Matrix.diagonal(self.ring, self.d, *self.shape)

    @property
    def is_free(self) -> bool:
        """True when the row module is free, i.e. every nonzero pivot is a unit."""
        return all(v == 0 for v in self.deltas[: self.rank])


def smith_normal_form(A: Matrix, transforms: bool = True, inverses: bool = False) -> SmithForm:
    ring = A.ring
    nr, nc = A.shape
    nu = ring.nu
    zero, one = ring.zero, ring.one
    valuation = ring.valuation
    is_zero = ring.is_zero
    neg = ring.neg
    axpy = ring.row_axpy
    scale = ring.row_scale
    div = ring.div_pi_power

    M = [list(r) for r in A.rows]
    if transforms:
        L = [[one if i == j else zero for j in range(nr)] for i in range(nr)]
        RT = [[one if i == j else zero for j in range(nc)] for i in range(nc)]
    if inverses:
        LiT = [[one if i == j else zero for j in range(nr)] for i in range(nr)]
        Ri = [[one if i == j else zero for j in range(nc)] for i in range(nc)]

    deltas: List[int] = []
    diag = []
    rank = 0
    for k in range(min(nr, nc)):
        # pivot: minimal valuation, lowest (row, col) on ties
        best, bi, bj = nu, -1, -1
        for i in range(k, nr):
            row = M[i]
            for j in range(k, nc):
                x = row[j]
                if not is_zero(x):
                    v = valuation(x)
                    if v < best:
                        best, bi, bj = v, i, j
                        if v == 0:
                            break
            if best == 0:
                break
        if bi < 0:
            break
        v = best
        if bi != k:
            M[k], M[bi] = M[bi], M[k]
            if transforms:
                L[k], L[bi] = L[bi], L[k]
            if inverses:
                LiT[k], LiT[bi] = LiT[bi], LiT[k]
        if bj != k:
            for row in M:
                row[k], row[bj] = row[bj], row[k]
            if transforms:
                RT[k], RT[bj] = RT[bj], RT[k]
            if inverses:
                Ri[k], Ri[bj] = Ri[bj], Ri[k]
        # normalize pivot to p^v
        u = div(M[k][k], v)
        if u != one:
            uinv = ring.unit_inverse(u)
            M[k] = scale(M[k], uinv)
            if transforms:
                L[k] = scale(L[k], uinv)
            if inverses:
                LiT[k] = scale(LiT[k], u)
        prow = M[k]
        # clear column k below the pivot
        for i in range(k + 1, nr):
            x = M[i][k]
            if is_zero(x):
                continue
            c = div(x, v)
            M[i] = axpy(M[i], c, prow)
            if transforms:
                L[i] = axpy(L[i], c, L[k])
            if inverses:
                LiT[k] = axpy(LiT[k], neg(c), LiT[i])
        # clear row k right of the pivot; column k is zero elsewhere
        for j in range(k + 1, nc):
            x = prow[j]
            if is_zero(x):
                continue
            c = div(x, v)
            prow[j] = zero
            if transforms:
                RT[j] = axpy(RT[j], c, RT[k])
            if inverses:
                Ri[k] = axpy(Ri[k], neg(c), Ri[j])
        deltas.append(v)
        diag.append(M[k][k])
        rank += 1

    for _ in range(rank, min(nr, nc)):
        deltas.append(nu)
        diag.append(zero)

    return SmithForm(
        ring=ring,
        shape=(nr, nc),
        d=tuple(diag),
        deltas=tuple(deltas),
        rank=rank,
        left=Matrix(ring, L, nr) if transforms else None,
        right_t=Matrix(ring, RT, nc) if transforms else None,
        left_inv_t=Matrix(ring, LiT, nr) if inverses else None,
        right_inv=Matrix(ring, Ri, nc) if inverses else None,
    )


def rank(A: Matrix) -> int:
    return smith_normal_form(A, transforms=False).rank


def vector_rank(ext, v: Sequence) -> int:
    """Rank of the support of ``v`` (the base-ring module spanned by its coordinates)."""
    from .extension import matrix_representation

    return rank(matrix_representation(ext, v))


def support_basis(ext, v: Sequence) -> List[tuple]:
    """Minimal generating set ``p^delta_i * b_i`` of the support of ``v``."""
    from .extension import matrix_representation

    A = matrix_representation(ext, v)
    snf = smith_normal_form(A, transforms=False, inverses=True)
    out = []
    for i in range(snf.rank):
        b = snf.left_inv_t.rows[i]
        out.append(tuple(ext.base.mul(snf.d[i], c) for c in b))
    return out


# ---------------------------------------------------------------------------
# linear systems


@dataclass(frozen=True)
class SolveOutcome:
    """Result of solving ``A x = b``.

    ``free_valuations[i]`` says that the i-th transformed unknown may be
    shifted by any element of p^free_valuations[i] R; a value of nu means
    no freedom, 0 means a completely free parameter.
    """

    particular: Optional[tuple]
    free_valuations: Tuple[int, ...]
    snf: SmithForm = field(repr=False)
    y: Optional[tuple] = field(default=None, repr=False)

    @property
    def solvable(self) -> bool:
        return self.particular is not None

    @property
    def unique(self) -> bool:
        return self.solvable and all(v >= self.snf.ring.nu for v in self.free_valuations)


def solve(A: Matrix, b: Sequence, snf: Optional[SmithForm] = None) -> SolveOutcome:
    ring = A.ring
    nr, nc = A.shape
    if len(b) != nr:
        raise DimensionMismatch(f"right-hand side has length {len(b)}, expected {nr}")
    if snf is None:
        snf = smith_normal_form(A)
    nu = ring.nu
    lb = snf.left.apply(b)
    free = tuple(nu - snf.deltas[i] if i < snf.rank else 0 for i in range(nc))
    y = [ring.zero] * nc
    for i in range(nr):
        x = lb[i]
        if i < snf.rank:
            d = snf.deltas[i]
            if not ring.is_zero(x) and ring.valuation(x) < d:
                return SolveOutcome(None, free, snf)
            y[i] = ring.div_pi_power(x, d)
        elif not ring.is_zero(x):
            return SolveOutcome(None, free, snf)
    x = snf.right_t.left_apply(y)
    return SolveOutcome(x, free, snf, tuple(y))


def enumerate_solutions(outcome: SolveOutcome, cap: int) -> Iterator[tuple]:
    """Iterate over the solution set of a solvable system, at most ``cap`` items."""
    if not outcome.solvable or cap <= 0:
        return
    snf = outcome.snf
    ring = snf.ring
    shifts = [list(ring.ideal_elements(fv)) if fv < ring.nu else [ring.zero] for fv in outcome.free_valuations]
    count = 0
    for combo in itertools.product(*shifts):
        y = [ring.add(a, t) for a, t in zip(outcome.y, combo)]
        yield snf.right_t.left_apply(y)
        count += 1
        if count >= cap:
            return


def solution_count(outcome: SolveOutcome) -> int:
    if not outcome.solvable:
        return 0
    ring = outcome.snf.ring
    total = 1
    for fv in outcome.free_valuations:
        total *= ring.size // _ideal_index(ring, fv)
    return total


def _ideal_index(ring, v: int) -> int:
    """|R / p^v R|."""
    return (ring.p ** min(v, ring.nu)) ** ring.degree


def in_row_module(G: Matrix, x: Sequence) -> bool:
    """Whether ``x`` is a combination of the rows of ``G``."""
    if G.nrows == 0:
        return all(G.ring.is_zero(c) for c in x)
    return solve(G.transpose(), x).solvable


# ---------------------------------------------------------------------------
# kernels, duals, free completions


def kernel_basis(A: Matrix) -> Matrix:
    """Rows generating ``{x : A x^T = 0}``."""
    ring = A.ring
    nu = ring.nu
    snf = smith_normal_form(A)
    rows = []
    for i in range(A.ncols):
        col = snf.right_t.rows[i]
        if i < snf.rank:
            d = snf.deltas[i]
            if d == 0:
                continue
            rows.append([ring.mul_pi_power(c, nu - d) for c in col])
        else:
            rows.append(list(col))
    return Matrix(ring, rows, A.ncols)


def dual_code_matrix(G: Matrix) -> Matrix:
    """Parity-check matrix of the free code generated by the rows of ``G``."""
    snf = smith_normal_form(G)
    if snf.rank != G.nrows or not snf.is_free:
        raise NotFree("generator rows do not form a basis of a free module")
    return Matrix(G.ring, snf.right_t.rows[snf.rank:], G.ncols)


def _right_inverse_rows(W: Matrix) -> Tuple[SmithForm, Matrix]:
    snf = smith_normal_form(W, transforms=False, inverses=True)
    return snf, snf.right_inv


def complete_to_free(W: Matrix, u: int) -> Matrix:
    """Basis of a free rank-``u`` module containing the row module of ``W``."""
    if not 0 <= u <= W.ncols:
        raise OutOfRange(f"u = {u} outside [0, {W.ncols}]")
    snf, Ri = _right_inverse_rows(W)
    if u < snf.rank:
        raise RankTooSmall(f"u = {u} is below the rank {snf.rank} of the generators")
    return Matrix(W.ring, Ri.rows[:u], W.ncols)


def envelope_rows(G: Matrix) -> Matrix:
    """Basis of the smallest free module containing the row module of ``G``."""
    snf, Ri = _right_inverse_rows(G)
    return Matrix(G.ring, Ri.rows[: snf.rank], G.ncols)


def module_basis(G: Matrix) -> Tuple[Matrix, Tuple[int, ...]]:
    """Rows ``b_i`` and exponents ``delta_i`` with row module = sum p^delta_i R b_i.

    The ``b_i`` are part of a basis of the ambient free module.
    """
    snf, Ri = _right_inverse_rows(G)
    return Matrix(G.ring, Ri.rows[: snf.rank], G.ncols), snf.deltas[: snf.rank]


# ---------------------------------------------------------------------------
# vectorized rank for many small matrices over Z/p^nu


def _tables(p: int, nu: int):
    mod = p ** nu
    vt = np.full(mod, nu, dtype=np.int64)
    inv = np.zeros(mod, dtype=np.int64)
    for x in range(1, mod):
        v = 0
        y = x
        while y % p == 0:
            y //= p
            v += 1
        vt[x] = v
        if v == 0:
            inv[x] = pow(x, -1, mod)
    return vt, inv


_TABLE_CACHE: dict = {}


def numpy_supported(modulus: int) -> bool:
    return modulus <= 1 << 20


def batch_rank(arr: np.ndarray, p: int, nu: int) -> np.ndarray:
    """Ranks of a stack of matrices over Z/p^nu; ``arr`` has shape (B, r, c)."""
    mod = p ** nu
    if not numpy_supported(mod):
        raise OutOfRange(f"modulus {mod} too large for the vectorized rank")
    key = (p, nu)
    if key not in _TABLE_CACHE:
        _TABLE_CACHE[key] = _tables(p, nu)
    vt, inv = _TABLE_CACHE[key]
    pw = np.array([p ** i for i in range(nu + 1)], dtype=np.int64)
    a = np.asarray(arr, dtype=np.int64) % mod
    B, r, c = a.shape
    ranks = np.zeros(B, dtype=np.int64)
    if r == 0 or c == 0:
        return ranks
    idx_b = np.arange(B)
    for _ in range(min(r, c)):
        vals = vt[a].reshape(B, -1)
        flat = np.argmin(vals, axis=1)
        vmin = vals[idx_b, flat]
        live = vmin < nu
        if not live.any():
            break
        ranks += live
        pr, pc = np.divmod(flat, c)
        scale = pw[vmin]
        pivot = a[idx_b, pr, pc]
        uinv = inv[(pivot // scale) % mod]
        prow = a[idx_b, pr, :] * uinv[:, None] % mod
        factor = a[idx_b, :, pc] // scale[:, None]
        a = (a - factor[:, :, None] * prow[:, None, :]) % mod
    return ranks
