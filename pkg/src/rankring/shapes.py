"""Module shapes, Gaussian binomials and exact submodule counts.

A finite module over a chain ring with residue field of order q is
isomorphic to a product of cyclic modules R/m^lambda_i; the partition
lambda is its shape.  Counts of submodules of a given shape and of a given
rank are products of Gaussian binomials over chains of conjugate parts.

This module also carries the brute-force submodule enumerator used as an
independent oracle for those counts.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import OutOfRange, ShapeNotDominated, TooLarge
from .linalg import smith_normal_form
from .matrix import Matrix


@dataclass(frozen=True)
class Partition:
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x <= 0 for x in parts):
            raise OutOfRange(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise OutOfRange(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "Partition":
        """Sort, drop zeros, and build."""
        return cls(tuple(sorted((x for x in parts if x), reverse=True)))

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def part(self, i: int) -> int:
        """1-based part with zero padding."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def dominated_by(self, other: "Partition") -> bool:
        """Componentwise containment mu_i <= lambda_i."""
        return len(self) <= len(other) and all(a <= b for a, b in zip(self.parts, other.parts))

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def _as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(tuple(lam))


def conjugate(lam) -> Partition:
    lam = _as_partition(lam)
    if not lam.parts:
        return Partition(())
    return Partition(tuple(sum(1 for x in lam.parts if x >= i) for i in range(1, lam.parts[0] + 1)))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if q < 2 or n < 0 or not 0 <= k <= n:
        raise OutOfRange(f"gaussian_binomial({n}, {k}, {q}) undefined")
    k = min(k, n - k)
    num = den = 1
    for i in range(k):
        num *= q ** n - q ** i
        den *= q ** k - q ** i
    return num // den


def _conj_part(c: Partition, i: int) -> int:
    return c.part(i)


def count_submodules_of_shape(lam, mu, q: int) -> int:
    """Number of submodules of shape ``mu`` in a module of shape ``lam``."""
    lam, mu = _as_partition(lam), _as_partition(mu)
    if not mu.dominated_by(lam):
        raise ShapeNotDominated(f"{mu} is not contained in {lam}")
    lc, mc = conjugate(lam), conjugate(mu)
    total = 1
    for i in range(1, (lam.parts[0] if lam.parts else 0) + 1):
        li, mi, mnext = lc.part(i), mc.part(i), mc.part(i + 1)
        total *= q ** (mnext * (li - mi)) * gaussian_binomial(li - mnext, mi - mnext, q)
    return total


def _chains(top: int, length: int, caps: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Weakly decreasing (l_1, ..., l_length) with l_1 = top and l_i <= caps[i-1]."""
    if length == 0:
        return
    if top > caps[0]:
        return

    def rec(prefix):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        i = len(prefix)
        for nxt in range(min(prefix[-1], caps[i]), -1, -1):
            prefix.append(nxt)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([top])


def count_submodules_of_rank(lam, k: int, q: int, nu: int) -> int:
    """Number of rank-``k`` submodules of a module of shape ``lam`` over a ring of nilpotency ``nu``."""
    lam = _as_partition(lam)
    if lam.parts and lam.parts[0] > nu:
        raise OutOfRange(f"shape {lam} has a part larger than nu = {nu}")
    lc = conjugate(lam)
    if not 0 <= k <= lc.part(1):
        raise OutOfRange(f"rank {k} outside [0, {lc.part(1)}]")
    if k == 0:
        return 1
    caps = [lc.part(i) for i in range(1, nu + 1)]
    total = 0
    for chain in _chains(k, nu, caps):
        mu = conjugate(Partition.from_parts(chain))  # chain is the conjugate of mu
        total += count_submodules_of_shape(lam, mu, q)
    return total


def beta(q: int, nu: int, k: int, n: int) -> int:
    """Number of rank-``k`` submodules of a free module of rank ``n``."""
    if q < 2 or nu < 1 or not 0 <= k <= n:
        raise OutOfRange(f"beta({q}, {nu}, {k}, {n}) undefined")
    if k == 0:
        return 1
    total = 0
    for chain in _chains(k, nu, [n] * nu):
        ls = list(chain) + [0]
        term = 1
        for i in range(nu):
            term *= q ** (ls[i + 1] * (n - ls[i])) * gaussian_binomial(n - ls[i + 1], ls[i] - ls[i + 1], q)
        total += term
    return total


def beta_upper_bound(q: int, nu: int, k: int, n: int) -> int:
    return 4 ** nu * comb(k + nu - 1, nu - 1) * q ** (nu * k * (n - k))


def beta_lower_bound(q: int, nu: int, k: int, n: int) -> int:
    return q ** (nu * k * (n - k))


def shape_of_module(generators: Matrix) -> Partition:
    """Shape of the row module of ``generators`` (parts nu - delta_i of its Smith form)."""
    snf = smith_normal_form(generators, transforms=False)
    nu = generators.ring.nu
    return Partition.from_parts([nu - d for d in snf.deltas[: snf.rank]])


def cardinality_log_q(lam) -> int:
    return _as_partition(lam).size


# ---------------------------------------------------------------------------
# brute-force enumeration oracle


def howell_form(ring, rows: Sequence[Sequence], n: int) -> Tuple[tuple, ...]:
    """Canonical generator matrix of the row module (Howell normal form).

    Columns are processed left to right; the pool row of least valuation
    becomes the pivot (normalized to p^delta), clears its column from the
    pool, and its annihilator multiple p^(nu-delta) * row re-enters the pool.
    Entries above each pivot are finally reduced modulo p^delta.
    """
    nu = ring.nu
    is_zero, valuation, div, axpy = ring.is_zero, ring.valuation, ring.div_pi_power, ring.row_axpy
    pool = [list(r) for r in rows if not all(is_zero(x) for x in r)]
    piv: List[Tuple[int, int, list]] = []
    for j in range(n):
        best, bidx = nu, -1
        for idx, r in enumerate(pool):
            x = r[j]
            if not is_zero(x):
                v = valuation(x)
                if v < best:
                    best, bidx = v, idx
        if bidx < 0:
            continue
        prow = pool.pop(bidx)
        u = div(prow[j], best)
        if u != ring.one:
            prow = ring.row_scale(prow, ring.unit_inverse(u))
        nxt = []
        for r in pool:
            x = r[j]
            if not is_zero(x):
                r = axpy(r, div(x, best), prow)
            if not all(is_zero(y) for y in r):
                nxt.append(r)
        if best > 0:
            ann = [ring.mul_pi_power(x, nu - best) for x in prow]
            if not all(is_zero(y) for y in ann):
                nxt.append(ann)
        pool = nxt
        piv.append((j, best, prow))
    for t in range(len(piv)):
        j, v, row_t = piv[t]
        for s in range(t):
            js, vs, row_s = piv[s]
            _, quo = ring.reduce_mod_pi_power(row_s[j], v)
            if not is_zero(quo):
                piv[s] = (js, vs, axpy(row_s, quo, row_t))
    return tuple(tuple(r) for _, _, r in piv)


def max_enumeration() -> int:
    """Global enumeration cap, overridable by the RANKRING_MAX_ENUM environment variable."""
    raw = os.environ.get("RANKRING_MAX_ENUM")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise OutOfRange(f"RANKRING_MAX_ENUM must be an integer, got {raw!r}")
    return 1 << 24


def candidate_count(ring, n: int) -> int:
    """Number of echelon candidates the enumerator will inspect for ``ring^n``."""
    nu, deg, p = ring.nu, ring.degree, ring.p
    size = ring.size
    # state: number of pivots so far -> weighted count
    states: Dict[int, int] = {0: 1}
    for _ in range(n):
        nxt: Dict[int, int] = {}
        for k, w in states.items():
            nxt[k] = nxt.get(k, 0) + w * size ** k
            for d in range(nu):
                nxt[k + 1] = nxt.get(k + 1, 0) + w * p ** (deg * d * k)
        states = nxt
    return sum(states.values())


def enumerate_submodules(
    ring,
    n: int,
    rank_filter: Optional[int] = None,
    cap: int = 1 << 16,
    candidate_cap: Optional[int] = None,
) -> Iterator[Matrix]:
    """Every submodule of ``ring^n`` exactly once, as its canonical generator matrix.

    Walks all echelon matrices whose pivots are powers of p and whose entries
    above pivots are reduced, keeping those that are already in canonical
    form.  Distinct canonical forms are distinct modules.
    """
    if ring.size ** n > cap:
        raise TooLarge(f"|ring|^n = {ring.size ** n} exceeds the cap {cap}")
    budget = candidate_cap if candidate_cap is not None else max_enumeration()
    total = candidate_count(ring, n)
    if total > budget:
        raise TooLarge(f"{total} echelon candidates exceed the enumeration budget {budget}")
    zero = ring.zero
    pi_pow = [ring.mul_pi_power(ring.one, d) for d in range(ring.nu)]
    # entries right of a pivot only exist for n >= 2
    elements = list(ring.elements()) if n > 1 else []
    remainders = [list(ring.remainders(d)) if n > 1 else [] for d in range(ring.nu)]

    for npiv in range(n + 1):
        for cols in itertools.combinations(range(n), npiv):
            for deltas in itertools.product(range(ring.nu), repeat=npiv):
                # free slots per row: entries right of the pivot
                slot_choices = []
                for t, c in enumerate(cols):
                    for j in range(c + 1, n):
                        if j in cols:
                            slot_choices.append(remainders[deltas[cols.index(j)]])
                        else:
                            slot_choices.append(elements)
                for fill in itertools.product(*slot_choices):
                    it = iter(fill)
                    rows = []
                    for t, c in enumerate(cols):
                        row = [zero] * n
                        row[c] = pi_pow[deltas[t]]
                        for j in range(c + 1, n):
                            row[j] = next(it)
                        rows.append(tuple(row))
                    rows = tuple(rows)
                    if howell_form(ring, rows, n) != rows:
                        continue
                    M = Matrix(ring, rows, n)
                    if rank_filter is not None and smith_normal_form(M, transforms=False).rank != rank_filter:
                        continue
                    yield M


def submodule_census(ring, n: int, **kw) -> Dict[Partition, int]:
    """Number of submodules of ``ring^n`` grouped by shape."""
    out: Dict[Partition, int] = {}
    for M in enumerate_submodules(ring, n, **kw):
        lam = shape_of_module(M)
        out[lam] = out.get(lam, 0) + 1
    return out
