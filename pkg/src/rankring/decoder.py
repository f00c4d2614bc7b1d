"""Combinatorial rank syndrome decoding over chain rings.

Both algorithms guess a free module that hopefully contains the error's
support, turn ``e H^T = s`` into a linear system over the base ring R and
accept a solution whose rank is exactly r.

* Algorithm 1 guesses a free rank-u R-submodule F of S with basis f and
  writes e = f X, X in R^(u x n).
* Algorithm 2 guesses a free rank-u R-submodule F of R^n (rows of a u x n
  matrix) and writes the matrix representation of e as X F, X in R^(m x u).

Trial ``i`` draws its randomness from ``random.Random(f"{seed}/{i}")`` so a
run is reproducible independently of how trials are spread over workers.
"""

from __future__ import annotations

import math
import random as _random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .codes import sample_free_basis, sample_full_rank_matrix, syndrome
from .errors import DimensionMismatch, InvalidParams, NotFree, OutOfRange, TrialsExhausted
from .extension import Extension
from .linalg import enumerate_solutions, smith_normal_form, solve, vector_rank
from .matrix import Matrix
from .shapes import beta


@dataclass(frozen=True)
class RsdInstance:
    ext: Extension
    H: Matrix
    s: Tuple
    r: int
    t: Optional[int] = None

    def __post_init__(self):
        if self.H.ring != self.ext:
            raise InvalidParams("parity-check matrix is not over the instance extension")
        if len(self.s) != self.H.nrows:
            raise DimensionMismatch(f"syndrome has length {len(self.s)}, H has {self.H.nrows} rows")
        snf = smith_normal_form(self.H, transforms=False)
        if snf.rank != self.H.nrows or not snf.is_free:
            raise NotFree("rows of H must be linearly independent (generate a free module)")
        if not 0 <= self.r <= min(self.ext.m, self.n):
            raise InvalidParams(f"r = {self.r} outside [0, min(m, n)]")
        if self.t is not None and not self.r <= self.t <= min(self.ext.m, self.n):
            raise InvalidParams(f"t = {self.t} must lie in [r, min(m, n)]")

    @property
    def n(self) -> int:
        return self.H.ncols

    @property
    def k(self) -> int:
        return self.H.ncols - self.H.nrows

    @property
    def m(self) -> int:
        return self.ext.m


@dataclass(frozen=True)
class DecoderParams:
    algorithm: int = 2
    u: Optional[int] = None
    max_trials: Optional[int] = None
    seed: int = 0
    workers: int = 1
    solution_enumeration_cap: int = 0
    batch: int = 16

    def __post_init__(self):
        if self.algorithm not in (1, 2):
            raise InvalidParams(f"algorithm must be 1 or 2, got {self.algorithm!r}")
        if self.workers < 1:
            raise InvalidParams("workers must be >= 1")
        if self.max_trials is not None and self.max_trials < 0:
            raise InvalidParams("max_trials must be >= 0")
        if self.solution_enumeration_cap < 0:
            raise InvalidParams("solution_enumeration_cap must be >= 0")


@dataclass
class DecodeReport:
    error: Optional[tuple]
    trials: int
    solve_failures: int = 0
    rank_mismatches: int = 0
    elapsed: float = 0.0
    algorithm: int = 2
    u: int = 0
    r: int = 0
    max_trials: int = 0

    @property
    def success(self) -> bool:
        return self.error is not None

    def to_json(self, ext=None) -> dict:
        d = asdict(self)
        if self.error is not None:
            d["error"] = [list(x) for x in self.error]
        return d


def default_u(algorithm: int, m: int, n: int, k: int) -> int:
    return (m * (n - k)) // n if algorithm == 1 else n - k


# ---------------------------------------------------------------------------
# linear systems


def build_system_alg1(ext: Extension, H: Matrix, s: Sequence, f: Sequence) -> Tuple[Matrix, tuple]:
    """Expand ``e H^T = s`` with ``e = f X`` into R-equations in vec(X).

    Unknown ``x_{i,j}`` (row i of X, column j) sits at index ``j*u + i``;
    equation ``l*m + c`` is coordinate c of the l-th syndrome entry.
    """
    nk, n = H.shape
    if len(s) != nk:
        raise DimensionMismatch(f"syndrome length {len(s)} does not match {nk} rows of H")
    m, u = ext.m, len(f)
    A = [[0] * (n * u) for _ in range(m * nk)]
    for l in range(nk):
        for j in range(n):
            hlj = H.rows[l][j]
            if ext.is_zero(hlj):
                continue
            for i, fi in enumerate(f):
                coef = ext.mul(hlj, fi)
                col = j * u + i
                for c in range(m):
                    A[l * m + c][col] = coef[c]
    b = tuple(s[l][c] for l in range(nk) for c in range(m))
    return Matrix(ext.base, A, n * u), b


def error_from_alg1(ext: Extension, f: Sequence, x: Sequence[int], n: int) -> tuple:
    u = len(f)
    out = []
    for j in range(n):
        acc = ext.zero
        for i in range(u):
            c = x[j * u + i]
            if c:
                acc = ext.add(acc, ext.scalar_mul(c, f[i]))
        out.append(acc)
    return tuple(out)


def build_system_alg2(ext: Extension, H: Matrix, s: Sequence, F: Sequence[Sequence[int]]) -> Tuple[Matrix, tuple]:
    """Expand ``e H^T = s`` with matrix representation ``E = X F`` into R-equations in vec(X).

    Unknown ``x_{c,i}`` (row c of X, column i) sits at index ``i*m + c``.
    """
    nk, n = H.shape
    if len(s) != nk:
        raise DimensionMismatch(f"syndrome length {len(s)} does not match {nk} rows of H")
    if any(len(row) != n for row in F):
        raise DimensionMismatch("rows of F must have length n")
    m, u = ext.m, len(F)
    # (H F^T)_{l,i} in S
    HF = [[_dot_scalar(ext, H.rows[l], F[i]) for i in range(u)] for l in range(nk)]
    apow = [ext.one]
    for _ in range(1, m):
        apow.append(ext.mul(apow[-1], ext.gen))
    A = [[0] * (m * u) for _ in range(m * nk)]
    for l in range(nk):
        for i in range(u):
            hf = HF[l][i]
            if ext.is_zero(hf):
                continue
            for c in range(m):
                coef = ext.mul(apow[c], hf)
                col = i * m + c
                for cc in range(m):
                    A[l * m + cc][col] = coef[cc]
    b = tuple(s[l][c] for l in range(nk) for c in range(m))
    return Matrix(ext.base, A, m * u), b


def _dot_scalar(ext: Extension, hrow: Sequence, frow: Sequence[int]):
    acc = ext.zero
    for h, c in zip(hrow, frow):
        if c:
            acc = ext.add(acc, ext.scalar_mul(c, h))
    return acc


def error_from_alg2(ext: Extension, F: Sequence[Sequence[int]], x: Sequence[int], n: int) -> tuple:
    m, u = ext.m, len(F)
    mod = ext.modulus
    out = []
    for j in range(n):
        coords = [sum(x[i * m + c] * F[i][j] for i in range(u)) % mod for c in range(m)]
        out.append(tuple(coords))
    return tuple(out)


def sample_free_submodule(ext: Extension, u: int, rng: _random.Random, ambient: str = "S", n: Optional[int] = None):
    """Basis of a random free rank-``u`` submodule of S (``ambient="S"``) or of R^n."""
    if ambient == "S":
        return sample_free_basis(ext, u, rng)
    if n is None:
        raise InvalidParams("ambient R^n needs n")
    if not 0 <= u <= n:
        raise OutOfRange(f"u = {u} outside [0, {n}]")
    return sample_full_rank_matrix(ext.base, u, n, rng)


# ---------------------------------------------------------------------------
# trials

ACCEPTED, UNSOLVABLE, RANK_MISMATCH = "accepted", "unsolvable", "rank-mismatch"


def _check(inst: RsdInstance, r: int, e: tuple, accept) -> bool:
    if vector_rank(inst.ext, e) != r:
        return False
    if syndrome(inst.ext, e, inst.H) != tuple(inst.s):
        return False
    return accept is None or accept(e)


def run_trial(inst: RsdInstance, r: int, algorithm: int, u: int, seed, trial: int, enum_cap: int = 0, accept=None):
    """One guess-and-solve round; returns ``(status, error or None)``."""
    rng = _random.Random(f"{seed}/{trial}")
    ext = inst.ext
    n = inst.n
    if algorithm == 1:
        basis = sample_free_basis(ext, u, rng)
        A, b = build_system_alg1(ext, inst.H, inst.s, basis)
        to_error = lambda x: error_from_alg1(ext, basis, x, n)
    else:
        basis = sample_full_rank_matrix(ext.base, u, n, rng)
        A, b = build_system_alg2(ext, inst.H, inst.s, basis)
        to_error = lambda x: error_from_alg2(ext, basis, x, n)
    outcome = solve(A, b)
    if not outcome.solvable:
        return UNSOLVABLE, None
    e = to_error(outcome.particular)
    if _check(inst, r, e, accept):
        return ACCEPTED, e
    if enum_cap:
        for x in enumerate_solutions(outcome, enum_cap):
            e = to_error(x)
            if _check(inst, r, e, accept):
                return ACCEPTED, e
    return RANK_MISMATCH, None


def _run_batch(args):
    inst, r, algorithm, u, seed, trials, enum_cap, accept = args
    out = []
    for t in trials:
        status, e = run_trial(inst, r, algorithm, u, seed, t, enum_cap, accept)
        out.append((t, status, e))
        if status == ACCEPTED:
            break
    return out


def _decode_exact(inst: RsdInstance, r: int, params: DecoderParams, accept, pool) -> DecodeReport:
    ext = inst.ext
    m, n, k = ext.m, inst.n, inst.k
    alg = params.algorithm
    u = params.u if params.u is not None else default_u(alg, m, n, k)
    top = m if alg == 1 else n
    if not r <= u <= top:
        raise InvalidParams(f"need r <= u <= {top}; got r = {r}, u = {u}")
    if params.max_trials is not None:
        max_trials = params.max_trials
    else:
        exp = expected_trials(ext.p, ext.nu, m, n, k, r, alg, u)
        max_trials = 64 * math.ceil(exp)
    report = DecodeReport(None, 0, algorithm=alg, u=u, r=r, max_trials=max_trials)
    if r == 0:
        if all(ext.is_zero(x) for x in inst.s) and (accept is None or accept(tuple([ext.zero] * n))):
            report.error = tuple([ext.zero] * n)
            return report
        raise TrialsExhausted("only the zero error has rank 0, and the syndrome is nonzero", report=report)

    def tally(results):
        for t, status, e in sorted(results, key=lambda x: x[0]):
            report.trials = t + 1
            if status == ACCEPTED:
                report.error = e
                return True
            if status == UNSOLVABLE:
                report.solve_failures += 1
            else:
                report.rank_mismatches += 1
        return False

    start = 0
    step = params.batch if pool is not None else max_trials
    while start < max_trials:
        stop = min(max_trials, start + step * (params.workers if pool is not None else 1))
        if pool is None:
            results = _run_batch((inst, r, alg, u, params.seed, range(start, stop), params.solution_enumeration_cap, accept))
        else:
            chunks = [range(a, min(stop, a + step)) for a in range(start, stop, step)]
            futures = [
                pool.submit(_run_batch, (inst, r, alg, u, params.seed, c, params.solution_enumeration_cap, accept))
                for c in chunks
            ]
            results = []
            for fut in futures:
                results.extend(fut.result())
            # a chunk stops at its first success; later chunks may hold trials past it
            first = min((t for t, st, _ in results if st == ACCEPTED), default=None)
            if first is not None:
                results = [x for x in results if x[0] <= first]
        if tally(results):
            return report
        start = stop
    raise TrialsExhausted(f"no error of rank {r} found in {max_trials} trials", report=report)


def decode(inst: RsdInstance, params: DecoderParams = DecoderParams(), accept: Optional[Callable] = None) -> DecodeReport:
    """Find e with ``e H^T = s`` and rank r (or every rank up to t if a radius is set).

    ``accept`` optionally adds a predicate every returned error must satisfy.
    """
    t0 = time.perf_counter()
    radii = [inst.r] if inst.t is None or inst.t == inst.r else list(range(0, inst.t + 1))
    pool = ProcessPoolExecutor(max_workers=params.workers) if params.workers > 1 else None
    try:
        last = None
        for r in radii:
            try:
                report = _decode_exact(inst, r, params, accept, pool)
            except TrialsExhausted as exc:
                last = exc
                continue
            report.elapsed = time.perf_counter() - t0
            return report
        if last.report is not None:
            last.report.elapsed = time.perf_counter() - t0
        raise last
    finally:
        if pool is not None:
            pool.shutdown()


# ---------------------------------------------------------------------------
# estimators


def _validate_estimate(q, nu, m, n, k, r, algorithm, u):
    if algorithm not in (1, 2):
        raise OutOfRange(f"algorithm must be 1 or 2, got {algorithm!r}")
    if q < 2 or nu < 1 or m < 1 or not 0 <= k < n:
        raise OutOfRange(f"invalid parameters q={q} nu={nu} m={m} n={n} k={k}")
    top = m if algorithm == 1 else n
    if u is None:
        u = default_u(algorithm, m, n, k)
    if not 0 <= r <= u <= top:
        raise OutOfRange(f"need 0 <= r <= u <= {top}; got r = {r}, u = {u}")
    return u


def expected_trials(q: int, nu: int, m: int, n: int, k: int, r: int, algorithm: int, u: Optional[int] = None) -> Fraction:
    """Inverse probability that the guessed free module contains the support (exact)."""
    u = _validate_estimate(q, nu, m, n, k, r, algorithm, u)
    top = m if algorithm == 1 else n
    return Fraction(beta(q, nu, r, top), beta(q, nu, r, u))


def approx_expected_trials(q: int, nu: int, m: int, n: int, k: int, r: int, algorithm: int, u: Optional[int] = None) -> int:
    """Closed-form approximation |R|^(r (top - u)); top = m for Algorithm 1, n for Algorithm 2."""
    u = _validate_estimate(q, nu, m, n, k, r, algorithm, u)
    top = m if algorithm == 1 else n
    return (q ** nu) ** (r * (top - u))


def operation_count(q: int, nu: int, m: int, n: int, k: int, r: int, algorithm: int, u: Optional[int] = None) -> Fraction:
    """Average number of ring operations: per-trial solve cost times expected trials."""
    u = _validate_estimate(q, nu, m, n, k, r, algorithm, u)
    ratio = expected_trials(q, nu, m, n, k, r, algorithm, u)
    if algorithm == 1:
        return m * (n - k) * u * u * n * n * ratio
    return m ** 3 * (n - k) ** 3 * ratio


# ---------------------------------------------------------------------------
# product rings


@dataclass
class PirDecodeReport:
    error: tuple
    components: List[DecodeReport]
    elapsed: float = 0.0

    @property
    def trials(self) -> int:
        return sum(c.trials for c in self.components)

    def to_json(self) -> dict:
        return {
            "error": [list(x) for x in self.error],
            "trials": self.trials,
            "elapsed": self.elapsed,
            "components": [c.to_json() for c in self.components],
        }


def pir_decode(pext, instances: Sequence[RsdInstance], params: DecoderParams = DecoderParams()) -> PirDecodeReport:
    """Decode each CRT component independently and recombine the errors."""
    from .pir import phi_inverse

    if len(instances) != pext.pir.rho:
        raise DimensionMismatch(f"expected {pext.pir.rho} component instances, got {len(instances)}")
    if len({(i.n, i.m) for i in instances}) != 1:
        raise DimensionMismatch("component instances must share n and m")
    t0 = time.perf_counter()
    reports = []
    for j, inst in enumerate(instances, start=1):
        try:
            reports.append(decode(inst, params))
        except TrialsExhausted as exc:
            raise TrialsExhausted(f"component {j}: {exc}", report=exc.report, component=j) from exc
    e = phi_inverse(pext.pir, [tuple(rep.error) for rep in reports])
    return PirDecodeReport(tuple(e), reports, time.perf_counter() - t0)
