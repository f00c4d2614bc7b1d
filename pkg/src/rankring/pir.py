"""Principal ideal rings Z/eta as products of chain rings.

Values over Z/eta (integers, vectors, matrices, polynomials, extension
coordinate tuples) are split into their CRT components and recombined with
the orthogonal idempotents.  Codes and vectors over a product extension are
handled componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .codes import LinearCode, min_rank_distance
from .errors import DimensionMismatch, OutOfRange, ZeroCode
from .extension import Extension
from .linalg import vector_rank
from .matrix import Matrix
from .ring import ChainRing, factorize


@dataclass(frozen=True)
class PirRing:
    eta: int
    components: Tuple[ChainRing, ...]
    idempotents: Tuple[int, ...]

    @property
    def rho(self) -> int:
        return len(self.components)

    @property
    def moduli(self) -> Tuple[int, ...]:
        return tuple(c.modulus for c in self.components)

    def __str__(self):
        return f"Z/{self.eta} = " + " x ".join(str(c) for c in self.components)


def decompose(eta: int, bound: int = 1 << 20) -> PirRing:
    if not isinstance(eta, int) or eta < 2:
        raise OutOfRange(f"eta must be an integer >= 2, got {eta!r}")
    # descending primes, so Z/40 gives (Z/5, Z/8) with e_1 = 16, e_2 = 25
    comps = [ChainRing(p, k) for p, k in sorted(factorize(eta, bound), reverse=True)]
    idem = []
    for c in comps:
        other = eta // c.modulus
        # e = 1 mod p^k, e = 0 mod eta/p^k
        idem.append(other * pow(other, -1, c.modulus) % eta)
    return PirRing(eta, tuple(comps), tuple(idem))


def phi_j(pir: PirRing, x, j: int):
    """Reduce ``x`` into component ``j`` (1-based), structure-preserving."""
    if not 1 <= j <= pir.rho:
        raise OutOfRange(f"component index {j} outside [1, {pir.rho}]")
    return _reduce(x, pir.components[j - 1].modulus)


def _reduce(x, mod):
    if isinstance(x, bool):
        raise TypeError("boolean is not a ring element")
    if isinstance(x, int):
        return x % mod
    if isinstance(x, Matrix):
        return [[_reduce(y, mod) for y in r] for r in x.rows]
    if isinstance(x, tuple):
        return tuple(_reduce(y, mod) for y in x)
    if isinstance(x, list):
        return [_reduce(y, mod) for y in x]
    raise TypeError(f"cannot reduce {type(x).__name__}")


def phi_inverse(pir: PirRing, parts: Sequence):
    """Recombine component values with the idempotents: sum x_j e_j mod eta."""
    if len(parts) != pir.rho:
        raise DimensionMismatch(f"expected {pir.rho} components, got {len(parts)}")
    return _combine(list(parts), pir.idempotents, pir.eta)


def _combine(parts, idem, eta):
    head = parts[0]
    if isinstance(head, int):
        return sum(x * e for x, e in zip(parts, idem)) % eta
    if isinstance(head, Matrix):
        parts = [[list(r) for r in p.rows] for p in parts]
        head = parts[0]
    if any(len(p) != len(head) for p in parts):
        raise DimensionMismatch("components have different shapes")
    items = [_combine([p[i] for p in parts], idem, eta) for i in range(len(head))]
    return tuple(items) if isinstance(head, tuple) else items


def split(pir: PirRing, x) -> List:
    return [phi_j(pir, x, j) for j in range(1, pir.rho + 1)]


@dataclass(frozen=True)
class PirExtension:
    pir: PirRing
    components: Tuple[Extension, ...]
    combined_h: Tuple[int, ...]

    @property
    def m(self) -> int:
        return self.components[0].m

    @property
    def eta(self) -> int:
        return self.pir.eta

    def split_vector(self, v: Sequence) -> List[tuple]:
        return split(self.pir, tuple(tuple(x) for x in v))

    def combine_vector(self, parts: Sequence[Sequence]) -> tuple:
        return phi_inverse(self.pir, [tuple(tuple(x) for x in p) for p in parts])

    def __str__(self):
        return " x ".join(str(e) for e in self.components)


def make_pir_extension(eta: int, h: Sequence[int]) -> PirExtension:
    """Product extension from a monic polynomial over Z/eta."""
    pir = decompose(eta)
    h = tuple(int(c) % eta for c in h)
    comps = tuple(Extension(c, tuple(x % c.modulus for x in h)) for c in pir.components)
    return PirExtension(pir, comps, h)


def pir_extension_from_components(eta: int, hs) -> PirExtension:
    """Product extension from one polynomial per component; degrees must agree.

    ``hs`` is either a sequence in component order (descending primes) or a
    mapping from component modulus p^k to its polynomial.
    """
    pir = decompose(eta)
    if isinstance(hs, dict):
        missing = [c.modulus for c in pir.components if c.modulus not in hs]
        if missing:
            raise DimensionMismatch(f"no polynomial given for component moduli {missing}")
        hs = [hs[c.modulus] for c in pir.components]
    if len(hs) != pir.rho:
        raise DimensionMismatch(f"expected {pir.rho} component polynomials, got {len(hs)}")
    degs = {len(h) for h in hs}
    if len(degs) != 1:
        raise DimensionMismatch("component extensions must share one degree m")
    comps = tuple(Extension(c, tuple(h)) for c, h in zip(pir.components, hs))
    combined = phi_inverse(pir, [list(e.h) for e in comps])
    return PirExtension(pir, comps, tuple(combined))


def pir_rank(pext: PirExtension, v: Sequence) -> int:
    return max(vector_rank(e, part) for e, part in zip(pext.components, pext.split_vector(v)))


class PirCode:
    """Code over a product extension, stored as one code per component."""

    def __init__(self, pext: PirExtension, gens: Sequence[Sequence]):
        self.pext = pext
        gens = [tuple(tuple(x) for x in row) for row in gens]
        if not gens:
            raise DimensionMismatch("a code needs at least one generator row")
        self.n = len(gens[0])
        self.gens = gens
        parts = split(pext.pir, gens)
        self.components = [LinearCode(e, Matrix(e, rows, self.n)) for e, rows in zip(pext.components, parts)]


def pir_code_rank(code: PirCode) -> int:
    return max(c.rank for c in code.components)


def pir_min_distance(code: PirCode, method: str = "socle-projection", cap=None) -> int:
    ds = [min_rank_distance(c, method, cap) for c in code.components if not c.is_zero]
    if not ds:
        raise ZeroCode("every component of the code is zero")
    return min(ds)
