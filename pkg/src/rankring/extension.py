"""Galois extensions S = R[X]/(h) of a base ring R = Z/p^nu.

Elements are tuples of ``m`` canonical base-ring integers holding the
coordinates in the power basis ``1, a, ..., a^(m-1)`` with ``a = X + (h)``.
The residue field F_{p^m} is itself an :class:`Extension` over the nu = 1
base ring with modulus ``Psi(h)``, so residue elements share the same
representation and code paths.
"""

from __future__ import annotations

import itertools
import random as _random
from dataclasses import dataclass, field
from typing import Iterator, List, Sequence, Tuple

from . import polyfp
from .errors import MixedRings, NotAUnit, NotMonic, OutOfRange, ReducibleResidue
from .matrix import Matrix
from .ring import ChainRing

Elem = Tuple[int, ...]


@dataclass(frozen=True)
class Extension:
    """Degree-m Galois extension of ``base`` defined by the monic polynomial ``h``."""

    base: ChainRing
    h: Tuple[int, ...]
    m: int = field(init=False, compare=False)

    def __post_init__(self):
        h = tuple(int(c) % self.base.modulus for c in self.h)
        object.__setattr__(self, "h", h)
        if len(h) < 2:
            raise NotMonic("h must have degree at least 1")
        if h[-1] != 1:
            raise NotMonic(f"leading coefficient of h is {h[-1]}, expected 1")
        m = len(h) - 1
        object.__setattr__(self, "m", m)
        p = self.base.p
        psi_h = [c % p for c in h]
        if not polyfp.is_irreducible(psi_h, p):
            witness = polyfp.find_factor(psi_h, p)
            raise ReducibleResidue(
                f"h mod {p} = {_poly_str(psi_h)} is reducible over F_{p}", witness=witness
            )
        object.__setattr__(self, "psi_h", tuple(psi_h))
        # X^(m+j) mod h for j = 0..m-2, used to fold products back into degree < m
        mod = self.base.modulus
        red: List[List[int]] = []
        cur = [(-c) % mod for c in h[:m]]  # X^m
        for _ in range(max(m - 1, 0)):
            red.append(cur)
            top = cur[-1]
            nxt = [0] + cur[:-1]
            cur = [(a + top * b) % mod for a, b in zip(nxt, [(-c) % mod for c in h[:m]])]
        object.__setattr__(self, "_red", tuple(tuple(r) for r in red))
        object.__setattr__(self, "_residue_field", None)

    # -- interface constants -------------------------------------------------
    @property
    def degree(self) -> int:
        return self.m

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def nu(self) -> int:
        return self.base.nu

    @property
    def modulus(self) -> int:
        return self.base.modulus

    @property
    def zero(self) -> Elem:
        return (0,) * self.m

    @property
    def one(self) -> Elem:
        return (1,) + (0,) * (self.m - 1)

    @property
    def pi(self) -> Elem:
        return (self.p % self.modulus,) + (0,) * (self.m - 1)

    @property
    def gen(self) -> Elem:
        """The class of X."""
        if self.m == 1:
            return ((-self.h[0]) % self.modulus,)
        return (0, 1) + (0,) * (self.m - 2)

    @property
    def size(self) -> int:
        return self.modulus ** self.m

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def is_field(self) -> bool:
        return self.nu == 1

    @property
    def residue_field(self) -> "Extension":
        rf = self._residue_field
        if rf is None:
            rf = self if self.nu == 1 else Extension(ChainRing(self.p, 1), self.psi_h)
            object.__setattr__(self, "_residue_field", rf)
        return rf

    residue_ring = residue_field

    def __call__(self, coeffs) -> "ExtElem":
        if isinstance(coeffs, ExtElem):
            if coeffs.ext != self:
                raise MixedRings("element belongs to a different extension")
            return coeffs
        return ExtElem(self, self.canonical(coeffs))

    def __str__(self):
        return f"{self.base}[X]/({_poly_str(self.h, 'X')})"

    # -- raw arithmetic ------------------------------------------------------
    def canonical(self, coeffs) -> Elem:
        if isinstance(coeffs, int):
            return (coeffs % self.modulus,) + (0,) * (self.m - 1)
        c = [int(x) % self.modulus for x in coeffs]
        if len(c) > self.m:
            return self.reduce_poly(c)
        return tuple(c) + (0,) * (self.m - len(c))

    def reduce_poly(self, c: Sequence[int]) -> Elem:
        """Reduce an arbitrary-length coefficient list modulo h."""
        mod = self.modulus
        c = list(c)
        m = self.m
        # Horner-style from the top using the monic leading term
        for i in range(len(c) - 1, m - 1, -1):
            t = c[i] % mod
            if t:
                for j in range(m):
                    c[i - m + j] -= t * self.h[j]
            c[i] = 0
        return tuple(x % mod for x in c[:m]) + (0,) * max(0, m - len(c))

    def add(self, x: Elem, y: Elem) -> Elem:
        mod = self.modulus
        return tuple((a + b) % mod for a, b in zip(x, y))

    def sub(self, x: Elem, y: Elem) -> Elem:
        mod = self.modulus
        return tuple((a - b) % mod for a, b in zip(x, y))

    def neg(self, x: Elem) -> Elem:
        mod = self.modulus
        return tuple(-a % mod for a in x)

    def mul(self, x: Elem, y: Elem) -> Elem:
        m = self.m
        prod = [0] * (2 * m - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        prod[i + j] += a * b
        out = prod[:m]
        for j, r in enumerate(self._red):
            t = prod[m + j]
            if t:
                for i in range(m):
                    out[i] += t * r[i]
        mod = self.modulus
        return tuple(v % mod for v in out)

    def scalar_mul(self, c: int, x: Elem) -> Elem:
        """Multiply by a base-ring scalar."""
        mod = self.modulus
        return tuple(c * a % mod for a in x)

    def power(self, x: Elem, e: int) -> Elem:
        result = self.one
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_zero(self, x: Elem) -> bool:
        return not any(x)

    def valuation(self, x: Elem) -> int:
        v = self.base.valuation
        return min(v(a) for a in x)

    def is_unit(self, x: Elem) -> bool:
        p = self.p
        return any(a % p for a in x)

    def unit_part(self, x: Elem) -> Elem:
        if self.is_zero(x):
            return self.one
        return self.div_pi_power(x, self.valuation(x))

    def unit_inverse(self, x: Elem) -> Elem:
        """Inverse of a unit: invert Psi(x) in the residue field, then Newton-Hensel lift."""
        p = self.p
        px = polyfp.trim(x, p)
        if not px:
            raise NotAUnit("element reduces to zero in the residue field")
        inv = polyfp.inverse_mod(px, list(self.psi_h), p)
        y = tuple(inv) + (0,) * (self.m - len(inv))
        two = self.canonical(2)
        steps = (self.nu - 1).bit_length()  # ceil(log2(nu))
        for _ in range(steps):
            y = self.mul(y, self.sub(two, self.mul(x, y)))
        return y

    def div_pi_power(self, x: Elem, k: int) -> Elem:
        pk = self.p ** k
        return tuple(a // pk for a in x)

    def mul_pi_power(self, x: Elem, k: int) -> Elem:
        if k >= self.nu:
            return self.zero
        pk = self.p ** k
        mod = self.modulus
        return tuple(a * pk % mod for a in x)

    def reduce_mod_pi_power(self, x: Elem, k: int) -> Tuple[Elem, Elem]:
        pk = self.p ** k
        return tuple(a % pk for a in x), tuple(a // pk for a in x)

    def remainders(self, k: int) -> Iterator[Elem]:
        """Canonical representatives of S / p^k S."""
        return itertools.product(range(self.p ** min(k, self.nu)), repeat=self.m)

    def residue(self, x: Elem) -> Elem:
        p = self.p
        return tuple(a % p for a in x)

    def lift(self, y: Elem) -> Elem:
        p = self.p
        return tuple(a % p for a in y)

    def random(self, rng: _random.Random) -> Elem:
        mod = self.modulus
        return tuple(rng.randrange(mod) for _ in range(self.m))

    def random_unit(self, rng: _random.Random) -> Elem:
        while True:
            x = self.random(rng)
            if self.is_unit(x):
                return x

    def elements(self) -> Iterator[Elem]:
        return itertools.product(range(self.modulus), repeat=self.m)

    def ideal_elements(self, v: int) -> Iterator[Elem]:
        if v >= self.nu:
            return iter([self.zero])
        pv = self.p ** v
        digits = [pv * t for t in range(self.p ** (self.nu - v))]
        return itertools.product(digits, repeat=self.m)

    def row_axpy(self, dst, c, src):
        """``dst - c*src`` elementwise."""
        mul, sub = self.mul, self.sub
        return [sub(a, mul(c, b)) if any(b) else a for a, b in zip(dst, src)]

    def row_scale(self, row, c):
        mul = self.mul
        return [mul(c, a) for a in row]

    # -- serialization -------------------------------------------------------
    def to_json(self, x: Elem) -> List[int]:
        return [int(a) for a in x]

    def from_json(self, obj) -> Elem:
        if not isinstance(obj, list) or len(obj) != self.m:
            raise ValueError(f"extension element must be a list of {self.m} integers, got {obj!r}")
        for a in obj:
            if isinstance(a, bool) or not isinstance(a, int) or not 0 <= a < self.modulus:
                raise ValueError(f"coordinate {a!r} is not canonical in [0, {self.modulus})")
        return tuple(obj)

    def format(self, x: Elem, var: str = "a") -> str:
        return _poly_str(x, var)


def _poly_str(coeffs: Sequence[int], var: str = "X") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


@dataclass(frozen=True)
class ExtElem:
    """Value-type wrapper around an extension element."""

    ext: Extension
    coeffs: Elem

    def _other(self, other) -> Elem:
        if isinstance(other, ExtElem):
            if other.ext != self.ext:
                raise MixedRings("cannot combine elements of different extensions")
            return other.coeffs
        if isinstance(other, int):
            return self.ext.canonical(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return ExtElem(self.ext, self.ext.add(self.coeffs, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return ExtElem(self.ext, self.ext.sub(self.coeffs, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return ExtElem(self.ext, self.ext.sub(o, self.coeffs))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return ExtElem(self.ext, self.ext.mul(self.coeffs, o))

    __rmul__ = __mul__

    def __neg__(self):
        return ExtElem(self.ext, self.ext.neg(self.coeffs))

    def __pow__(self, e: int):
        return ExtElem(self.ext, self.ext.power(self.coeffs, e))

    def __eq__(self, other):
        if isinstance(other, ExtElem):
            return self.ext == other.ext and self.coeffs == other.coeffs
        if isinstance(other, (int, tuple, list)):
            return self.coeffs == self.ext.canonical(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ext, self.coeffs))

    def __repr__(self):
        return self.ext.format(self.coeffs)

    def valuation(self) -> int:
        return self.ext.valuation(self.coeffs)

    def invert(self) -> "ExtElem":
        return ExtElem(self.ext, self.ext.unit_inverse(self.coeffs))

    def psi(self) -> "ExtElem":
        return ExtElem(self.ext.residue_field, self.ext.residue(self.coeffs))


# Residue-field elements are extension elements over the nu = 1 base.
ResidueElem = ExtElem


def make_extension(base: ChainRing, h: Sequence[int]) -> Extension:
    return Extension(base, tuple(h))


def ext_add(x: ExtElem, y: ExtElem) -> ExtElem:
    return x + y


def ext_mul(x: ExtElem, y: ExtElem) -> ExtElem:
    return x * y


def ext_invert(x: ExtElem) -> ExtElem:
    return x.invert()


def psi(x: ExtElem) -> ExtElem:
    return x.psi()


def lift(y: ExtElem, ext: Extension) -> ExtElem:
    if ext.residue_field != y.ext:
        raise MixedRings("residue element does not belong to this extension's residue field")
    return ExtElem(ext, ext.lift(y.coeffs))


def mul_by_pi_power(x: ExtElem, i: int) -> ExtElem:
    if not 0 <= i <= x.ext.nu:
        raise OutOfRange(f"exponent {i} outside [0, {x.ext.nu}]")
    return ExtElem(x.ext, x.ext.mul_pi_power(x.coeffs, i))


def matrix_representation(ext: Extension, v: Sequence[Elem]) -> Matrix:
    """m x n matrix over the base ring; column j is the coordinate vector of v_j."""
    v = [x.coeffs if isinstance(x, ExtElem) else tuple(x) for x in v]
    return Matrix(ext.base, [[x[c] for x in v] for c in range(ext.m)], len(v))


def from_matrix_representation(ext: Extension, M: Matrix) -> List[Elem]:
    return [M.column(j) for j in range(M.ncols)]


def residue_vector(ext: Extension, v: Sequence[Elem]) -> List[Elem]:
    return [ext.residue(x) for x in v]
