"""The base chain ring Z/p^nu Z.

A :class:`ChainRing` works on raw canonical integers in ``[0, p^nu)`` so the
linear-algebra layer can run without wrapper objects; :class:`RingElem` is
the value-type view for interactive use.

Every ring in this package (base ring, Galois extension, residue fields)
exposes the same small interface used by :mod:`rankring.linalg`:
``zero``, ``one``, ``add``, ``sub``, ``neg``, ``mul``, ``is_zero``,
``valuation``, ``unit_inverse``, ``div_pi_power``, ``mul_pi_power``,
``reduce_mod_pi_power``, ``pi``, ``nu``, ``p``, ``residue``, ``lift``,
``residue_ring``, ``random``, ``elements``, ``size``, ``q``, ``row_axpy``
and ``row_scale``.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Iterator, List, Tuple

from .errors import MixedRings, NotAUnit, OutOfRange


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int, bound: int = 1 << 20) -> List[Tuple[int, int]]:
    """Trial-division factorization into ``[(prime, exponent), ...]``.

    Raises :class:`OutOfRange` when a cofactor above ``bound**2`` survives,
    i.e. when the remaining part cannot be certified prime by trial division
    up to ``bound``.
    """
    if n < 1:
        raise OutOfRange(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if d > bound:
            raise OutOfRange(f"{n} has no factor below the trial-division bound {bound}")
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


@dataclass(frozen=True)
class ChainRing:
    """Z/p^nu Z with its valuation structure; ``pi`` is the element ``p``."""

    p: int
    nu: int
    modulus: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise OutOfRange(f"p = {self.p} is not prime")
        if not isinstance(self.nu, int) or self.nu < 1:
            raise OutOfRange(f"nilpotency index must be >= 1, got {self.nu}")
        object.__setattr__(self, "modulus", self.p ** self.nu)
        if self.modulus <= 1 << 12:
            table = [self.nu] * self.modulus
            pk = 1
            for v in range(self.nu):
                for x in range(pk, self.modulus, pk):
                    table[x] = v
                pk *= self.p
            object.__setattr__(self, "_vtable", table)
        else:
            object.__setattr__(self, "_vtable", None)

    # -- interface constants -------------------------------------------------
    zero = 0
    one = 1
    degree = 1  # rank over the base ring

    @property
    def pi(self) -> int:
        return self.p % self.modulus

    @property
    def size(self) -> int:
        return self.modulus

    @property
    def q(self) -> int:
        """Order of the residue field."""
        return self.p

    @property
    def is_field(self) -> bool:
        return self.nu == 1

    @property
    def base(self) -> "ChainRing":
        return self

    @property
    def residue_ring(self) -> "ChainRing":
        return ChainRing(self.p, 1)

    def __call__(self, value) -> "RingElem":
        if isinstance(value, RingElem):
            if value.ring != self:
                raise MixedRings("element belongs to a different ring")
            return value
        return RingElem(self, self.canonical(value))

    def __str__(self):
        return f"Z/{self.modulus}" if self.nu > 1 else f"F_{self.p}"

    # -- raw arithmetic ------------------------------------------------------
    def canonical(self, x) -> int:
        return int(x) % self.modulus

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.modulus

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.modulus

    def neg(self, x: int) -> int:
        return -x % self.modulus

    def mul(self, x: int, y: int) -> int:
        return x * y % self.modulus

    def is_zero(self, x: int) -> bool:
        return x == 0

    def valuation(self, x: int) -> int:
        """Largest i with p^i | x; ``nu`` for zero."""
        if self._vtable is not None:
            return self._vtable[x]
        if x == 0:
            return self.nu
        v = 0
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def unit_part(self, x: int) -> int:
        """The unit u with x = p^valuation(x) * u (u = 1 for zero)."""
        if x == 0:
            return 1
        return x // self.p ** self.valuation(x)

    def unit_inverse(self, x: int) -> int:
        if x % self.p == 0:
            raise NotAUnit(f"{x} is not a unit of {self}")
        return pow(x, -1, self.modulus)

    def div_pi_power(self, x: int, k: int) -> int:
        """Some y with p^k * y = x; requires valuation(x) >= k."""
        return x // self.p ** k

    def mul_pi_power(self, x: int, k: int) -> int:
        if k >= self.nu:
            return 0
        return x * self.p ** k % self.modulus

    def reduce_mod_pi_power(self, x: int, k: int) -> Tuple[int, int]:
        """Split x = p^k * quotient + remainder with a canonical remainder."""
        pk = self.p ** k
        return x % pk, x // pk

    def remainders(self, k: int) -> Iterator[int]:
        """Canonical representatives of R / p^k R."""
        return iter(range(self.p ** min(k, self.nu)))

    def residue(self, x: int) -> int:
        return x % self.p

    def lift(self, y: int) -> int:
        return y % self.p

    def random(self, rng: _random.Random) -> int:
        return rng.randrange(self.modulus)

    def random_unit(self, rng: _random.Random) -> int:
        while True:
            x = rng.randrange(self.modulus)
            if x % self.p:
                return x

    def elements(self) -> Iterator[int]:
        return iter(range(self.modulus))

    def ideal_elements(self, v: int) -> Iterator[int]:
        """All elements of the ideal p^v R."""
        if v >= self.nu:
            return iter([0])
        pv = self.p ** v
        return iter([pv * t for t in range(self.p ** (self.nu - v))])

    # -- row kernels used by elimination ----------------------------------------
    def row_axpy(self, dst, c, src):
        """``dst - c*src`` elementwise."""
        m = self.modulus
        return [(a - c * b) % m for a, b in zip(dst, src)]

    def row_scale(self, row, c):
        m = self.modulus
        return [a * c % m for a in row]

    # -- serialization -------------------------------------------------------
    def to_json(self, x: int):
        return int(x)

    def from_json(self, obj) -> int:
        if isinstance(obj, bool) or not isinstance(obj, int):
            raise TypeError(f"expected an integer ring element, got {obj!r}")
        if not 0 <= obj < self.modulus:
            raise ValueError(f"element {obj} is not canonical in [0, {self.modulus})")
        return obj

    def format(self, x: int) -> str:
        return str(x)


@total_ordering
@dataclass(frozen=True)
class RingElem:
    """Element of a :class:`ChainRing` with operator overloading."""

    ring: ChainRing
    residue: int

    def _other(self, other) -> int:
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                raise MixedRings(f"cannot combine elements of {self.ring} and {other.ring}")
            return other.residue
        if isinstance(other, int):
            return other % self.ring.modulus
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElem(self.ring, self.ring.add(self.residue, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElem(self.ring, self.ring.sub(self.residue, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElem(self.ring, self.ring.sub(o, self.residue))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElem(self.ring, self.ring.mul(self.residue, o))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.ring, self.ring.neg(self.residue))

    def __pow__(self, e: int):
        return RingElem(self.ring, pow(self.residue, e, self.ring.modulus))

    def __eq__(self, other):
        if isinstance(other, RingElem):
            return self.ring == other.ring and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.ring.modulus
        return NotImplemented

    def __lt__(self, other):
        return self.residue < self._other(other)

    def __hash__(self):
        return hash((self.ring, self.residue))

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} (mod {self.ring.modulus})"

    def valuation(self) -> int:
        return self.ring.valuation(self.residue)

    def unit_part(self) -> "RingElem":
        return RingElem(self.ring, self.ring.unit_part(self.residue))

    def invert(self) -> "RingElem":
        return RingElem(self.ring, self.ring.unit_inverse(self.residue))

    def is_unit(self) -> bool:
        return self.residue % self.ring.p != 0

    def residue_project(self) -> "RingElem":
        f = self.ring.residue_ring
        return RingElem(f, self.residue % self.ring.p)


def add(a: RingElem, b: RingElem) -> RingElem:
    return a + b


def mul(a: RingElem, b: RingElem) -> RingElem:
    return a * b


def neg(a: RingElem) -> RingElem:
    return -a


def valuation(a: RingElem) -> int:
    return a.valuation()


def unit_part(a: RingElem) -> RingElem:
    return a.unit_part()


def invert(a: RingElem) -> RingElem:
    return a.invert()


def residue_project(a: RingElem) -> RingElem:
    return a.residue_project()
