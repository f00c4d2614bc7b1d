"""Dense polynomials over a prime field F_p.

Polynomials are lists of ints in ``[0, p)``, lowest degree first, with no
trailing zeros; ``[]`` is the zero polynomial.
"""

from __future__ import annotations

from typing import List, Sequence

Poly = List[int]


def trim(a: Sequence[int], p: int) -> Poly:
    out = [c % p for c in a]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(a: Poly) -> int:
    return len(a) - 1


def add(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], p)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out, p)


def divmod_(a: Poly, b: Poly, p: int):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            f = c * inv_lead % p
            q[i - db] = f
            for j, y in enumerate(b):
                a[i - db + j] -= f * y
    return trim(q, p), trim(a[:db], p)


def mod(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_(a, b, p)[1]


def monic(a: Poly, p: int) -> Poly:
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    a, b = trim(a, p), trim(b, p)
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def inverse_mod(a: Poly, f: Poly, p: int) -> Poly:
    """Inverse of ``a`` modulo ``f`` by the extended Euclidean algorithm."""
    r0, r1 = trim(f, p), mod(a, f, p)
    s0, s1 = [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("polynomial is not invertible modulo f")
    inv = pow(r0[0], -1, p)
    return [c * inv % p for c in s0]


def powmod(a: Poly, e: int, f: Poly, p: int) -> Poly:
    result: Poly = [1]
    base = mod(a, f, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), f, p)
        base = mod(mul(base, base, p), f, p)
        e >>= 1
    return result


def prime_factors(n: int) -> List[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _frobenius_power(f: Poly, k: int, p: int) -> Poly:
    """X^(p^k) mod f."""
    x = mod([0, 1], f, p)
    for _ in range(k):
        x = powmod(x, p, f, p)
    return x


def find_factor(f: Poly, p: int):
    """Return a proper monic factor of ``f`` or ``None`` if ``f`` is irreducible.

    Distinct-degree style: the first nontrivial gcd(X^(p^d) - X, f) for
    d <= deg(f)/2 is a proper factor whenever one exists.
    """
    f = monic(trim(f, p), p)
    m = degree(f)
    if m <= 0:
        raise ValueError("constant polynomial")
    if m == 1:
        return None
    x = [0, 1]
    xp = mod(x, f, p)
    for d in range(1, m // 2 + 1):
        xp = powmod(xp, p, f, p)
        g = gcd(sub(xp, x, p), f, p)
        if len(g) > 1:
            if len(g) < len(f):
                return g
            # f is a product of distinct degree-d irreducibles: search them
            return _search_divisor(f, d, p)
    return None


def _search_divisor(f: Poly, d: int, p: int) -> Poly:
    for n in range(p ** d):
        cand = []
        k = n
        for _ in range(d):
            cand.append(k % p)
            k //= p
        cand.append(1)
        if not mod(f, cand, p):
            return cand
    raise AssertionError("split polynomial without a divisor")


def is_irreducible(f: Poly, p: int) -> bool:
    """Rabin's test: X^(p^m) = X mod f and gcd(X^(p^(m/l)) - X, f) = 1 for primes l | m."""
    f = monic(trim(f, p), p)
    m = degree(f)
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _frobenius_power(f, m, p) != mod(x, f, p):
        return False
    for ell in prime_factors(m):
        g = gcd(sub(_frobenius_power(f, m // ell, p), x, p), f, p)
        if len(g) != 1:
            return False
    return True


def first_irreducible(p: int, m: int) -> Poly:
    """Lexicographically first monic irreducible of degree ``m`` over F_p."""
    if m == 1:
        return [0, 1]
    n = 0
    while True:
        coeffs = []
        k = n
        for _ in range(m):
            coeffs.append(k % p)
            k //= p
        if k:
            raise ValueError("no irreducible polynomial found")
        f = coeffs + [1]
        if f[0] != 0 and is_irreducible(f, p):
            return f
        n += 1
