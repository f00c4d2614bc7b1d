from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import crt_idempotents, local_generator_count, min_generators_mod, span
from rankring.codes import LinearCode, min_rank_distance
from rankring.errors import DimensionMismatch, OutOfRange, ZeroCode
from rankring.linalg import vector_rank
from rankring.pir import (
    PirCode,
    decompose,
    make_pir_extension,
    phi_inverse,
    phi_j,
    pir_code_rank,
    pir_extension_from_components,
    pir_min_distance,
    pir_rank,
    split,
)

# degree-2 components: X^2+X+1 over Z/4 and X^2+1 over F_3 (both irreducible mod p)
Z12_HS = {4: [1, 1, 1], 3: [1, 0, 1]}
# X^2+2 over F_5 and X^2+X+1 over Z/8
Z40_HS = {5: [2, 0, 1], 8: [1, 1, 1]}


@pytest.fixture(scope="module")
def p12():
    return pir_extension_from_components(12, Z12_HS)


@pytest.fixture(scope="module")
def p40():
    return pir_extension_from_components(40, Z40_HS)


def test_decompose_40():
    R = decompose(40)
    assert R.moduli == (5, 8)
    assert R.idempotents == (16, 25)
    oracle = crt_idempotents(40, [5, 8])
    assert R.idempotents == (oracle[5], oracle[8])
    assert 16 * 16 % 40 == 16


def test_decompose_prime_power_and_12():
    R = decompose(8)
    assert R.rho == 1 and R.idempotents == (1,)
    R = decompose(12)
    assert set(R.moduli) == {3, 4}
    oracle = crt_idempotents(12, [4, 3])
    assert R.idempotents == tuple(oracle[q] for q in R.moduli) == (4, 9)


@pytest.mark.parametrize("eta", [6, 12, 30, 40, 360, 1001, 2 ** 5 * 3 ** 2 * 7])
def test_idempotent_identities(eta):
    R = decompose(eta)
    e = R.idempotents
    assert sum(e) % eta == 1
    for i in range(R.rho):
        assert e[i] * e[i] % eta == e[i]
        for j in range(R.rho):
            if i != j:
                assert e[i] * e[j] % eta == 0


def test_decompose_rejects_bad_eta():
    with pytest.raises(OutOfRange):
        decompose(1)


def test_combined_polynomial_from_example():
    comps = {5: [2, 4, 4, 0, 1], 8: [1, 3, 6, 4, 1]}
    P = pir_extension_from_components(40, comps)
    assert P.combined_h == (17, 19, 14, 20, 1)
    for ext in P.components:
        assert tuple(c % ext.modulus for c in P.combined_h) == ext.h
    R = P.pir
    assert phi_inverse(R, [list(e.h) for e in P.components]) == [17, 19, 14, 20, 1]
    Q = make_pir_extension(40, [17, 19, 14, 20, 1])
    assert Q.components == P.components


def test_mismatched_degrees():
    with pytest.raises(DimensionMismatch):
        pir_extension_from_components(12, {4: [1, 1, 1], 3: [1, 2, 0, 1]})
    with pytest.raises(DimensionMismatch):
        pir_extension_from_components(12, {4: [1, 1, 1]})


def test_phi_zero_and_bounds():
    R = decompose(40)
    assert all(phi_j(R, 0, j) == 0 for j in (1, 2))
    with pytest.raises(OutOfRange):
        phi_j(R, 3, 3)


@given(st.sampled_from([12, 40, 360, 2 * 3 * 5 * 7]), st.integers(0, 10 ** 6),
       st.lists(st.integers(0, 10 ** 6), min_size=1, max_size=5))
def test_crt_roundtrip(eta, x, v):
    R = decompose(eta)
    x %= eta
    assert phi_inverse(R, split(R, x)) == x
    v = tuple(a % eta for a in v)
    assert phi_inverse(R, split(R, v)) == v


@given(st.integers(0, 359), st.integers(0, 359))
def test_phi_is_ring_homomorphism(a, b):
    R = decompose(360)
    for j in range(1, R.rho + 1):
        mod = R.moduli[j - 1]
        assert phi_j(R, (a * b) % 360, j) == phi_j(R, a, j) * phi_j(R, b, j) % mod
        assert phi_j(R, (a + b) % 360, j) == (phi_j(R, a, j) + phi_j(R, b, j)) % mod


def test_pir_rank_definition(p12):
    # pick components with ranks 2 and 1 and recombine
    S3 = next(e for e in p12.components if e.modulus == 3)
    S4 = next(e for e in p12.components if e.modulus == 4)
    v3 = [S3.one, S3.gen]
    v4 = [S4.one, S4.scalar_mul(3, S4.one)]
    parts = [v3 if e.modulus == 3 else v4 for e in p12.components]
    v = p12.combine_vector(parts)
    assert vector_rank(S3, v3) == 2 and vector_rank(S4, v4) == 1
    assert pir_rank(p12, v) == 2
    assert pir_rank(p12, [(0, 0)] * 3) == 0


def test_pir_rank_against_exhaustive_generating_sets(p12):
    rnd = random.Random(12)
    for _ in range(25):
        n = rnd.randint(1, 2)
        v = [tuple(rnd.randrange(12) if rnd.random() < 0.7 else 0 for _ in range(2)) for _ in range(n)]
        assert pir_rank(p12, v) == min_generators_mod(12, v)


def _z12_codeword_rank(v, m):
    coords = [v[j * m:(j + 1) * m] for j in range(len(v) // m)]
    M = span(12, coords)
    return max(local_generator_count(12, 2, M), local_generator_count(12, 3, M))


def _z12_min_distance(pext, gens):
    # Z/12-closure of all codewords, no CRT splitting
    S_parts = pext.components
    m = pext.m
    base = []
    for row in gens:
        for c in range(m):
            # multiply by a^c in the product extension, computed componentwise then recombined
            parts = []
            for ext, prow in zip(S_parts, pext.split_vector(row)):
                ac = ext.power(ext.gen, c)
                parts.append([ext.mul(ac, x) for x in prow])
            mult = pext.combine_vector(parts)
            base.append(tuple(a for x in mult for a in x))
    words = span(12, base)
    return min(_z12_codeword_rank(w, m) for w in words if any(w))


def test_pir_distance_against_direct_enumeration(p12):
    rnd = random.Random(5)
    done = 0
    while done < 6:
        n = rnd.randint(2, 4)
        k = 1
        gens = [[tuple(rnd.randrange(12) for _ in range(2)) for _ in range(n)] for _ in range(k)]
        code = PirCode(p12, gens)
        if all(c.is_zero for c in code.components):
            continue
        done += 1
        assert pir_min_distance(code, "brute") == _z12_min_distance(p12, gens)
        assert pir_min_distance(code) == min(min_rank_distance(c) for c in code.components if not c.is_zero)
        assert pir_code_rank(code) == max(c.rank for c in code.components)


def test_pir_distance_on_z40(p40):
    rnd = random.Random(40)
    gens = [[tuple(rnd.randrange(40) for _ in range(2)) for _ in range(3)]]
    code = PirCode(p40, gens)
    ds = [min_rank_distance(c, "brute") for c in code.components if not c.is_zero]
    assert pir_min_distance(code, "brute") == min(ds)
    assert pir_min_distance(code) == min(ds)


def test_single_component_matches_chain_ring(s8):
    P = pir_extension_from_components(8, {8: list(s8.h)})
    gens = [[(1, 0, 0, 0), (0, 1, 0, 0), (2, 0, 0, 0)]]
    assert pir_min_distance(PirCode(P, gens)) == min_rank_distance(LinearCode(s8, gens))


def test_pir_zero_code(p12):
    with pytest.raises(ZeroCode):
        pir_min_distance(PirCode(p12, [[(0, 0), (0, 0)]]))
    # a code that vanishes in one component still has a distance from the other
    code = PirCode(p12, [[(4, 0), (0, 0)]])
    assert pir_min_distance(code) == 1
