from __future__ import annotations

import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import all_submodules, nakayama_rank, shape_of_set, span
from rankring.errors import OutOfRange, ShapeNotDominated, TooLarge
from rankring.matrix import Matrix
from rankring.ring import ChainRing
from rankring.shapes import (
    Partition,
    beta,
    beta_lower_bound,
    beta_upper_bound,
    candidate_count,
    cardinality_log_q,
    conjugate,
    count_submodules_of_rank,
    count_submodules_of_shape,
    enumerate_submodules,
    gaussian_binomial,
    shape_of_module,
    submodule_census,
)

partitions = st.lists(st.integers(1, 6), max_size=6).map(Partition.from_parts)


@pytest.mark.parametrize("lam, want", [((3, 1), (2, 1, 1)), ((), ()), ((2, 2, 2), (3, 3)), ((1,), (1,))])
def test_conjugate_examples(lam, want):
    assert conjugate(lam) == Partition(want)


@pytest.mark.parametrize("nu, n", [(1, 3), (2, 4), (3, 2)])
def test_conjugate_of_free_shape(nu, n):
    assert conjugate((nu,) * n) == Partition((n,) * nu)


@given(partitions)
def test_conjugate_is_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert conjugate(lam).size == lam.size


def test_partition_validation():
    with pytest.raises(OutOfRange):
        Partition((1, 2))
    with pytest.raises(OutOfRange):
        Partition((2, 0))
    assert Partition.from_parts([0, 1, 3]) == Partition((3, 1))
    assert Partition((3, 1)).part(1) == 3 and Partition((3, 1)).part(5) == 0


def test_gaussian_binomial_examples():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(3, 1, 2) == 7
    assert all(gaussian_binomial(n, 0, q) == 1 for n in range(6) for q in (2, 3, 4))
    with pytest.raises(OutOfRange):
        gaussian_binomial(2, 3, 2)
    with pytest.raises(OutOfRange):
        gaussian_binomial(2, 1, 1)


@given(st.integers(0, 12), st.integers(0, 12), st.sampled_from([2, 3, 4, 5, 7, 8, 9]))
def test_gaussian_bounds(n, k, q):
    if k > n:
        n, k = k, n
    g = gaussian_binomial(n, k, q)
    low = q ** (k * (n - k))
    assert low <= g <= 4 * low


def _z4_squared_by_shape():
    subs = all_submodules(2, 2, 2)
    return Counter(shape_of_set(2, 2, M) for M in subs)


def test_count_by_shape_z4_squared():
    oracle = _z4_squared_by_shape()
    assert oracle[(2,)] == 6 and oracle[(1,)] == 3
    assert count_submodules_of_shape((2, 2), (2,), 2) == 6
    assert count_submodules_of_shape((2, 2), (1,), 2) == 3
    for mu, c in oracle.items():
        assert count_submodules_of_shape((2, 2), mu, 2) == c


@given(partitions)
def test_count_of_full_shape_is_one(lam):
    assert count_submodules_of_shape(lam, lam, 3) == 1


def test_shape_not_dominated():
    with pytest.raises(ShapeNotDominated):
        count_submodules_of_shape((2, 1), (3,), 2)
    with pytest.raises(ShapeNotDominated):
        count_submodules_of_shape((2,), (1, 1), 2)


def test_count_of_rank():
    assert count_submodules_of_rank((2, 2), 0, 2, 2) == 1
    assert count_submodules_of_rank((2, 2), 1, 2, 2) == 9 == 6 + 3
    with pytest.raises(OutOfRange):
        count_submodules_of_rank((2, 2), 3, 2, 2)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("n", range(0, 7))
def test_beta_nu1_is_gaussian(q, n):
    for k in range(n + 1):
        assert beta(q, 1, k, n) == gaussian_binomial(n, k, q)


def test_beta_against_set_oracle():
    subs = all_submodules(2, 2, 2)
    by_rank = Counter(nakayama_rank(2, 2, list(M)) for M in subs)
    assert by_rank[1] == 9 == beta(2, 2, 1, 2)
    assert all(beta(2, 2, k, 2) == by_rank[k] for k in range(3))


@pytest.mark.parametrize("q, nu, n", [(2, 2, 3), (3, 2, 3), (2, 3, 4), (2, 1, 5)])
def test_beta_equals_count_of_rank_on_free_shape(q, nu, n):
    for k in range(n + 1):
        assert beta(q, nu, k, n) == count_submodules_of_rank((nu,) * n, k, q, nu)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("nu", [1, 2, 3])
@pytest.mark.parametrize("n", range(1, 9))
def test_beta_bounds(q, nu, n):
    for k in range(0, n // 2 + 1):
        b = beta(q, nu, k, n)
        assert beta_lower_bound(q, nu, k, n) <= b <= beta_upper_bound(q, nu, k, n)


def test_shape_of_module_examples(z4):
    assert shape_of_module(Matrix(z4, [[2, 0], [0, 2]])) == Partition((1, 1))
    R = ChainRing(3, 3)
    assert shape_of_module(Matrix.identity(R, 4).submatrix([0, 1])) == Partition((3, 3))
    assert cardinality_log_q((3, 3)) == 6


@pytest.mark.parametrize("p, nu, n", [(2, 3, 3), (3, 2, 3)])
def test_shape_matches_set_oracle_and_row_ops(p, nu, n):
    R = ChainRing(p, nu)
    rnd = random.Random(p)
    for _ in range(25):
        rows = [[R.mul_pi_power(R.random(rnd), rnd.randint(0, nu)) for _ in range(n)] for _ in range(rnd.randint(1, 3))]
        M = Matrix(R, rows, n)
        lam = shape_of_module(M)
        assert lam.parts == shape_of_set(p, nu, span(R.modulus, rows))
        # row operations: add a multiple of row 0 to the others and scale by units
        cs = [rnd.randrange(R.modulus) for _ in rows]
        ops = [rows[0]] + [[R.add(a, R.mul(c, b)) for a, b in zip(r, rows[0])] for c, r in zip(cs, rows[1:])]
        units = [R.random_unit(rnd) for _ in ops]
        ops = [[R.mul(u, x) for x in r] for u, r in zip(units, ops)]
        assert shape_of_module(Matrix(R, ops, n)) == lam


def test_enumerator_small_examples(z4):
    assert sum(1 for _ in enumerate_submodules(z4, 2, rank_filter=1)) == 9
    zero = list(enumerate_submodules(ChainRing(3, 2), 2, rank_filter=0))
    assert len(zero) == 1 and zero[0].nrows == 0
    assert sum(1 for _ in enumerate_submodules(ChainRing(2, 1), 3, rank_filter=1)) == 7


@pytest.mark.parametrize("p, nu, n", [(2, 2, 2), (2, 3, 2), (2, 1, 3), (3, 1, 2), (3, 2, 2), (2, 2, 3), (2, 1, 4)])
def test_enumerator_against_set_oracle(p, nu, n):
    R = ChainRing(p, nu)
    oracle = all_submodules(p, nu, n)
    got = [span(R.modulus, M.rows or [(0,) * n]) for M in enumerate_submodules(R, n)]
    assert len(got) == len(set(got)) == len(oracle)
    assert set(got) == oracle


@pytest.mark.parametrize("p, nu, n", [(2, 2, 3), (3, 2, 2), (2, 3, 3), (5, 1, 3)])
def test_census_matches_formulas(p, nu, n):
    R = ChainRing(p, nu)
    census = submodule_census(R, n)
    for mu, c in census.items():
        assert count_submodules_of_shape((nu,) * n, mu, p) == c
    for k in range(n + 1):
        assert sum(c for mu, c in census.items() if len(mu) == k) == beta(p, nu, k, n)
    total = sum(count_submodules_of_rank((nu,) * n, k, p, nu) for k in range(n + 1))
    assert total == sum(census.values())


def test_enumerator_caps(z4, monkeypatch):
    with pytest.raises(TooLarge):
        list(enumerate_submodules(z4, 9))
    monkeypatch.setenv("RANKRING_MAX_ENUM", "10")
    assert candidate_count(z4, 2) > 10
    with pytest.raises(TooLarge):
        list(enumerate_submodules(z4, 2))
