from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest

from helpers import forced_system
from rankring.codes import syndrome
from rankring.decoder import (
    DecoderParams,
    RsdInstance,
    approx_expected_trials,
    build_system_alg1,
    build_system_alg2,
    decode,
    default_u,
    error_from_alg2,
    expected_trials,
    operation_count,
    pir_decode,
    sample_free_submodule,
)
from rankring.errors import DimensionMismatch, InvalidParams, NotFree, OutOfRange, TrialsExhausted
from rankring.extension import matrix_representation
from rankring.instances import default_extension, generate_instance
from rankring.io import load_json, parse_instance
from rankring.linalg import smith_normal_form, vector_rank
from rankring.matrix import Matrix
from rankring.pir import pir_extension_from_components, pir_rank
from rankring.reference_checks import default_fixture_dir

PAPER_E = [[2, 0, 6, 0], [0, 0, 0, 0], [4, 0, 4, 0], [6, 0, 2, 0]]


@pytest.fixture(scope="module")
def example_instance():
    inst, _ = parse_instance(load_json(default_fixture_dir() / "instance_z8_m4_n4_r1.json"))
    return inst


@pytest.fixture(scope="module")
def s225():
    return default_extension(2, 2, 5)


def strip_timing(report_json):
    return {k: v for k, v in report_json.items() if k != "elapsed"}


@pytest.mark.parametrize("algorithm", [1, 2])
def test_final_example(example_instance, algorithm):
    rep = decode(example_instance, DecoderParams(algorithm=algorithm, seed=0))
    assert [list(x) for x in rep.error] == PAPER_E
    assert rep.r == 1 and rep.trials >= 1


def test_zero_syndrome_rank_zero(example_instance):
    inst = RsdInstance(example_instance.ext, example_instance.H, ((0,) * 4, (0,) * 4), 0)
    rep = decode(inst)
    assert rep.error == ((0,) * 4,) * 4 and rep.trials == 0


def test_rank_zero_nonzero_syndrome(example_instance):
    inst = RsdInstance(example_instance.ext, example_instance.H, example_instance.s, 0)
    with pytest.raises(TrialsExhausted):
        decode(inst)


def test_instance_validation(example_instance):
    S = example_instance.ext
    bad_H = Matrix(S, [[S.scalar_mul(2, x) for x in r] for r in example_instance.H.rows])
    with pytest.raises(NotFree):
        RsdInstance(S, bad_H, example_instance.s, 1)
    with pytest.raises(InvalidParams):
        RsdInstance(S, example_instance.H, example_instance.s, 5)
    with pytest.raises(InvalidParams):
        RsdInstance(S, example_instance.H, example_instance.s, 2, t=1)
    with pytest.raises(DimensionMismatch):
        RsdInstance(S, example_instance.H, example_instance.s[:1], 1)


def test_params_validation(example_instance):
    with pytest.raises(InvalidParams):
        DecoderParams(algorithm=3)
    with pytest.raises(InvalidParams):
        decode(example_instance, DecoderParams(algorithm=2, u=0))


def test_system_alg1_identity_block(s8):
    H = Matrix(s8, [[s8.one]])
    basis = [tuple(int(i == j) for j in range(4)) for i in range(4)]
    A, b = build_system_alg1(s8, H, [s8.gen], basis)
    assert A == Matrix.identity(s8.base, 4)
    assert tuple(b) == s8.gen


def test_system_alg2_identity_gives_matrix_representation(s225):
    planted = generate_instance(s225, 5, 1, 2, seed=3)
    inst = planted.instance
    F = [[int(i == j) for j in range(5)] for i in range(5)]
    A, b = build_system_alg2(s225, inst.H, inst.s, F)
    assert A.shape == (5 * 4, 5 * 5)
    E = matrix_representation(s225, planted.error)
    x = [E.rows[c][i] for i in range(5) for c in range(5)]
    assert A.apply(x) == tuple(b)
    assert error_from_alg2(s225, F, x, 5) == planted.error


def test_system_shapes_and_planted_solution(s225):
    planted = generate_instance(s225, 5, 1, 2, seed=8)
    inst = planted.instance
    u = 3
    rnd = random.Random(0)
    f = sample_free_submodule(s225, u, rnd)
    A, _ = build_system_alg1(s225, inst.H, inst.s, f)
    assert A.shape == (5 * 4, 5 * u)
    # the planted support and coordinates solve the Algorithm 1 system exactly
    A, b = build_system_alg1(s225, inst.H, inst.s, planted.support)
    x = [planted.coords[i][j] for j in range(5) for i in range(2)]
    assert A.apply(x) == tuple(b)
    F = sample_free_submodule(s225, u, rnd, ambient="R^n", n=5)
    A, _ = build_system_alg2(s225, inst.H, inst.s, F)
    assert A.shape == (5 * 4, 5 * u)


@pytest.mark.parametrize("algorithm", [1, 2])
def test_forced_containment_solves(s225, algorithm):
    for seed in range(30):
        planted = generate_instance(s225, 5, 1, 1 + seed % 2, seed)
        u = default_u(algorithm, 5, 5, 1)
        out, to_error = forced_system(planted, algorithm, u)
        assert out.solvable
        e = to_error(out.particular)
        assert syndrome(s225, e, planted.instance.H) == planted.instance.s


def test_sample_free_submodule(s225):
    rnd = random.Random(1)
    assert sample_free_submodule(s225, 0, rnd) == []
    for _ in range(1000):
        u = rnd.randint(1, 5)
        f = sample_free_submodule(s225, u, rnd)
        snf = smith_normal_form(Matrix(s225.base, [list(x) for x in f], 5), transforms=False)
        assert snf.rank == u and snf.is_free
    F = sample_free_submodule(s225, 5, rnd, ambient="R^n", n=5)
    snf = smith_normal_form(Matrix(s225.base, F, 5), transforms=False)
    assert snf.rank == 5 and snf.is_free
    with pytest.raises(OutOfRange):
        sample_free_submodule(s225, 6, rnd)


@pytest.mark.parametrize("algorithm", [1, 2])
def test_planted_instances_postcondition(s225, algorithm):
    for seed in range(40):
        r = 1 + seed % 2
        planted = generate_instance(s225, 5, 1, r, seed)
        rep = decode(planted.instance, DecoderParams(algorithm=algorithm, seed=seed))
        assert syndrome(s225, rep.error, planted.instance.H) == planted.instance.s
        assert vector_rank(s225, rep.error) == r


def test_determinism_and_workers(s225):
    planted = generate_instance(s225, 5, 1, 2, seed=4)
    a = decode(planted.instance, DecoderParams(algorithm=2, seed=9))
    b = decode(planted.instance, DecoderParams(algorithm=2, seed=9))
    c = decode(planted.instance, DecoderParams(algorithm=2, seed=9, workers=2, batch=2))
    assert strip_timing(a.to_json()) == strip_timing(b.to_json()) == strip_timing(c.to_json())


def test_max_trials_exhausted(s225):
    planted = generate_instance(s225, 5, 1, 2, seed=4)
    with pytest.raises(TrialsExhausted) as info:
        decode(planted.instance, DecoderParams(algorithm=1, seed=1, max_trials=1, u=2))
    rep = info.value.report
    assert rep is not None and rep.trials <= 1


def test_solution_enumeration_fallback(s225):
    planted = generate_instance(s225, 5, 1, 1, seed=2)
    rep = decode(planted.instance, DecoderParams(algorithm=1, seed=2, solution_enumeration_cap=4096))
    assert syndrome(s225, rep.error, planted.instance.H) == planted.instance.s
    assert vector_rank(s225, rep.error) == 1


def test_radius_search(s225):
    planted = generate_instance(s225, 5, 1, 1, seed=6)
    inst = planted.instance
    wide = RsdInstance(s225, inst.H, inst.s, 1, t=2)
    rep = decode(wide, DecoderParams(seed=0))
    assert vector_rank(s225, rep.error) <= 2
    assert syndrome(s225, rep.error, inst.H) == inst.s


def test_expected_trials_examples():
    assert expected_trials(2, 2, 5, 5, 1, 1, 1, u=5) == 1
    assert approx_expected_trials(2, 2, 5, 5, 1, 1, 2) == 4
    assert expected_trials(2, 2, 5, 5, 1, 1, 2) == Fraction(527, 135)
    with pytest.raises(OutOfRange):
        expected_trials(2, 2, 5, 5, 1, 3, 2, u=2)
    with pytest.raises(OutOfRange):
        expected_trials(2, 2, 5, 5, 1, 1, 3)


def test_approximation_on_fields_uses_floor_when_divisible():
    # nu = 1 and n | mk: |R|^(r (m - u)) = q^(r mk/n)
    for m, n, k in [(4, 4, 2), (6, 3, 1), (8, 4, 1)]:
        assert approx_expected_trials(2, 1, m, n, k, 1, 1) == 2 ** (m * k // n)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("nu", [1, 2, 3])
def test_exact_vs_approx_within_bound_factor(q, nu):
    for algorithm in (1, 2):
        for m in range(2, 7):
            for n in range(2, 7):
                for k in range(1, n):
                    u = default_u(algorithm, m, n, k)
                    for r in range(1, u // 2 + 1):
                        exact = expected_trials(q, nu, m, n, k, r, algorithm)
                        approx = approx_expected_trials(q, nu, m, n, k, r, algorithm)
                        slack = 4 ** nu * comb(r + nu - 1, nu - 1)
                        assert Fraction(1, slack) <= exact / approx <= slack


def test_default_u_and_unknown_bound():
    for m in range(1, 8):
        for n in range(2, 8):
            for k in range(1, n):
                u = default_u(1, m, n, k)
                assert n * u <= m * (n - k)
                assert default_u(2, m, n, k) == n - k


def test_operation_count():
    ratio = expected_trials(2, 2, 5, 5, 1, 1, 2)
    assert operation_count(2, 2, 5, 5, 1, 1, 2) == 5 ** 3 * 4 ** 3 * ratio
    assert operation_count(2, 2, 5, 5, 1, 1, 1) > 0


def test_pir_decode_single_component(example_instance):
    P = pir_extension_from_components(8, {8: list(example_instance.ext.h)})
    rep = pir_decode(P, [example_instance], DecoderParams(seed=0))
    assert [list(x) for x in rep.error] == PAPER_E


def _planted_z12(seed, ranks):
    P = pir_extension_from_components(12, {4: [1, 1, 1], 3: [1, 0, 1]})
    insts, errors = [], []
    for ext, r in zip(P.components, ranks):
        planted = generate_instance(ext, 3, 1, r, seed)
        insts.append(planted.instance)
        errors.append(planted.error)
    return P, insts, errors


def test_pir_decode_planted_z12():
    for seed in range(5):
        P, insts, _ = _planted_z12(seed, [1, 2])
        rep = pir_decode(P, insts, DecoderParams(seed=seed))
        parts = P.split_vector(rep.error)
        for ext, inst, part in zip(P.components, insts, parts):
            assert syndrome(ext, part, inst.H) == inst.s
        assert pir_rank(P, rep.error) == 2


def test_pir_decode_zero_component():
    P, insts, _ = _planted_z12(1, [0, 1])
    rep = pir_decode(P, insts)
    zero_part = P.split_vector(rep.error)[0]
    assert all(not any(x) for x in zero_part)
    assert pir_rank(P, rep.error) == 1


def test_pir_decode_reports_component():
    P, insts, _ = _planted_z12(2, [1, 2])
    bad = RsdInstance(insts[1].ext, insts[1].H, insts[1].s, 0)
    with pytest.raises(TrialsExhausted) as info:
        pir_decode(P, [insts[0], bad])
    assert info.value.component == 2
    with pytest.raises(DimensionMismatch):
        pir_decode(P, insts[:1])
