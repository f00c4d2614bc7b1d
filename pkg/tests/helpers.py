"""Shared test helpers for planted decoding instances."""

from __future__ import annotations

from rankring.decoder import build_system_alg1, build_system_alg2, error_from_alg1, error_from_alg2
from rankring.linalg import complete_to_free, solve
from rankring.matrix import Matrix


def forced_system(planted, algorithm: int, u: int):
    """System built from a free module guaranteed to contain the planted support (or row space)."""
    inst = planted.instance
    ext = inst.ext
    if algorithm == 1:
        W = Matrix(ext.base, [list(f) for f in planted.support], ext.m) if planted.support else Matrix(ext.base, [], ext.m)
        basis = [tuple(r) for r in complete_to_free(W, u).rows]
        A, b = build_system_alg1(ext, inst.H, inst.s, basis)
        return solve(A, b), lambda x: error_from_alg1(ext, basis, x, inst.n)
    W = Matrix(ext.base, planted.coords, inst.n) if planted.coords else Matrix(ext.base, [], inst.n)
    F = [list(r) for r in complete_to_free(W, u).rows]
    A, b = build_system_alg2(ext, inst.H, inst.s, F)
    return solve(A, b), lambda x: error_from_alg2(ext, F, x, inst.n)
