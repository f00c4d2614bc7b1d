"""Planted rank-syndrome-decoding instances."""

from __future__ import annotations

import random as _random
from dataclasses import dataclass
from typing import List, Optional, Sequence

from . import polyfp
from .codes import LinearCode, random_error_planted, random_free_code, syndrome
from .decoder import RsdInstance
from .extension import Extension
from .ring import ChainRing


def default_extension(p: int, nu: int, m: int) -> Extension:
    """Degree-m extension of Z/p^nu by the canonical lift of the first irreducible of degree m over F_p."""
    return Extension(ChainRing(p, nu), tuple(polyfp.first_irreducible(p, m)))


@dataclass(frozen=True)
class PlantedInstance:
    instance: RsdInstance
    code: LinearCode
    error: tuple
    support: List[tuple]
    coords: List[List[int]]
    seed: object


def generate_instance(
    ext: Extension, n: int, k: int, r: int, seed, shape: Optional[Sequence[int]] = None
) -> PlantedInstance:
    """Random free code with its parity-check matrix and a planted error of rank r."""
    rng = _random.Random(f"instance/{seed}")
    code = random_free_code(ext, n, k, rng.random())
    H = code.parity_check()
    e, f, X = random_error_planted(ext, n, r, rng, shape)
    s = syndrome(ext, e, H)
    inst = RsdInstance(ext, H, s, r)
    return PlantedInstance(inst, code, e, f, X, seed)
