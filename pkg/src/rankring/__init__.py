"""Rank-metric codes and combinatorial rank syndrome decoding over finite chain rings."""

from __future__ import annotations

from .codes import (
    FieldCode,
    LinearCode,
    code_rank,
    correction_capability,
    envelope,
    is_free,
    lift_field_code,
    min_rank_distance,
    project_code,
    random_error,
    random_free_code,
    reduce_rd_instance,
    singleton_holds,
    socle,
    socle_to_field,
    syndrome,
)
from .decoder import (
    DecodeReport,
    DecoderParams,
    RsdInstance,
    approx_expected_trials,
    decode,
    expected_trials,
    operation_count,
    pir_decode,
)
from .errors import *  # noqa: F401,F403
from .extension import ExtElem, Extension, lift, make_extension, matrix_representation, psi
from .instances import default_extension, generate_instance
from .linalg import SmithForm, kernel_basis, rank, smith_normal_form, solve, vector_rank
from .matrix import Matrix
from .pir import PirCode, PirExtension, PirRing, decompose, make_pir_extension, phi_inverse, phi_j, pir_rank
from .ring import ChainRing, RingElem
from .shapes import (
    Partition,
    beta,
    beta_lower_bound,
    beta_upper_bound,
    count_submodules_of_shape,
    enumerate_submodules,
    gaussian_binomial,
    submodule_census,
)
