"""Reproduction of the worked examples shipped as JSON fixtures.

Each group loads its fixture, recomputes every quantity from scratch and
compares with the stored expectation.  A fixture that fails to load (for
example a defining polynomial that is no longer irreducible) is reported as
a failed check rather than an exception.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Dict, List, Optional

from . import polyfp
from .codes import (
    LinearCode,
    correction_capability,
    envelope,
    min_rank_distance,
    project_code,
    socle,
    syndrome,
)
from .decoder import DecoderParams, decode
from .errors import RankRingError
from .io import load_json, parse_code, parse_extension, parse_instance, parse_pir_extension, parse_ring
from .linalg import in_row_module, rank, vector_rank
from .matrix import Matrix

GROUPS = ("extension", "crt", "rank", "zero-divisor", "distance", "decode")

FIXTURES = {
    "extension": "extension_z8_m4.json",
    "crt": "crt_z40_m4.json",
    "rank": "rank_z4_diag.json",
    "zero-divisor": "zero_divisor_z4_m5.json",
    "distance": "code_z8_m4_n4.json",
    "decode": "instance_z8_m4_n4_r1.json",
}


@dataclass
class Check:
    group: str
    name: str
    expected: object
    computed: object
    ok: bool

    def to_json(self) -> dict:
        return {"group": self.group, "name": self.name, "expected": _plain(self.expected),
                "computed": _plain(self.computed), "ok": self.ok}


def _plain(x):
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def default_fixture_dir() -> Path:
    return Path(str(resources.files("rankring") / "fixtures"))


def _eq(group, name, expected, computed) -> Check:
    return Check(group, name, expected, computed, _plain(expected) == _plain(computed))


def _vec(v):
    return [list(x) for x in v]


def check_extension(obj) -> List[Check]:
    g = "extension"
    exp = obj["expected"]
    ring = parse_ring(obj)
    residue = [c % ring.p for c in obj["h"]]
    out = [_eq(g, "residue of h", exp["residue_h"], residue),
           _eq(g, "residue of h irreducible over F_p", exp["irreducible"], polyfp.is_irreducible(residue, ring.p))]
    S = parse_extension(obj)
    out.append(_eq(g, "a^4 reduced mod h", exp["a_to_the_4"], list(S.power(S.gen, 4))))
    return out


def check_crt(obj) -> List[Check]:
    g = "crt"
    exp = obj["expected"]
    pext = parse_pir_extension(obj)
    idem = {str(c.modulus): e for c, e in zip(pext.pir.components, pext.pir.idempotents)}
    want = {k: v for k, v in exp["idempotents"].items()}
    out = [_eq(g, "idempotents by component modulus", want, idem)]
    out.append(_eq(g, "combined h over Z/eta", exp["combined_h"], list(pext.combined_h)))
    return out


def check_rank(obj) -> List[Check]:
    g = "rank"
    exp = obj["expected"]
    R = parse_ring(obj)
    A = Matrix(R, obj["A"])
    return [_eq(g, "rank of A", exp["rank_A"], rank(A)),
            _eq(g, "rank of 2A", exp["rank_2A"], rank(A.scale(2)))]


def check_zero_divisor(obj) -> List[Check]:
    g = "zero-divisor"
    exp = obj["expected"]
    S = parse_extension(obj)
    code = parse_code(obj, S)
    e = tuple(S.from_json(x) for x in obj["e"])
    two_e = tuple(S.scalar_mul(2, x) for x in e)
    extended = Matrix(S, list(code.gens.rows) + [e], code.n)
    return [_eq(g, "rank of e", exp["rank_e"], vector_rank(S, e)),
            _eq(g, "2e", exp["two_e"], _vec(two_e)),
            _eq(g, "rank of 2e", exp["rank_2e"], vector_rank(S, two_e)),
            _eq(g, "2e lies in the code extended by y = e", exp["two_e_in_extended_code"], in_row_module(extended, two_e))]


def check_distance(obj) -> List[Check]:
    g = "distance"
    exp = obj["expected"]
    C = parse_code(obj)
    S = C.ext
    E = envelope(C)
    given_env = LinearCode(S, Matrix(S, [[S.from_json(x) for x in r] for r in obj["envelope_gens"]], C.n))
    soc_given = LinearCode(S, given_env.gens.map(lambda x: S.mul_pi_power(x, S.nu - 1)))
    proj = project_code(E)
    proj_given = project_code(given_env)
    d_proj = min_rank_distance(C, "socle-projection")
    d_brute = min_rank_distance(C, "brute")
    return [
        _eq(g, "rank k(C)", exp["rank"], C.rank),
        _eq(g, "C is free", exp["free"], C.is_free),
        _eq(g, "shape over S", exp["shape"], list(C.shape.parts)),
        _eq(g, "log2 |C|", exp["log2_size"], C.log_p_size),
        _eq(g, "envelope is free of rank k", True, E.is_free and E.rank == C.rank),
        _eq(g, "envelope contains C", True, all(E.contains(r) for r in C.gens.rows)),
        _eq(g, "socle equals <4 g1, 4 g2>", True, socle(C).same_module(soc_given)),
        _eq(g, "projection of the envelope equals <psi(g1), psi(g2)>", True, proj.same_module(proj_given)),
        _eq(g, "psi(g1), psi(g2)", exp["residue_envelope"],
            [_vec([S.residue(x) for x in r]) for r in given_env.gens.rows]),
        _eq(g, "log2 |psi(E(C))|", exp["log2_projection_size"], proj.log_p_size),
        _eq(g, "d(C) by socle projection", exp["min_distance"], d_proj),
        _eq(g, "d(C) by brute force", exp["min_distance"], d_brute),
        _eq(g, "correction capability", exp["correction_capability"], correction_capability(d_proj)),
    ]


def check_decode(obj) -> List[Check]:
    g = "decode"
    exp = obj["expected"]
    inst, code = parse_instance(obj)
    S = inst.ext
    y = tuple(S.from_json(x) for x in obj["y"])
    s = syndrome(S, y, inst.H)
    rep = decode(inst, DecoderParams(algorithm=2, seed=0))
    cw = tuple(S.sub(a, b) for a, b in zip(y, rep.error))
    return [
        _eq(g, "syndrome y H^T", obj["s"], _vec(s)),
        _eq(g, "algorithm 2 error (r = 1)", exp["error"], _vec(rep.error)),
        _eq(g, "rank of recovered error", 1, vector_rank(S, rep.error)),
        _eq(g, "transmitted codeword y - e", exp["codeword"], _vec(cw)),
        _eq(g, "codeword has zero syndrome", True, all(S.is_zero(x) for x in syndrome(S, cw, inst.H))),
    ]


CHECKS: Dict[str, Callable] = {
    "extension": check_extension,
    "crt": check_crt,
    "rank": check_rank,
    "zero-divisor": check_zero_divisor,
    "distance": check_distance,
    "decode": check_decode,
}


def run_checks(only: Optional[List[str]] = None, fixture_dir=None) -> List[Check]:
    fixture_dir = Path(fixture_dir) if fixture_dir is not None else default_fixture_dir()
    groups = only or list(GROUPS)
    out: List[Check] = []
    for grp in groups:
        path = fixture_dir / FIXTURES[grp]
        try:
            obj = load_json(path)
            out.extend(CHECKS[grp](obj))
        except (RankRingError, KeyError, TypeError, ValueError) as exc:
            out.append(Check(grp, f"load and evaluate {path.name}", "success", f"{type(exc).__name__}: {exc}", False))
    return out
