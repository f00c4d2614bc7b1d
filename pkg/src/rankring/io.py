"""JSON file formats for rings, codes and decoding instances.

Code file::

    {"ring": {"p": 2, "nu": 3}, "h": [1, 3, 6, 4, 1], "n": 4,
     "gens": [[[1, 0, 0, 0], ...], ...]}

Instance files add ``"H"`` (optional), ``"s"``, ``"r"`` and optionally
``"t"``.  Product-ring files replace ``ring``/``h`` by ``"eta"`` plus either
a combined ``"h"`` over Z/eta or ``"components": [{"p", "nu", "h"}, ...]``.
Extension elements are lists of m canonical coordinates.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from .codes import LinearCode, envelope
from .decoder import RsdInstance
from .errors import FormatError, RankRingError
from .extension import Extension
from .linalg import smith_normal_form
from .matrix import Matrix
from .pir import PirExtension, make_pir_extension, pir_extension_from_components, split
from .ring import ChainRing


def load_json(path) -> Dict[str, Any]:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise FormatError(str(path), f"cannot read file ({exc.strerror})")
    if not text.strip():
        raise FormatError(str(path), "file is empty")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(str(path), f"invalid JSON at line {exc.lineno}: {exc.msg}")
    if not isinstance(obj, dict):
        raise FormatError(str(path), "top level must be a JSON object")
    return obj


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def _require(obj: dict, key: str, where: str = ""):
    name = f"{where}{key}"
    if key not in obj:
        raise FormatError(name, "missing required field")
    return obj[key]


def _int(value, name: str, minimum: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(name, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise FormatError(name, f"must be >= {minimum}, got {value}")
    return value


def parse_ring(obj: dict, where: str = "") -> ChainRing:
    ring = _require(obj, "ring", where)
    if not isinstance(ring, dict):
        raise FormatError(f"{where}ring", "expected an object with p and nu")
    p = _int(_require(ring, "p", f"{where}ring."), f"{where}ring.p", 2)
    nu = _int(_require(ring, "nu", f"{where}ring."), f"{where}ring.nu", 1)
    try:
        return ChainRing(p, nu)
    except RankRingError as exc:
        raise FormatError(f"{where}ring", str(exc))


def parse_extension(obj: dict, base: Optional[ChainRing] = None, where: str = "") -> Extension:
    base = base if base is not None else parse_ring(obj, where)
    h = _require(obj, "h", where)
    if not isinstance(h, list) or len(h) < 2:
        raise FormatError(f"{where}h", "expected a list of at least two coefficients")
    h = [_int(c, f"{where}h[{i}]") for i, c in enumerate(h)]
    try:
        return Extension(base, tuple(h))
    except RankRingError as exc:
        raise FormatError(f"{where}h", str(exc))


def _vector(ext: Extension, value, name: str, n: Optional[int] = None) -> tuple:
    if not isinstance(value, list):
        raise FormatError(name, "expected a list of extension elements")
    if n is not None and len(value) != n:
        raise FormatError(name, f"expected {n} entries, got {len(value)}")
    out = []
    for j, x in enumerate(value):
        try:
            out.append(ext.from_json(x))
        except (TypeError, ValueError) as exc:
            raise FormatError(f"{name}[{j}]", str(exc))
    return tuple(out)


def _matrix(ext: Extension, value, name: str, n: int) -> Matrix:
    if not isinstance(value, list) or not value:
        raise FormatError(name, "expected a non-empty list of rows")
    return Matrix(ext, [_vector(ext, row, f"{name}[{i}]", n) for i, row in enumerate(value)], n)


def parse_code(obj: dict, ext: Optional[Extension] = None) -> LinearCode:
    ext = ext if ext is not None else parse_extension(obj)
    n = _int(_require(obj, "n"), "n", 1)
    G = _matrix(ext, _require(obj, "gens"), "gens", n)
    return LinearCode(ext, G)


def code_to_json(code: LinearCode, extra: Optional[dict] = None) -> dict:
    ext = code.ext
    out = {
        "ring": {"p": ext.p, "nu": ext.nu},
        "h": list(ext.h),
        "n": code.n,
        "gens": code.gens.to_json(),
    }
    if extra:
        out.update(extra)
    return out


def verified_parity_check(code: LinearCode, H: Optional[Matrix]) -> Matrix:
    """Parity-check matrix of a free envelope of ``code``.

    Without ``H`` the dual of the computed envelope is returned.  A supplied
    ``H`` must annihilate the generators and be free of rank n - k(C); its
    kernel is then a free envelope of the code (envelopes are not unique).
    Otherwise :class:`FormatError` names the field.
    """
    if H is None:
        return envelope(code).parity_check()
    if H.ncols != code.n:
        raise FormatError("H", f"expected {code.n} columns, got {H.ncols}")
    if not (code.gens @ H.transpose()).is_zero():
        raise FormatError("H", "rows are not orthogonal to the code generators")
    want = code.n - code.rank
    snf = smith_normal_form(H, transforms=False)
    if H.nrows != want or snf.rank != want or not snf.is_free:
        raise FormatError("H", f"expected {want} rows generating a free module of rank {want}")
    return H


def parse_instance(obj: dict, ext: Optional[Extension] = None) -> Tuple[RsdInstance, Optional[LinearCode]]:
    ext = ext if ext is not None else parse_extension(obj)
    n = _int(_require(obj, "n"), "n", 1)
    code = parse_code(obj, ext) if "gens" in obj else None
    H = _matrix(ext, obj["H"], "H", n) if "H" in obj else None
    if code is not None:
        H = verified_parity_check(code, H)
    elif H is None:
        raise FormatError("H", "an instance needs either gens or H")
    s = _vector(ext, _require(obj, "s"), "s", H.nrows)
    r = _int(_require(obj, "r"), "r", 0)
    t = _int(obj["t"], "t", 0) if "t" in obj else None
    try:
        inst = RsdInstance(ext, H, s, r, t)
    except RankRingError as exc:
        raise FormatError("H" if "rows of H" in str(exc) else "r", str(exc))
    return inst, code


def instance_to_json(inst: RsdInstance, code: Optional[LinearCode] = None, extra: Optional[dict] = None) -> dict:
    ext = inst.ext
    out = {
        "ring": {"p": ext.p, "nu": ext.nu},
        "h": list(ext.h),
        "n": inst.n,
        "H": inst.H.to_json(),
        "s": [list(x) for x in inst.s],
        "r": inst.r,
    }
    if inst.t is not None:
        out["t"] = inst.t
    if code is not None:
        out["gens"] = code.gens.to_json()
    if extra:
        out.update(extra)
    return out


# ---------------------------------------------------------------------------
# product rings


def is_pir_file(obj: dict) -> bool:
    return "eta" in obj


def parse_pir_extension(obj: dict) -> PirExtension:
    eta = _int(_require(obj, "eta"), "eta", 2)
    try:
        if "components" in obj:
            comps = obj["components"]
            if not isinstance(comps, list) or not comps:
                raise FormatError("components", "expected a non-empty list")
            hs = {}
            for i, c in enumerate(comps):
                if not isinstance(c, dict):
                    raise FormatError(f"components[{i}]", "expected an object")
                p = _int(_require(c, "p", f"components[{i}]."), f"components[{i}].p", 2)
                nu = _int(_require(c, "nu", f"components[{i}]."), f"components[{i}].nu", 1)
                h = _require(c, "h", f"components[{i}].")
                if not isinstance(h, list):
                    raise FormatError(f"components[{i}].h", "expected a list")
                hs[p ** nu] = [_int(x, f"components[{i}].h") for x in h]
            return pir_extension_from_components(eta, hs)
        h = _require(obj, "h")
        if not isinstance(h, list) or len(h) < 2:
            raise FormatError("h", "expected a list of at least two coefficients")
        return make_pir_extension(eta, [_int(c, f"h[{i}]") for i, c in enumerate(h)])
    except FormatError:
        raise
    except RankRingError as exc:
        raise FormatError("components" if "components" in obj else "h", str(exc))


def _pir_vector(pext: PirExtension, value, name: str, n: Optional[int] = None) -> tuple:
    if not isinstance(value, list):
        raise FormatError(name, "expected a list")
    if n is not None and len(value) != n:
        raise FormatError(name, f"expected {n} entries, got {len(value)}")
    out = []
    for j, x in enumerate(value):
        if not isinstance(x, list) or len(x) != pext.m or any(
            isinstance(c, bool) or not isinstance(c, int) or not 0 <= c < pext.eta for c in x
        ):
            raise FormatError(f"{name}[{j}]", f"expected {pext.m} integers in [0, {pext.eta})")
        out.append(tuple(x))
    return tuple(out)


def parse_pir_instance(obj: dict):
    """Returns ``(pext, component_instances)``.

    ``r`` is either a list with the exact rank of each component error or
    a single bound, in which case each component searches ranks 0..r.
    """
    pext = parse_pir_extension(obj)
    n = _int(_require(obj, "n"), "n", 1)
    r_raw = _require(obj, "r")
    if isinstance(r_raw, list):
        if len(r_raw) != pext.pir.rho:
            raise FormatError("r", f"expected one rank per component ({pext.pir.rho})")
        ranks = [(_int(x, f"r[{i}]", 0), None) for i, x in enumerate(r_raw)]
    else:
        # a single r bounds every component rank: search radii 0..r
        r = _int(r_raw, "r", 0)
        ranks = [(0, r)] * pext.pir.rho
    gens = [_pir_vector(pext, row, f"gens[{i}]", n) for i, row in enumerate(obj["gens"])] if "gens" in obj else None
    Hc = [_pir_vector(pext, row, f"H[{i}]", n) for i, row in enumerate(obj["H"])] if "H" in obj else None
    if gens is None and Hc is None:
        raise FormatError("H", "an instance needs either gens or H")
    nrows = len(Hc) if Hc is not None else None
    s = _pir_vector(pext, _require(obj, "s"), "s", nrows)
    insts = []
    Hparts = split(pext.pir, Hc) if Hc is not None else [None] * pext.pir.rho
    gparts = split(pext.pir, gens) if gens is not None else [None] * pext.pir.rho
    sparts = split(pext.pir, s)
    for j, ext in enumerate(pext.components):
        H = Matrix(ext, Hparts[j], n) if Hparts[j] is not None else None
        if gparts[j] is not None:
            H = verified_parity_check(LinearCode(ext, Matrix(ext, gparts[j], n)), H)
        if len(sparts[j]) != H.nrows:
            raise FormatError("s", f"expected {H.nrows} entries")
        try:
            insts.append(RsdInstance(ext, H, tuple(sparts[j]), *ranks[j]))
        except RankRingError as exc:
            raise FormatError("H", f"component {j + 1}: {exc}")
    return pext, insts
