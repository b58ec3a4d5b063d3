"""JSON algebra and cocycle files.

Algebra file::

    {"field": {"p": 3, "k": 1, "modulus": [0, 1]},
     "dim": 3,
     "brackets": [{"i": 1, "j": 2, "v": [[3, [1]]]}],
     "pmap": [[[0], [0], [1]], ...]}          # optional, one row per basis vector

Field elements are written as base-p coefficient lists (constant term first);
plain integers are accepted on input.  Cocycle file::

    {"phi": [[1, 2, [1]], ...], "frob": [[3, [1]], ...]}
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .cecoh import subsets
from .gfp import GF, field_make
from .liealg import LieAlgebra
from .pstruct import PMap, RestrictedLieAlgebra
from .rescoh import RestrictedTwoCochain


class AlgebraFileError(ValueError):
    pass


def encode_elem(F: GF, a: int) -> list[int]:
    return F.coeffs(int(a))


def decode_elem(F: GF, raw) -> int:
    if isinstance(raw, bool):
        raise AlgebraFileError(f"field element expected, got {raw!r}")
    if isinstance(raw, int):
        return F.from_int(raw) if F.is_prime_field else F.from_coeffs([raw])
    if isinstance(raw, list) and all(isinstance(c, int) and not isinstance(c, bool) for c in raw):
        try:
            return F.from_coeffs(raw)
        except ValueError as exc:
            raise AlgebraFileError(str(exc)) from None
    if isinstance(raw, str):
        try:
            return F.parse(raw)
        except ValueError as exc:
            raise AlgebraFileError(str(exc)) from None
    raise AlgebraFileError(f"cannot read field element {raw!r}")


def field_to_dict(F: GF) -> dict:
    return {"p": F.p, "k": F.k, "modulus": list(F.modulus)}


def field_from_dict(d: dict) -> GF:
    try:
        return field_make(int(d["p"]), int(d.get("k", 1)), d.get("modulus"))
    except (KeyError, TypeError) as exc:
        raise AlgebraFileError(f"bad field entry {d!r}") from exc


def algebra_to_dict(A: LieAlgebra | RestrictedLieAlgebra) -> dict:
    R = A if isinstance(A, RestrictedLieAlgebra) else None
    L = R.algebra if R else A
    F = L.field
    grouped: dict[tuple[int, int], list] = {}
    for i, j, r, c in L.sc:
        grouped.setdefault((i, j), []).append([r, encode_elem(F, c)])
    out = {
        "field": field_to_dict(F),
        "dim": L.n,
        "brackets": [{"i": i, "j": j, "v": v} for (i, j), v in sorted(grouped.items())],
    }
    if R is not None:
        out["pmap"] = [[encode_elem(F, c) for c in row] for row in R.pmap.matrix]
    return out


def algebra_from_dict(d: dict) -> LieAlgebra | RestrictedLieAlgebra:
    if not isinstance(d, dict):
        raise AlgebraFileError("algebra file must hold a JSON object")
    for key in ("field", "dim", "brackets"):
        if key not in d:
            raise AlgebraFileError(f"missing key {key!r}")
    F = field_from_dict(d["field"])
    n = d["dim"]
    if not isinstance(n, int) or n < 1:
        raise AlgebraFileError(f"dim must be a positive integer, got {n!r}")
    brackets = {}
    for entry in d["brackets"]:
        try:
            i, j, terms = int(entry["i"]), int(entry["j"]), entry["v"]
        except (KeyError, TypeError, ValueError) as exc:
            raise AlgebraFileError(f"bad bracket entry {entry!r}") from exc
        if not 1 <= i < j <= n:
            raise AlgebraFileError(f"bracket indices must satisfy 1 <= i < j <= {n}: {entry!r}")
        v = np.zeros(n, dtype=np.int64)
        for r, c in terms:
            if not 1 <= int(r) <= n:
                raise AlgebraFileError(f"bracket component index {r} out of range")
            v[int(r) - 1] = F.add(v[int(r) - 1], decode_elem(F, c))
        if (i, j) in brackets:
            raise AlgebraFileError(f"bracket [e_{i}, e_{j}] given twice")
        brackets[(i, j)] = v
    L = LieAlgebra.from_brackets(F, n, brackets, name=str(d.get("name", "")))
    if "pmap" not in d:
        return L
    rows = d["pmap"]
    if len(rows) != n or any(len(row) != n for row in rows):
        raise AlgebraFileError(f"pmap must be {n} rows of {n} coefficients")
    P = PMap.from_rows([[decode_elem(F, c) for c in row] for row in rows])
    return RestrictedLieAlgebra(L, P)


def load_algebra(path: str | Path) -> LieAlgebra | RestrictedLieAlgebra:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise AlgebraFileError(f"cannot read algebra file {path}: {exc}") from exc
    return algebra_from_dict(data)


def cocycle_to_dict(F: GF, rc: RestrictedTwoCochain) -> dict:
    n = rc.n
    return {
        "phi": [[i, j, encode_elem(F, c)] for (i, j), c in zip(subsets(n, 2), rc.phi) if c],
        "frob": [[i + 1, encode_elem(F, c)] for i, c in enumerate(rc.frob) if c],
    }


def cocycle_from_dict(F: GF, n: int, d: dict) -> RestrictedTwoCochain:
    pos = {s: k for k, s in enumerate(subsets(n, 2))}
    phi = [0] * len(pos)
    frob = [0] * n
    try:
        for i, j, c in d.get("phi", []):
            i, j, c = int(i), int(j), decode_elem(F, c)
            if i > j:
                i, j, c = j, i, F.neg(c)
            if (i, j) not in pos:
                raise AlgebraFileError(f"phi index ({i}, {j}) invalid for dimension {n}")
            phi[pos[(i, j)]] = F.add(phi[pos[(i, j)]], c)
        for i, c in d.get("frob", []):
            if not 1 <= int(i) <= n:
                raise AlgebraFileError(f"frob index {i} invalid for dimension {n}")
            frob[int(i) - 1] = F.add(frob[int(i) - 1], decode_elem(F, c))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, AlgebraFileError):
            raise
        raise AlgebraFileError(f"malformed cocycle: {exc}") from exc
    return RestrictedTwoCochain.make(phi, frob)


def load_cocycle(F: GF, n: int, path: str | Path) -> RestrictedTwoCochain:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise AlgebraFileError(f"cannot read cocycle file {path}: {exc}") from exc
    return cocycle_from_dict(F, n, data)
