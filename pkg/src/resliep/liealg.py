"""Lie algebras given by structure constants, with 1-based basis labels.

Vectors are int64 arrays of field codes of shape ``(..., n)``; ``bracket`` and
``ad`` broadcast over leading axes so whole families of vectors can be
processed at once.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from . import linalg
from .gfp import GF


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants ``sc`` hold ``(i, j, r, c)`` meaning [e_i, e_j] has
    coefficient ``c`` on e_r, for 1 <= i < j <= n.  Jacobi is not enforced here
    (see :func:`structure_report`)."""

    field: GF
    n: int
    sc: tuple[tuple[int, int, int, int], ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        for i, j, r, c in self.sc:
            if not (1 <= i < j <= self.n and 1 <= r <= self.n):
                raise ValueError(f"bad structure constant index {(i, j, r)} for dim {self.n}")
            if not 0 < c < self.field.q:
                raise ValueError(f"structure constant {c} is zero or not a field code")

    @classmethod
    def from_brackets(cls, F: GF, n: int, brackets: Mapping[tuple[int, int], Iterable[int]], name: str = ""):
        """Build from {(i, j): coefficient vector of [e_i, e_j]}; i > j entries are
        folded in by antisymmetry, i == j entries are rejected unless zero."""
        acc: dict[tuple[int, int], np.ndarray] = {}
        for (i, j), v in brackets.items():
            v = np.asarray(v, dtype=np.int64)
            if v.shape != (n,):
                raise ValueError(f"bracket [e_{i}, e_{j}] has wrong length")
            if i == j:
                if v.any():
                    raise ValueError(f"[e_{i}, e_{i}] must vanish")
                continue
            if i > j:
                i, j, v = j, i, F.neg(v)
            acc[(i, j)] = F.add(acc.get((i, j), np.zeros(n, dtype=np.int64)), v)
        sc = tuple(
            (i, j, r + 1, int(v[r]))
            for (i, j), v in sorted(acc.items())
            for r in range(n)
            if v[r]
        )
        return cls(F, n, sc, name)

    @cached_property
    def tensor(self) -> np.ndarray:
        """Dense C[i, j, r] (0-based) with C[j, i] = -C[i, j]."""
        F = self.field
        C = np.zeros((self.n, self.n, self.n), dtype=np.int64)
        for i, j, r, c in self.sc:
            C[i - 1, j - 1, r - 1] = c
            C[j - 1, i - 1, r - 1] = F.neg(c)
        C.setflags(write=False)
        return C

    def e(self, i: int) -> np.ndarray:
        """Basis vector e_i (1-based)."""
        if not 1 <= i <= self.n:
            raise IndexError(f"basis index {i} out of range 1..{self.n}")
        v = np.zeros(self.n, dtype=np.int64)
        v[i - 1] = 1
        return v

    def vector(self, coeffs) -> np.ndarray:
        v = np.asarray(coeffs, dtype=np.int64)
        if v.shape[-1] != self.n:
            raise ValueError(f"vector of length {v.shape[-1]} for algebra of dim {self.n}")
        return v


def _check(L: LieAlgebra, *vs):
    for v in vs:
        if np.shape(v)[-1] != L.n:
            raise ValueError(f"dimension mismatch: vector of length {np.shape(v)[-1]}, algebra dim {L.n}")


def bracket(L: LieAlgebra, x, y) -> np.ndarray:
    """[x, y], broadcasting over leading axes."""
    _check(L, x, y)
    F, C = L.field, L.tensor
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    n = L.n
    if F.is_prime_field:
        xy = x[..., :, None] * y[..., None, :]
        return (xy.reshape(xy.shape[:-2] + (n * n,)) @ C.reshape(n * n, n)) % F.p
    xy = F.mul(x[..., :, None], y[..., None, :])
    return F.sum(F.mul(xy[..., None], C), axis=(-3, -2))


def ad(L: LieAlgebra, x) -> np.ndarray:
    """Matrix M of ad x acting on column vectors: M @ y = [x, y]."""
    _check(L, x)
    F, C = L.field, L.tensor
    x = np.asarray(x, dtype=np.int64)
    if F.is_prime_field:
        return np.einsum("...i,ijr->...rj", x, C) % F.p
    return np.swapaxes(F.sum(F.mul(x[..., :, None, None], C), axis=-3), -1, -2)


def apply(F: GF, M, v) -> np.ndarray:
    """M @ v over F, broadcasting."""
    return F.matmul(M, np.asarray(v, dtype=np.int64)[..., None])[..., 0]


def ad_power(L: LieAlgebra, x, e: int) -> np.ndarray:
    if e < 1:
        raise ValueError("exponent must be >= 1")
    A = ad(L, x)
    out = A
    for _ in range(e - 1):
        out = L.field.matmul(A, out)
    return out


def left_normed(L: LieAlgebra, *xs) -> np.ndarray:
    """[x_1, x_2, ..., x_r] = [[...[x_1, x_2], ...], x_r]."""
    out = np.asarray(xs[0], dtype=np.int64)
    for x in xs[1:]:
        out = bracket(L, out, x)
    return out


def heisenberg(F: GF, m: int) -> LieAlgebra:
    """h_m: dimension 2m+1, [e_i, e_{m+i}] = e_{2m+1}."""
    if m < 1:
        raise ValueError(f"Heisenberg index m must be >= 1, got {m}")
    n = 2 * m + 1
    sc = tuple((i, m + i, n, 1) for i in range(1, m + 1))
    return LieAlgebra(F, n, sc, name=f"h_{m}")


def abelian(F: GF, n: int) -> LieAlgebra:
    return LieAlgebra(F, n, (), name=f"abelian_{n}")


def sl2(F: GF) -> LieAlgebra:
    """sl_2 in the basis (e, h, f): [e,h] = -2e, [e,f] = h, [h,f] = -2f."""
    two = F.from_int(2)
    return LieAlgebra.from_brackets(
        F, 3,
        {(1, 2): [F.neg(two), 0, 0], (1, 3): [0, 1, 0], (2, 3): [0, 0, F.neg(two)]},
        name="sl_2",
    )


def random_two_step(F: GF, n: int, n_central: int, rng: np.random.Generator) -> LieAlgebra:
    """Random algebra with brackets of e_1..e_d landing in span(e_{d+1}..e_n)."""
    d = n - n_central
    brackets = {}
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            v = np.zeros(n, dtype=np.int64)
            v[d:] = rng.integers(0, F.q, size=n_central)
            brackets[(i, j)] = v
    return LieAlgebra.from_brackets(F, n, brackets, name=f"two_step_{n}")


@dataclass
class StructureReport:
    jacobi_ok: bool
    center: np.ndarray
    derived: np.ndarray
    nilpotency_class: int | None
    jacobi_failure: tuple[int, int, int] | None = None

    def to_dict(self) -> dict:
        return {
            "jacobi_ok": self.jacobi_ok,
            "jacobi_failure": self.jacobi_failure,
            "center": self.center.tolist(),
            "derived": self.derived.tolist(),
            "dim_center": int(self.center.shape[0]),
            "dim_derived": int(self.derived.shape[0]),
            "nilpotency_class": self.nilpotency_class,
        }


def jacobiator(L: LieAlgebra) -> np.ndarray:
    """J[i, j, k] = [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] (0-based)."""
    F, C = L.field, L.tensor
    # T[i, j, k, r] = [e_i, [e_j, e_k]]_r = sum_s C[j, k, s] C[i, s, r]
    T = F.sum(F.mul(C[None, :, :, :, None], C[:, None, None, :, :]), axis=3)
    return F.add(F.add(T, T.transpose(1, 2, 0, 3)), T.transpose(2, 0, 1, 3))


def _bracket_span(L: LieAlgebra, S: np.ndarray) -> np.ndarray:
    """Row basis of [L, span S]."""
    F = L.field
    if S.shape[0] == 0:
        return S
    E = np.eye(L.n, dtype=np.int64)
    prods = bracket(L, E[:, None, :], S[None, :, :]).reshape(-1, L.n)
    return linalg.row_basis(F, prods)


def structure_report(L: LieAlgebra) -> StructureReport:
    F, C, n = L.field, L.tensor, L.n
    J = jacobiator(L)
    bad = np.argwhere(J.any(axis=-1))
    failure = tuple(int(i) + 1 for i in bad[0]) if bad.size else None
    # [x, e_j]_r = sum_i x_i C[i, j, r]; rows (j, r), columns i
    center = linalg.nullspace(F, C.transpose(1, 2, 0).reshape(n * n, n), n)
    derived = linalg.row_basis(F, C.reshape(n * n, n))
    cls: int | None = None
    S = np.eye(n, dtype=np.int64)
    for c in range(1, n + 2):
        S_next = _bracket_span(L, S)
        if S_next.shape[0] == 0:
            cls = c if n else 0
            break
        if S_next.shape[0] == S.shape[0]:
            break
        S = S_next
    return StructureReport(failure is None, center, derived, cls, failure)
