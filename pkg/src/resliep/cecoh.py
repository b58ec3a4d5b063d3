"""Chevalley-Eilenberg cohomology with trivial coefficients.

Cochains of degree q are coefficient vectors over the lexicographically
ordered q-subsets of {1..n}; e^{i,j}(e_i ^ e_j) = 1.  The differential uses
d(psi)(g ^ h) = psi([g, h]) in degree 1 and, in general,

    d(phi)(g_0 ^ ... ^ g_q) = sum_{u<v} (-1)^(u+v+1) phi([g_u, g_v] ^ g_0 ^ ..^.. g_q)

which reproduces the degree-1 and degree-2 formulas of the construction
verbatim (it is the negative of the more common convention).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

from . import linalg
from .gfp import GF
from .liealg import LieAlgebra


@lru_cache(maxsize=None)
def subsets(n: int, q: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.combinations(range(1, n + 1), q))


@lru_cache(maxsize=None)
def subset_positions(n: int, q: int) -> dict[tuple[int, ...], int]:
    return {s: k for k, s in enumerate(subsets(n, q))}


def cochain_basis(L: LieAlgebra | int, q: int) -> tuple[tuple[int, ...], ...]:
    n = L if isinstance(L, int) else L.n
    if not 0 <= q <= n:
        raise ValueError(f"cochain degree {q} out of range 0..{n}")
    return subsets(n, q)


def subset_rank(subset, n: int) -> int:
    """1-based lexicographic position of a sorted subset among those of its size."""
    return subset_positions(n, len(subset))[tuple(subset)] + 1


@dataclass
class Cochain:
    q: int
    coeffs: np.ndarray

    def terms(self, n: int) -> list[tuple[tuple[int, ...], int]]:
        return [(s, int(c)) for s, c in zip(subsets(n, self.q), self.coeffs) if c]


def differential_matrix(L: LieAlgebra, q: int) -> np.ndarray:
    """Matrix of d^q : C^q -> C^{q+1} (rows (q+1)-subsets, columns q-subsets)."""
    n, F = L.n, L.field
    if not 0 <= q < n:
        raise ValueError(f"differential degree {q} out of range 0..{n - 1}")
    rows, cols = subsets(n, q + 1), subset_positions(n, q)
    D = np.zeros((len(rows), len(cols)), dtype=np.int64)
    if q == 0:
        return D
    sc: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for i, j, r, c in L.sc:
        sc.setdefault((i, j), []).append((r, c))
    for t_idx, T in enumerate(rows):
        for u, v in itertools.combinations(range(q + 1), 2):
            rest = T[:u] + T[u + 1 : v] + T[v + 1 :]
            for r, c in sc.get((T[u], T[v]), ()):
                if r in rest:
                    continue
                S = tuple(sorted(rest + (r,)))
                sign = (u + v + 1 + S.index(r)) % 2
                val = F.neg(c) if sign else c
                s_idx = cols[S]
                D[t_idx, s_idx] = F.add(D[t_idx, s_idx], val)
    return D


def two_form_matrix(F: GF, n: int, phi) -> np.ndarray:
    """Antisymmetric Phi with phi(g ^ h) = g^T Phi h."""
    Phi = np.zeros((n, n), dtype=np.int64)
    for (i, j), c in zip(subsets(n, 2), np.asarray(phi, dtype=np.int64)):
        Phi[i - 1, j - 1] = c
        Phi[j - 1, i - 1] = F.neg(c)
    return Phi


def two_form_coeffs(F: GF, n: int, Phi) -> np.ndarray:
    return np.array([Phi[i - 1, j - 1] for i, j in subsets(n, 2)], dtype=np.int64)


def eval_two_form(F: GF, Phi: np.ndarray, g, h):
    """phi(g ^ h), broadcasting over leading axes of g and h."""
    g = np.asarray(g, dtype=np.int64)
    h = np.asarray(h, dtype=np.int64)
    return F.dot(F.matmul(g[..., None, :], Phi)[..., 0, :], h)


@dataclass
class CohomologyReport:
    q: int
    dim_cocycles: int
    dim_coboundaries: int
    dim_H: int
    representatives: np.ndarray
    labels: list = field(default_factory=list)
    cocycles: np.ndarray | None = field(default=None, repr=False)
    coboundaries: np.ndarray | None = field(default=None, repr=False)

    def to_dict(self, F: GF | None = None) -> dict:
        def fmt(c):
            return F.coeffs(c) if F is not None and not F.is_prime_field else int(c)

        reps = [
            [[list(lbl) if isinstance(lbl, tuple) else lbl, fmt(c)] for lbl, c in zip(self.labels, rep) if c]
            for rep in self.representatives
        ]
        return {
            "q": self.q,
            "dim_cocycles": self.dim_cocycles,
            "dim_coboundaries": self.dim_coboundaries,
            "dim_H": self.dim_H,
            "representatives": reps,
        }


def quotient(F: GF, q: int, Z: np.ndarray, B: np.ndarray, labels) -> CohomologyReport:
    """Report for span(Z) / span(B); B must lie in span(Z)."""
    dz = Z.shape[0]
    db = linalg.rank(F, B)
    reps = linalg.complement_basis(F, Z, B)
    if reps.shape[0] != dz - db:
        raise ArithmeticError(f"coboundaries not contained in cocycles in degree {q}")
    return CohomologyReport(q, dz, db, dz - db, reps, list(labels), Z, B)


def cohomology(L: LieAlgebra, q: int) -> CohomologyReport:
    n, F = L.n, L.field
    if not 0 <= q <= n:
        raise ValueError(f"degree {q} out of range 0..{n}")
    dim_q = comb(n, q)
    if q < n:
        Z = linalg.nullspace(F, differential_matrix(L, q), dim_q)
    else:
        Z = np.eye(dim_q, dtype=np.int64)
    if q > 0:
        B = linalg.row_basis(F, differential_matrix(L, q - 1).T)
    else:
        B = np.zeros((0, dim_q), dtype=np.int64)
    return quotient(F, q, Z, B, subsets(n, q))


def _binom(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


def betti_closed_form(m: int, p: int, n_deg: int) -> int:
    """dim H^n(h_m) in characteristic p, valid for n <= m."""
    if n_deg > m:
        raise ValueError(f"closed form only covers degrees n <= m (got n={n_deg}, m={m})")
    if n_deg < 0:
        return 0
    total = _binom(2 * m, n_deg) - _binom(2 * m, n_deg - 2)
    total += sum(_binom(2 * m + 1, n_deg - 2 * i * p + 1) for i in range(1, (n_deg + 1) // (2 * p) + 1))
    total -= sum(_binom(2 * m + 1, n_deg - 2 * i * p - 1) for i in range(1, (n_deg - 1) // (2 * p) + 1))
    return total
