"""Row reduction, rank, kernels and quotients over a :class:`~resliep.gfp.GF`.

Matrices are 2-d int64 arrays of field codes.  Pivoting always takes the
first row with a nonzero entry in the current column, so every output
(RREF, kernel basis, complement basis) is a deterministic function of the
input.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from .gfp import GF


def rref(F: GF, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = F.mul(F.inv(R[r, c]), R[r])
        others = np.nonzero(R[:, c])[0]
        others = others[others != r]
        if others.size:
            R[others] = F.sub(R[others], F.mul(R[others, c][:, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: GF, M) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def row_basis(F: GF, M) -> np.ndarray:
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return np.zeros((0, M.shape[-1] if M.ndim == 2 else 0), dtype=np.int64)
    R, piv = rref(F, M)
    return R[: len(piv)]


def nullspace(F: GF, M, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of {x : M x = 0}, one vector per free column."""
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2:
        raise ValueError("nullspace expects a 2-d matrix")
    n = M.shape[1] if ncols is None else ncols
    if M.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(F, M)
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for b, f in enumerate(free):
        basis[b, f] = 1
        for r, pc in enumerate(piv):
            basis[b, pc] = F.neg(R[r, f])
    return basis


def reduce_against(F: GF, v, R: np.ndarray, pivots: list[int]) -> np.ndarray:
    """Subtract multiples of the RREF rows R from v to clear its pivot columns."""
    v = np.array(v, dtype=np.int64, copy=True)
    for r, c in enumerate(pivots):
        if v[c]:
            v = F.sub(v, F.mul(v[c], R[r]))
    return v


def complement_basis(F: GF, Z, B) -> np.ndarray:
    """Vectors from span(Z) completing a basis of span(B) to one of span(Z) + span(B).

    Each Z row is reduced against the canonical RREF of span(B) before being
    tested, so the returned representatives are normal forms modulo B.
    """
    Z = np.asarray(Z, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    n = Z.shape[1] if Z.ndim == 2 else (B.shape[1] if B.ndim == 2 else 0)
    if B.size:
        RB, pB = rref(F, B)
        RB = RB[: len(pB)]
    else:
        RB, pB = np.zeros((0, n), dtype=np.int64), []
    span = RB.copy()
    reps = []
    for z in Z:
        z = reduce_against(F, z, RB, pB)
        if not z.any():
            continue
        if rank(F, np.vstack([span, z[None]])) > span.shape[0]:
            reps.append(z)
            span = np.vstack([span, z[None]])
    return np.array(reps, dtype=np.int64).reshape(len(reps), n)


def solve_in_span(F: GF, basis, v) -> np.ndarray | None:
    """Coefficients c with c @ basis = v, or None if v is not in the row span."""
    basis = np.asarray(basis, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    k = basis.shape[0]
    if k == 0:
        return np.zeros(0, dtype=np.int64) if not v.any() else None
    aug = np.hstack([basis.T, v[:, None]])
    R, piv = rref(F, aug)
    if k in piv:
        return None
    c = np.zeros(k, dtype=np.int64)
    for r, pc in enumerate(piv):
        c[pc] = R[r, k]
    return c


def det(F: GF, M) -> int:
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    R = M.copy()
    d = 1
    for c in range(n):
        nz = np.nonzero(R[c:, c])[0]
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            R[[c, piv]] = R[[piv, c]]
            d = int(F.neg(d))
        d = int(F.mul(d, R[c, c]))
        inv = F.inv(R[c, c])
        below = np.arange(c + 1, n)
        if below.size:
            f = F.mul(R[below, c], inv)
            R[below] = F.sub(R[below], F.mul(f[:, None], R[c][None, :]))
    return d


def det_batch(F: GF, M: np.ndarray) -> np.ndarray:
    """Leibniz determinant over a stack of n x n matrices (small n only)."""
    n = M.shape[-1]
    total = np.zeros(M.shape[:-2], dtype=np.int64)
    for perm in itertools.permutations(range(n)):
        term = np.ones(M.shape[:-2], dtype=np.int64)
        for i, j in enumerate(perm):
            term = F.mul(term, M[..., i, j])
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = F.neg(term) if inversions % 2 else term
        total = F.add(total, term)
    return total


def inverse(F: GF, M) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    R, piv = rref(F, np.hstack([M, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)):
        raise np.linalg.LinAlgError("singular matrix")
    return R[:, n:]


def gl_order(q: int, n: int) -> int:
    return math.prod(q**n - q**i for i in range(n))


def all_vectors(F: GF, n: int) -> np.ndarray:
    """Every vector of F^n, row index = sum_i v_i q^i."""
    codes = np.arange(F.q**n, dtype=np.int64)
    return (codes[:, None] // (F.q ** np.arange(n, dtype=np.int64))[None, :]) % F.q


def vector_index(F: GF, V: np.ndarray) -> np.ndarray:
    """Inverse of :func:`all_vectors` along the last axis."""
    n = V.shape[-1]
    return V @ (F.q ** np.arange(n, dtype=np.int64))


def invertible_matrices(F: GF, n: int, chunk: int = 1 << 18) -> np.ndarray:
    """All of GL_n(F) as an (N, n, n) array, in a fixed enumeration order."""
    total = F.q ** (n * n)
    out = []
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        mats = ((codes[:, None] // (F.q ** np.arange(n * n, dtype=np.int64))[None, :]) % F.q).reshape(-1, n, n)
        out.append(mats[det_batch(F, mats) != 0])
    return np.concatenate(out) if out else np.zeros((0, n, n), dtype=np.int64)
