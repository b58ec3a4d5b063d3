"""[p]-operators on Lie algebras and the restricted Heisenberg algebras h_m^lambda."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .gfp import GF
from .liealg import LieAlgebra, ad, ad_power, bracket, heisenberg


@dataclass(frozen=True)
class PMap:
    """images[i] = e_{i+1}^[p] as a tuple of coefficient tuples."""

    images: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows) -> "PMap":
        rows = np.asarray(rows, dtype=np.int64)
        return cls(tuple(tuple(int(c) for c in row) for row in rows))

    @cached_property
    def matrix(self) -> np.ndarray:
        M = np.array(self.images, dtype=np.int64).reshape(len(self.images), -1)
        M.setflags(write=False)
        return M


@dataclass(frozen=True)
class HeisenbergParams:
    m: int
    lam: tuple[int, ...]

    def __post_init__(self):
        if len(self.lam) != 2 * self.m + 1:
            raise ValueError(f"lambda must have {2 * self.m + 1} entries, got {len(self.lam)}")


@dataclass(frozen=True)
class RestrictedLieAlgebra:
    """A Lie algebra with a [p]-operator fixed by basis images.

    ``closed_form``, when present, is an independent formula for g^[p] that the
    tests compare against the generic :func:`pmap_eval`.
    """

    algebra: LieAlgebra
    pmap: PMap
    closed_form: Callable[[np.ndarray], np.ndarray] | None = field(default=None, compare=False)
    params: HeisenbergParams | None = field(default=None, compare=False)

    @property
    def field(self) -> GF:
        return self.algebra.field

    @property
    def n(self) -> int:
        return self.algebra.n

    def power(self, g) -> np.ndarray:
        return pmap_eval(self.algebra, self.pmap, g)


class PolyMatrix:
    """n x n matrix with entries in F[t], stored as coeffs[d] = coefficient of t^d.

    Leading axes of ``coeffs`` before (deg+1, n, n) are batch axes.
    """

    def __init__(self, F: GF, coeffs: np.ndarray):
        self.F = F
        self.coeffs = np.asarray(coeffs, dtype=np.int64)

    @property
    def degree(self) -> int:
        return self.coeffs.shape[-3] - 1

    def apply(self, V: np.ndarray) -> np.ndarray:
        """Multiply a polynomial vector V[..., d, :] by this matrix."""
        F = self.F
        D = V.shape[-2]
        out_shape = np.broadcast_shapes(V.shape[:-2], self.coeffs.shape[:-3]) + (D + self.degree, V.shape[-1])
        out = np.zeros(out_shape, dtype=np.int64)
        for d in range(self.degree + 1):
            term = F.matmul(self.coeffs[..., d : d + 1, :, :], V[..., :, :, None])[..., 0]
            out[..., d : d + D, :] = F.add(out[..., d : d + D, :], term)
        return out


def ad_poly(L: LieAlgebra, g, h) -> PolyMatrix:
    """ad(t g + h) = ad h + t ad g."""
    A0, A1 = np.broadcast_arrays(ad(L, h), ad(L, g))
    return PolyMatrix(L.field, np.stack([A0, A1], axis=-3))


def s_terms(L: LieAlgebra, g, h) -> np.ndarray:
    """s_1(g, h), ..., s_{p-1}(g, h) stacked on axis -2.

    i * s_i is the coefficient of t^{i-1} in (ad(t g + h))^{p-1}(g).
    """
    F = L.field
    p = F.p
    g = np.asarray(g, dtype=np.int64)
    h = np.asarray(h, dtype=np.int64)
    M = ad_poly(L, g, h)
    V = np.broadcast_to(g, np.broadcast_shapes(g.shape, h.shape))[..., None, :]
    for _ in range(p - 1):
        V = M.apply(V)
    inv_i = F.inv(np.arange(1, p, dtype=np.int64) % p)
    return F.mul(inv_i[:, None], V[..., : p - 1, :])


def pmap_eval(L: LieAlgebra, P: PMap, g) -> np.ndarray:
    """g^[p] from the basis images by folding the scaling and sum rules over the
    expansion g = a_1 e_1 + ... + a_n e_n, left to right."""
    F = L.field
    g = np.asarray(g, dtype=np.int64)
    if g.shape[-1] != L.n:
        raise ValueError("dimension mismatch")
    images = P.matrix
    partial = np.zeros_like(g)
    value = np.zeros_like(g)
    for i in range(L.n):
        a = g[..., i]
        if not np.any(a):
            continue
        y = np.zeros_like(g)
        y[..., i] = a
        value = F.add(value, F.mul(F.frob(a)[..., None], images[i]))
        if np.any(partial):
            value = F.add(value, F.sum(s_terms(L, partial, y), axis=-2))
        partial = F.add(partial, y)
    return value


@dataclass
class RestrictedCheck:
    ok: bool
    jacobson_ok: bool
    axiom1_ok: bool
    axiom2_ok: bool
    axiom3_ok: bool
    samples: int
    counterexample: str | None = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def verify_restricted(L: LieAlgebra, P: PMap, samples: int = 100, rng: np.random.Generator | None = None) -> RestrictedCheck:
    """Check Jacobson's condition on the basis, then the scaling, sum and ad rules on random data."""
    F, n, p = L.field, L.n, L.field.p
    rng = np.random.default_rng(0) if rng is None else rng
    E = np.eye(n, dtype=np.int64)
    images = P.matrix
    first: str | None = None

    jac = ad(L, images)
    adp = ad_power(L, E, p)
    bad = [i + 1 for i in range(n) if not np.array_equal(jac[i], adp[i])]
    jacobson_ok = not bad
    if bad:
        first = f"Jacobson condition fails at e_{bad[0]}: ad(e^[p]) != (ad e)^p"

    a = rng.integers(0, F.q, size=samples)
    G = rng.integers(0, F.q, size=(samples, n))
    H = rng.integers(0, F.q, size=(samples, n))
    PG = pmap_eval(L, P, G)

    lhs1 = pmap_eval(L, P, F.mul(a[:, None], G))
    rhs1 = F.mul(F.frob(a)[:, None], PG)
    bad1 = np.nonzero((lhs1 != rhs1).any(axis=1))[0]
    if bad1.size and first is None:
        first = f"scaling rule fails for a={int(a[bad1[0]])}, g={G[bad1[0]].tolist()}"

    lhs2 = pmap_eval(L, P, F.add(G, H))
    rhs2 = F.add(F.add(PG, pmap_eval(L, P, H)), F.sum(s_terms(L, G, H), axis=-2))
    bad2 = np.nonzero((lhs2 != rhs2).any(axis=1))[0]
    if bad2.size and first is None:
        first = f"sum rule fails for g={G[bad2[0]].tolist()}, h={H[bad2[0]].tolist()}"

    bad3 = np.nonzero((ad(L, PG) != ad_power(L, G, p)).any(axis=(1, 2)))[0]
    if bad3.size and first is None:
        first = f"ad rule fails for g={G[bad3[0]].tolist()}"

    ok = jacobson_ok and not (bad1.size or bad2.size or bad3.size)
    return RestrictedCheck(ok, jacobson_ok, not bad1.size, not bad2.size, not bad3.size, samples, first)


def heisenberg_closed_form(F: GF, params: HeisenbergParams) -> Callable[[np.ndarray], np.ndarray]:
    """g^[p] = (sum a_i^p lam_i [+ sum a_j a_{m+j} if p = 2]) e_{2m+1}."""
    m = params.m
    n = 2 * m + 1
    lam = np.array(params.lam, dtype=np.int64)

    def evaluate(g):
        g = np.asarray(g, dtype=np.int64)
        coeff = F.dot(F.frob(g), lam)
        if F.p == 2:
            coeff = F.add(coeff, F.dot(g[..., :m], g[..., m : 2 * m]))
        out = np.zeros(g.shape, dtype=np.int64)
        out[..., n - 1] = coeff
        return out

    return evaluate


def heisenberg_restricted(F: GF, params: HeisenbergParams | int, lam: Sequence[int] | None = None) -> RestrictedLieAlgebra:
    """h_m^lambda with e_i^[p] = lam_i e_{2m+1}.

    Accepts either ``HeisenbergParams`` or ``(m, lam)``.
    """
    if not isinstance(params, HeisenbergParams):
        params = HeisenbergParams(int(params), tuple(int(x) for x in lam))
    if any(not 0 <= int(x) < F.q for x in params.lam):
        raise ValueError(f"lambda entries must be field codes in [0, {F.q}): {params.lam}")
    L = heisenberg(F, params.m)
    n = L.n
    images = np.zeros((n, n), dtype=np.int64)
    images[:, n - 1] = params.lam
    return RestrictedLieAlgebra(L, PMap.from_rows(images), heisenberg_closed_form(F, params), params)


def change_basis(R: RestrictedLieAlgebra, M) -> RestrictedLieAlgebra:
    """Rewrite R in the basis f_i = sum_j M[i, j] e_j (rows of M).

    Brackets and [p]-images of the f_i are computed in R and re-expressed in
    f-coordinates.
    """
    F, L = R.field, R.algebra
    M = np.asarray(M, dtype=np.int64)
    Minv = linalg.inverse(F, M)
    n = L.n
    # coordinates c of v in the f-basis solve c M = v
    to_f = lambda v: F.matmul(v, Minv)  # noqa: E731
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            brackets[(i + 1, j + 1)] = to_f(bracket(L, M[i], M[j]))
    L2 = LieAlgebra.from_brackets(F, n, brackets, name=L.name)
    images = to_f(pmap_eval(L, R.pmap, M))
    return RestrictedLieAlgebra(L2, PMap.from_rows(images))


def pmap_table(R: RestrictedLieAlgebra) -> np.ndarray:
    """g^[p] for every g in F^n, indexed as in :func:`linalg.all_vectors`."""
    return pmap_eval(R.algebra, R.pmap, linalg.all_vectors(R.field, R.n))
