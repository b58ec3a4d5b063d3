"""Restricted cohomology in degrees 1 and 2 with trivial coefficients.

A restricted 2-cochain (phi, omega) is stored as ``RestrictedTwoCochain(phi,
frob)`` with omega = tilde(phi) + sum_i frob_i ebar^i, where tilde(phi) is the
phi-compatible map vanishing on the basis and ebar^i(sum a_j e_j) = a_i^p.
Coordinates are phi (C(n,2) entries) followed by frob (n entries).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Callable

import numpy as np

from . import linalg
from .cecoh import (
    CohomologyReport,
    cohomology,
    differential_matrix,
    eval_two_form,
    quotient,
    subsets,
    two_form_matrix,
)
from .gfp import GF
from .liealg import LieAlgebra, ad, bracket, left_normed
from .pstruct import PMap, RestrictedLieAlgebra, pmap_eval

MAX_TILDE_PRIME = 13


@dataclass(frozen=True)
class RestrictedTwoCochain:
    phi: tuple[int, ...]
    frob: tuple[int, ...]

    @classmethod
    def make(cls, phi, frob) -> "RestrictedTwoCochain":
        return cls(tuple(int(c) for c in phi), tuple(int(c) for c in frob))

    @classmethod
    def from_coords(cls, n: int, coords) -> "RestrictedTwoCochain":
        coords = np.asarray(coords, dtype=np.int64)
        if coords.shape != (comb(n, 2) + n,):
            raise ValueError(f"expected {comb(n, 2) + n} coordinates, got {coords.shape}")
        return cls.make(coords[: comb(n, 2)], coords[comb(n, 2):])

    @classmethod
    def zero(cls, n: int) -> "RestrictedTwoCochain":
        return cls((0,) * comb(n, 2), (0,) * n)

    @classmethod
    def basis_pair(cls, n: int, s: int, t: int) -> "RestrictedTwoCochain":
        """(e^{s,t}, tilde e^{s,t})."""
        phi = [0] * comb(n, 2)
        phi[subsets(n, 2).index((s, t))] = 1
        return cls(tuple(phi), (0,) * n)

    @classmethod
    def frobenius_basis(cls, n: int, i: int) -> "RestrictedTwoCochain":
        """(0, ebar^i)."""
        frob = [0] * n
        frob[i - 1] = 1
        return cls((0,) * comb(n, 2), tuple(frob))

    @property
    def n(self) -> int:
        return len(self.frob)

    def coords(self) -> np.ndarray:
        return np.array(self.phi + self.frob, dtype=np.int64)


@dataclass
class RestrictedThreeCochainData:
    zeta: np.ndarray
    eta_on_pairs: np.ndarray  # eta[i, j] = eta(e_{i+1}, e_{j+1})


def restricted_labels(n: int) -> list:
    return [tuple(s) for s in subsets(n, 2)] + [f"ebar{i}" for i in range(1, n + 1)]


# -- phi-compatible maps -------------------------------------------------------


def compatibility_correction(L: LieAlgebra, Phi: np.ndarray, g, h):
    """sum over (g_1..g_p), g_1 = g, g_2 = h, g_i in {g, h} of
    phi([g_1, ..., g_{p-1}] ^ g_p) / #(g)."""
    F = L.field
    p = F.p
    g = np.asarray(g, dtype=np.int64)
    h = np.asarray(h, dtype=np.int64)
    if p == 2:
        return eval_two_form(F, Phi, g, h)
    if p > MAX_TILDE_PRIME:
        raise ValueError(f"2^(p-2) enumeration refused for p = {p} > {MAX_TILDE_PRIME}")
    gh = bracket(L, g, h)
    total = np.zeros(np.broadcast_shapes(g.shape, h.shape)[:-1], dtype=np.int64)
    for tail in itertools.product((0, 1), repeat=p - 2):
        # tail entries 0 -> g, 1 -> h for positions 3..p
        inner = gh
        for choice in tail[:-1]:
            inner = bracket(L, inner, g if choice == 0 else h)
        last = g if tail[-1] == 0 else h
        n_g = 1 + tail.count(0)
        term = eval_two_form(F, Phi, inner, last)
        total = F.add(total, F.mul(F.inv(n_g % p), term))
    return total


def omega_eval(L: LieAlgebra, P: PMap, rc: RestrictedTwoCochain, g):
    """omega(g) for the cochain (phi, tilde(phi) + sum frob_i ebar^i), by folding
    the compatibility recursion over the expansion of g."""
    F = L.field
    Phi = two_form_matrix(F, L.n, rc.phi)
    frob = np.array(rc.frob, dtype=np.int64)
    g = np.asarray(g, dtype=np.int64)
    partial = np.zeros_like(g)
    value = np.zeros(g.shape[:-1], dtype=np.int64)
    for i in range(L.n):
        a = g[..., i]
        if not np.any(a):
            continue
        y = np.zeros_like(g)
        y[..., i] = a
        value = F.add(value, F.mul(F.frob(a), frob[i]))
        if np.any(partial):
            value = F.add(value, compatibility_correction(L, Phi, partial, y))
        partial = F.add(partial, y)
    return value


def tilde_eval(L: LieAlgebra, P: PMap, phi, g):
    """tilde(phi)(g): the phi-compatible map that vanishes on every e_i."""
    rc = RestrictedTwoCochain.make(phi, (0,) * L.n)
    return omega_eval(L, P, rc, g)


def compat_check(
    L: LieAlgebra,
    P: PMap,
    phi,
    omega: RestrictedTwoCochain | Callable,
    exhaustive: bool | None = None,
    samples: int = 1000,
    rng: np.random.Generator | None = None,
) -> bool:
    """Check omega(a g) = a^p omega(g) and the additivity recursion for phi.

    ``omega`` is a callable on vector stacks, or a RestrictedTwoCochain standing
    for tilde(phi) + sum frob_i ebar^i.  Exhaustive over all pairs when
    |F|^(2n) <= 2^18 unless told otherwise.
    """
    F, n = L.field, L.n
    Phi = two_form_matrix(F, n, phi)
    if isinstance(omega, RestrictedTwoCochain):
        rc = RestrictedTwoCochain.make(phi, omega.frob)
        omega_fn = lambda v: omega_eval(L, P, rc, v)  # noqa: E731
    else:
        omega_fn = omega
    if exhaustive is None:
        exhaustive = F.q ** (2 * n) <= 1 << 18
    if exhaustive:
        V = linalg.all_vectors(F, n)
        w = np.asarray(omega_fn(V), dtype=np.int64)
        a = np.arange(F.q, dtype=np.int64)
        scaled = F.mul(a[:, None, None], V[None, :, :])
        w_scaled = np.asarray(omega_fn(scaled.reshape(-1, n)), dtype=np.int64).reshape(F.q, -1)
        if not np.array_equal(w_scaled, F.mul(F.frob(a)[:, None], w[None, :])):
            return False
        idx = linalg.vector_index
        for gi, g in enumerate(V):
            s = idx(F, F.add(g[None, :], V))
            rhs = F.add(F.add(w[gi], w), compatibility_correction(L, Phi, g[None, :], V))
            if not np.array_equal(w[s], rhs):
                return False
        return True
    rng = np.random.default_rng(0) if rng is None else rng
    G = rng.integers(0, F.q, size=(samples, n))
    H = rng.integers(0, F.q, size=(samples, n))
    a = rng.integers(0, F.q, size=samples)
    wG, wH = omega_fn(G), omega_fn(H)
    if not np.array_equal(omega_fn(F.mul(a[:, None], G)), F.mul(F.frob(a), wG)):
        return False
    rhs = F.add(F.add(wG, wH), compatibility_correction(L, Phi, G, H))
    return bool(np.array_equal(omega_fn(F.add(G, H)), rhs))


# -- differentials -------------------------------------------------------------


def d1_star(L: LieAlgebra, P: PMap, psi) -> RestrictedTwoCochain:
    """(d psi, ind^1 psi) with frob coordinates psi(e_i^[p])."""
    F = L.field
    psi = np.asarray(psi, dtype=np.int64)
    phi = F.matmul(differential_matrix(L, 1), psi)
    # ind^1(psi)(e_i) - tilde(d psi)(e_i) = psi(e_i^[p]) - 0
    frob = F.matmul(P.matrix, psi)
    return RestrictedTwoCochain.make(phi, frob)


def d1_star_matrix(L: LieAlgebra, P: PMap) -> np.ndarray:
    return np.vstack([differential_matrix(L, 1), P.matrix])


def ind2_eval(L: LieAlgebra, P: PMap, phi, g, h):
    """ind^2(phi, omega)(g, h) = phi(g ^ h^[p]) - phi([g, h, ..., h] ^ h), p-1 copies of h."""
    F = L.field
    Phi = two_form_matrix(F, L.n, phi)
    h = np.asarray(h, dtype=np.int64)
    inner = np.asarray(g, dtype=np.int64)
    for _ in range(F.p - 1):
        inner = bracket(L, inner, h)
    return F.sub(eval_two_form(F, Phi, g, pmap_eval(L, P, h)), eval_two_form(F, Phi, inner, h))


def ind2_on_pairs(L: LieAlgebra, P: PMap, phi) -> RestrictedThreeCochainData:
    F, n = L.field, L.n
    phi = np.asarray(phi, dtype=np.int64)
    zeta = F.matmul(differential_matrix(L, 2), phi) if n > 2 else np.zeros(0, dtype=np.int64)
    return RestrictedThreeCochainData(zeta, _eta_matrix(L, P, phi))


def _eta_matrix(L: LieAlgebra, P: PMap, phi) -> np.ndarray:
    """eta[i, j] = phi(e_i ^ e_j^[p]) - phi([e_i, e_j, ..., e_j] ^ e_j) via ad matrices."""
    F, n, p = L.field, L.n, L.field.p
    Phi = two_form_matrix(F, n, phi)
    E = np.eye(n, dtype=np.int64)
    # [x, e_j] = -ad(e_j) x, so [x, e_j, ..., e_j] = (-ad e_j)^(p-1) x
    A = F.neg(ad(L, E))
    Ak = np.broadcast_to(np.eye(n, dtype=np.int64), (n, n, n))
    for _ in range(p - 1):
        Ak = F.matmul(A, Ak)
    term1 = F.matmul(Phi, P.matrix.T)  # [i, j] = phi(e_i ^ e_j^[p])
    # inner[j, i, :] = [e_i, e_j, ..., e_j]
    inner = np.swapaxes(Ak, -1, -2)
    term2 = eval_two_form(F, Phi, inner, E[:, None, :]).T
    return F.sub(term1, term2)


def d2_star_matrix(L: LieAlgebra, P: PMap) -> np.ndarray:
    """Linear map (phi, frob) -> (d^2 phi, eta on basis pairs); frob columns are zero."""
    n = L.n
    c2 = comb(n, 2)
    blocks = []
    if n > 2:
        blocks.append(np.hstack([differential_matrix(L, 2), np.zeros((comb(n, 3), n), dtype=np.int64)]))
    cols = []
    for k in range(c2):
        unit = np.zeros(c2, dtype=np.int64)
        unit[k] = 1
        cols.append(_eta_matrix(L, P, unit).reshape(-1))
    eta = np.array(cols, dtype=np.int64).T.reshape(n * n, c2)
    blocks.append(np.hstack([eta, np.zeros((n * n, n), dtype=np.int64)]))
    return np.vstack(blocks)


def restricted_cohomology(L: LieAlgebra, P: PMap, q: int) -> CohomologyReport:
    F, n = L.field, L.n
    if q == 1:
        Z = linalg.nullspace(F, d1_star_matrix(L, P), n)
        B = np.zeros((0, n), dtype=np.int64)
        return quotient(F, 1, Z, B, subsets(n, 1))
    if q == 2:
        Z = linalg.nullspace(F, d2_star_matrix(L, P), comb(n, 2) + n)
        B = linalg.row_basis(F, d1_star_matrix(L, P).T)
        return quotient(F, 2, Z, B, restricted_labels(n))
    raise ValueError(f"restricted cohomology is only computed in degrees 1 and 2, not {q}")


def heisenberg_h2_star_basis(m: int) -> list[tuple[str, RestrictedTwoCochain]]:
    """The cocycles whose classes give the H^2_* basis of h_m^lambda (m >= 2)."""
    n = 2 * m + 1
    out = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            for s, t in ((i, j), (m + i, m + j), (i, m + j), (j, m + i)):
                out.append((f"Hst:{s},{t}", RestrictedTwoCochain.basis_pair(n, min(s, t), max(s, t))))
    for i in range(1, m):
        out.append((f"Hst:{i},{m + i}", RestrictedTwoCochain.basis_pair(n, i, m + i)))
    for i in range(1, n + 1):
        out.append((f"Hi:{i}", RestrictedTwoCochain.frobenius_basis(n, i)))
    return out


# -- Delta and the exact sequences ----------------------------------------------


def is_cocycle(L: LieAlgebra, phi) -> bool:
    if L.n < 3:
        return True
    return not L.field.matmul(differential_matrix(L, 2), np.asarray(phi, dtype=np.int64)).any()


def delta_eval(L: LieAlgebra, P: PMap, phi, g, h):
    """Delta_phi(g)(h) = phi(h ^ g^[p]) - phi([h, g, ..., g] ^ g)."""
    F = L.field
    Phi = two_form_matrix(F, L.n, phi)
    g = np.asarray(g, dtype=np.int64)
    h = np.asarray(h, dtype=np.int64)
    nested = left_normed(L, h, *([g] * (F.p - 1)))
    return F.sub(eval_two_form(F, Phi, h, pmap_eval(L, P, g)), eval_two_form(F, Phi, nested, g))


def delta_map(L: LieAlgebra, P: PMap, phi) -> np.ndarray:
    """D[j, h] = Delta_phi(e_j)(e_h) for a 2-cocycle phi."""
    if not is_cocycle(L, phi):
        raise ValueError("Delta is only defined on 2-cocycles")
    n = L.n
    E = np.eye(n, dtype=np.int64)
    return delta_eval(L, P, phi, E[:, None, :], E[None, :, :])


@dataclass
class MapReport:
    name: str
    matrix: np.ndarray
    rank: int

    def to_dict(self):
        return {"name": self.name, "rank": self.rank, "shape": list(self.matrix.shape)}


@dataclass
class SequenceReport:
    dims: dict
    maps: list[MapReport]
    exact_at: dict
    compositions_zero: dict
    delta_zero: bool
    ses_exact: bool | None
    exact: bool = field(init=False)

    def __post_init__(self):
        self.exact = all(self.exact_at.values()) and all(self.compositions_zero.values())

    def to_dict(self) -> dict:
        return {
            "dims": self.dims,
            "maps": [m.to_dict() for m in self.maps],
            "exact_at": self.exact_at,
            "compositions_zero": self.compositions_zero,
            "delta_zero": self.delta_zero,
            "ses_exact": self.ses_exact,
            "exact": self.exact,
        }


def _quotient_coords(F: GF, v, reps: np.ndarray, B: np.ndarray) -> np.ndarray:
    basis = np.vstack([reps, B]) if B.size else reps
    c = linalg.solve_in_span(F, basis, v)
    if c is None:
        raise ArithmeticError("vector is not a cocycle")
    return c[: reps.shape[0]]


def _map_matrix(F: GF, images, reps: np.ndarray, B: np.ndarray, dim_src: int) -> np.ndarray:
    cols = [_quotient_coords(F, v, reps, B) for v in images]
    return np.array(cols, dtype=np.int64).T.reshape(reps.shape[0], dim_src)


def verify_sequences(L: LieAlgebra, P: PMap) -> SequenceReport:
    """Matrices and rank-based exactness of
    0 -> H^1_* -> H^1 -> Hom_Fr(g, F) -> H^2_* -> H^2 -> Hom_Fr(g, H^1)."""
    F, n = L.field, L.n
    c2 = comb(n, 2)
    H1s = restricted_cohomology(L, P, 1)
    H1 = cohomology(L, 1)
    H2s = restricted_cohomology(L, P, 2)
    H2 = cohomology(L, 2)
    empty_n = np.zeros((0, n), dtype=np.int64)

    # H^1_* -> H^1: inclusion of cocycles
    f1 = _map_matrix(F, H1s.representatives, H1.representatives, empty_n, H1s.dim_H)
    # H^1 -> Hom_Fr(g, F): psi -> (psi(e_i^[p]))_i
    f2 = np.array([F.matmul(P.matrix, psi) for psi in H1.representatives], dtype=np.int64).T.reshape(n, H1.dim_H)
    # Hom_Fr(g, F) -> H^2_*: omega -> class of (0, omega)
    unit_frob = [np.concatenate([np.zeros(c2, dtype=np.int64), np.eye(n, dtype=np.int64)[i]]) for i in range(n)]
    f3 = _map_matrix(F, unit_frob, H2s.representatives, H2s.coboundaries, n)
    # H^2_* -> H^2: (phi, omega) -> phi
    f4 = _map_matrix(F, [r[:c2] for r in H2s.representatives], H2.representatives, H2.coboundaries, H2s.dim_H)
    # Delta: H^2 -> Hom_Fr(g, H^1), in coordinates Delta_phi(e_j) in C^1 (B^1 = 0)
    delta_cols = []
    for phi in H2.representatives:
        D = delta_map(L, P, phi)
        for row in D:
            if linalg.solve_in_span(F, H1.cocycles, row) is None:
                raise ArithmeticError("Delta image is not a 1-cocycle")
        delta_cols.append(D.reshape(-1))
    f5 = np.array(delta_cols, dtype=np.int64).T.reshape(n * n, H2.dim_H)

    maps = [
        MapReport("H1*->H1", f1, linalg.rank(F, f1)),
        MapReport("H1->HomFr", f2, linalg.rank(F, f2)),
        MapReport("HomFr->H2*", f3, linalg.rank(F, f3)),
        MapReport("H2*->H2", f4, linalg.rank(F, f4)),
        MapReport("Delta", f5, linalg.rank(F, f5)),
    ]
    r = [m.rank for m in maps]
    dims = {"H1*": H1s.dim_H, "H1": H1.dim_H, "HomFr": n, "H2*": H2s.dim_H, "H2": H2.dim_H, "HomFr(g,H1)": n * H1.dim_H}
    exact_at = {
        "H1*": r[0] == dims["H1*"],
        "H1": r[0] + r[1] == dims["H1"],
        "HomFr": r[1] + r[2] == dims["HomFr"],
        "H2*": r[2] + r[3] == dims["H2*"],
        "H2": r[3] + r[4] == dims["H2"],
    }
    comps = {
        "H1": not F.matmul(f2, f1).any() if f1.size and f2.size else True,
        "HomFr": not F.matmul(f3, f2).any() if f2.size and f3.size else True,
        "H2*": not F.matmul(f4, f3).any() if f3.size and f4.size else True,
        "H2": not F.matmul(f5, f4).any() if f4.size and f5.size else True,
    }
    delta_zero = r[4] == 0
    ses = None
    if delta_zero:
        ses = r[1] == 0 and r[2] == n and r[3] == dims["H2"] and dims["H2*"] == n + dims["H2"]
    return SequenceReport(dims, maps, exact_at, comps, delta_zero, ses)


def check_d2_d1_vanishes(R: RestrictedLieAlgebra, psi, G=None, H=None) -> bool:
    """ind^2(d psi, ind^1 psi)(g, h) == 0 and d^2 d^1 psi == 0 on the given vector stacks
    (all pairs of F^n when none are given)."""
    L, P, F = R.algebra, R.pmap, R.field
    rc = d1_star(L, P, psi)
    if L.n > 2 and F.matmul(differential_matrix(L, 2), np.array(rc.phi)).any():
        return False
    if G is None:
        G = linalg.all_vectors(F, L.n)
    if H is None:
        H = linalg.all_vectors(F, L.n)
    G = np.asarray(G, dtype=np.int64)
    H = np.asarray(H, dtype=np.int64)
    Phi = two_form_matrix(F, L.n, rc.phi)
    HP = pmap_eval(L, P, H)
    # ind^2 is linear in g: tabulate it on e_1..e_n for every h, then the
    # value at every (g, h) pair is one matrix product
    E = np.eye(L.n, dtype=np.int64)
    inner = np.broadcast_to(E[None, :, :], (len(H), L.n, L.n))
    for _ in range(F.p - 1):
        inner = bracket(L, inner, H[:, None, :])
    V = F.sub(eval_two_form(F, Phi, E[None, :, :], HP[:, None, :]), eval_two_form(F, Phi, inner, H[:, None, :]))
    return not F.matmul(G, V.T).any()
