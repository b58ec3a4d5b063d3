"""Isomorphism classes of the restricted structures h_m^lambda.

``iso_check`` tests a candidate (A, k, mu) against the isomorphism conditions;
``find_iso`` searches all candidates; ``brute_force_algebra_iso`` is an
independent oracle that searches all invertible linear maps between two
restricted algebras and never looks at those conditions.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg
from .gfp import GF
from .liealg import LieAlgebra, bracket
from .pstruct import RestrictedLieAlgebra, pmap_table

MAX_CANDIDATES = 10**8
MAX_QUADRATIC_POINTS = 1 << 20


class InfeasibleSearch(ValueError):
    """An exhaustive enumeration exceeds its guard; no partial answer is given."""


@dataclass(frozen=True)
class IsoWitness:
    A: tuple[tuple[int, ...], ...]
    k: tuple[int, ...]
    mu: int

    @classmethod
    def make(cls, A, k, mu) -> "IsoWitness":
        A = np.asarray(A, dtype=np.int64)
        return cls(tuple(tuple(int(x) for x in row) for row in A), tuple(int(x) for x in k), int(mu))

    def matrix(self) -> np.ndarray:
        return np.array(self.A, dtype=np.int64)

    def full_matrix(self) -> np.ndarray:
        """Psi(e_i) = sum_j M[i, j] e_j on h_m (rows), i.e. [[A, k^T], [0, mu]]."""
        A = self.matrix()
        d = A.shape[0]
        M = np.zeros((d + 1, d + 1), dtype=np.int64)
        M[:d, :d] = A
        M[:d, d] = self.k
        M[d, d] = self.mu
        return M

    def to_dict(self) -> dict:
        return {"A": [list(r) for r in self.A], "k": list(self.k), "mu": self.mu}


def symplectic_form(m: int) -> np.ndarray:
    """J = [[0, I_m], [-I_m, 0]] with -1 encoded as the field code of -1 (set per field)."""
    J = np.zeros((2 * m, 2 * m), dtype=np.int64)
    J[:m, m:] = np.eye(m, dtype=np.int64)
    J[m:, :m] = -np.eye(m, dtype=np.int64)
    return J


def _J(F: GF, m: int) -> np.ndarray:
    J = symplectic_form(m)
    return np.where(J < 0, F.neg(1), J)


def _check_lambdas(m: int, *lams):
    for lam in lams:
        if len(lam) != 2 * m + 1:
            raise ValueError(f"lambda must have {2 * m + 1} entries, got {len(lam)}")


def quadratic_form(F: GF, m: int, lam, a):
    """a diag(lam_1..lam_2m) a^T + a_I a_II^T, broadcasting over rows of a."""
    lam = np.asarray(lam, dtype=np.int64)[: 2 * m]
    a = np.asarray(a, dtype=np.int64)
    return F.add(F.dot(F.mul(a, a), lam), F.dot(a[..., :m], a[..., m:]))


def iso_check(F: GF, m: int, lam: Sequence[int], lam2: Sequence[int], w: IsoWitness) -> bool:
    """Whether (A, k, mu) satisfies the isomorphism conditions for h_m^lam ~ h_m^lam2."""
    _check_lambdas(m, lam, lam2)
    A = w.matrix()
    k = np.array(w.k, dtype=np.int64)
    if A.shape != (2 * m, 2 * m) or k.shape != (2 * m,):
        raise ValueError("witness dimensions do not match m")
    if linalg.det(F, A) == 0:
        raise ValueError("witness matrix A is singular")
    lam = np.asarray(lam, dtype=np.int64)
    lam2 = np.asarray(lam2, dtype=np.int64)
    mu = w.mu
    J = _J(F, m)
    # similitude: A J A^T = mu J
    if not np.array_equal(F.matmul(F.matmul(A, J), A.T), F.mul(mu, J)):
        return False
    # central parameter: lam_{2m+1} = mu^(p-1) lam'_{2m+1}
    if lam[-1] != F.mul(F.pow(mu, F.p - 1), lam2[-1]):
        return False
    if F.p > 2:
        # remaining parameters: mu lam_{1..2m} = A^[p] lam'_{1..2m} + lam'_{2m+1} k^[p]
        rhs = F.add(F.matmul(F.frob(A), lam2[:-1]), F.mul(lam2[-1], F.frob(k)))
        return bool(np.array_equal(F.mul(mu, lam[:-1]), rhs))
    # p = 2: the quadratic forms must match at every a in F^{2m}
    if F.q ** (2 * m) > MAX_QUADRATIC_POINTS:
        raise InfeasibleSearch(f"quadratic form comparison needs {F.q}^{2 * m} evaluations")
    a = linalg.all_vectors(F, 2 * m)
    aA = F.matmul(a, A)
    lhs = F.mul(mu, quadratic_form(F, m, lam, a))
    ak = F.dot(a, k)
    rhs = F.add(quadratic_form(F, m, lam2, aA), F.mul(lam2[-1], F.mul(ak, ak)))
    return bool(np.array_equal(lhs, rhs))


@lru_cache(maxsize=None)
def _similitudes(F: GF, m: int) -> tuple[np.ndarray, np.ndarray]:
    """All A in GL_2m(F) with A J A^T = mu J, and the matching mu."""
    d = 2 * m
    count = linalg.gl_order(F.q, d) * F.q**d
    if count > MAX_CANDIDATES:
        raise InfeasibleSearch(f"|GL_{d}(F_{F.q})| * {F.q}^{d} = {count} candidates exceeds {MAX_CANDIDATES}")
    if F.q ** (d * d) > 1 << 24:
        raise InfeasibleSearch(f"enumerating {F.q}^{d * d} matrices is out of reach")
    mats = linalg.invertible_matrices(F, d)
    J = _J(F, m)
    G = F.matmul(F.matmul(mats, J), np.swapaxes(mats, -1, -2))
    mu = G[:, 0, m]
    ok = (G == F.mul(mu[:, None, None], J)).all(axis=(1, 2))
    return mats[ok], mu[ok]


def find_iso(F: GF, m: int, lam: Sequence[int], lam2: Sequence[int]) -> IsoWitness | None:
    """First (A, k) in enumeration order, with mu forced by A J A^T = mu J, that
    passes :func:`iso_check`; None if there is none."""
    _check_lambdas(m, lam, lam2)
    lam = np.asarray(lam, dtype=np.int64)
    lam2 = np.asarray(lam2, dtype=np.int64)
    mats, mus = _similitudes(F, m)
    ks = linalg.all_vectors(F, 2 * m)
    # the central-parameter condition does not involve k
    keep = lam[-1] == F.mul(F.pow(mus, F.p - 1), lam2[-1])
    mats, mus = mats[keep], mus[keep]
    if not len(mats):
        return None
    if F.p > 2:
        lhs = F.mul(mus[:, None], lam[None, :-1])  # (N, 2m)
        Alam = F.matmul(F.frob(mats), lam2[:-1])  # (N, 2m)
        kterm = F.mul(lam2[-1], F.frob(ks))  # (K, 2m)
        ok = (F.add(Alam[:, None, :], kterm[None, :, :]) == lhs[:, None, :]).all(axis=-1)
    else:
        if F.q ** (2 * m) > MAX_QUADRATIC_POINTS:
            raise InfeasibleSearch(f"quadratic form comparison needs {F.q}^{2 * m} evaluations")
        a = linalg.all_vectors(F, 2 * m)  # (P, 2m)
        lhs = F.mul(mus[:, None], quadratic_form(F, m, lam, a)[None, :])  # (N, P)
        aA = F.matmul(a[None, :, :], mats)  # (N, P, 2m)
        q2 = quadratic_form(F, m, lam2, aA)  # (N, P)
        ak = F.matmul(a, ks.T)  # (P, K)
        sq = F.mul(lam2[-1], F.mul(ak, ak)).T  # (K, P)
        ok = (F.add(q2[:, None, :], sq[None, :, :]) == lhs[:, None, :]).all(axis=-1)
    hits = np.argwhere(ok)
    if not len(hits):
        return None
    ai, ki = hits[0]
    w = IsoWitness.make(mats[ai], ks[ki], mus[ai])
    if not iso_check(F, m, lam, lam2, w):
        raise AssertionError(f"vectorised screen accepted a witness that iso_check rejects: {w}")
    return w


# -- brute-force oracle -----------------------------------------------------------


@lru_cache(maxsize=None)
def _lie_isomorphisms(L1: LieAlgebra, L2: LieAlgebra) -> np.ndarray:
    """All invertible M (rows = images of basis vectors) with
    M[e_i, e_j] = [M e_i, M e_j] for all basis pairs."""
    F, n = L1.field, L1.n
    mats = linalg.invertible_matrices(F, n)
    ok = np.ones(len(mats), dtype=bool)
    C1 = L1.tensor
    for i in range(n):
        for j in range(i + 1, n):
            lhs = F.matmul(C1[i, j][None, None, :], mats)[:, 0, :]
            rhs = bracket(L2, mats[:, i, :], mats[:, j, :])
            ok &= (lhs == rhs).all(axis=1)
            mats, ok = mats[ok], np.ones(int(ok.sum()), dtype=bool)
    return mats


@lru_cache(maxsize=None)
def _table(R: RestrictedLieAlgebra) -> np.ndarray:
    return pmap_table(R)


def brute_force_algebra_iso(R1: RestrictedLieAlgebra, R2: RestrictedLieAlgebra) -> bool:
    """Exists an invertible linear Psi with Psi[g,h] = [Psi g, Psi h] on basis pairs
    and Psi(g^[p]) = (Psi g)^[p] for every g in F^n?"""
    F = R1.field
    if R2.field != F or R1.n != R2.n:
        return False
    n = R1.n
    if n > 3 or F.q > 5:
        raise InfeasibleSearch(f"brute force limited to dim <= 3 over |F| <= 5 (got dim {n}, |F| = {F.q})")
    maps = _lie_isomorphisms(R1.algebra, R2.algebra)
    if not len(maps):
        return False
    V = linalg.all_vectors(F, n)
    T1, T2 = _table(R1), _table(R2)
    lhs = F.matmul(T1[None, :, :], maps)  # Psi(g^[p])
    images = F.matmul(V[None, :, :], maps)  # Psi(g)
    rhs = T2[linalg.vector_index(F, images)]
    return bool((lhs == rhs).all(axis=(1, 2)).any())


# -- orbits -----------------------------------------------------------------------


def order_key(lam: Sequence[int]) -> tuple[int, ...]:
    """Lexicographic order reading the central coordinate lam_{2m+1} first and
    lam_1 last, so that e_1^* precedes e_2^* (codes compared as integers)."""
    return tuple(reversed(lam))


def _from_full(M: np.ndarray) -> IsoWitness:
    d = M.shape[0] - 1
    return IsoWitness.make(M[:d, :d], M[:d, d], M[d, d])


def orbit_of(F: GF, m: int, seed: Sequence[int], free_mu: bool = False) -> dict[tuple[int, ...], IsoWitness]:
    """Every lambda isomorphic to ``seed``, each with the first witness
    (lambda -> seed) in enumeration order.

    The parameter conditions (their diagonal when p = 2) give lambda
    explicitly from (A, k, mu) and the target; the p = 2 candidates are then
    confirmed against the quadratic forms at every a.  With ``free_mu`` the
    multiplier is decoupled from the similitude condition; the returned witnesses then need not pass
    :func:`iso_check` and serve only :func:`mu_reading_discrepancies`.
    """
    _check_lambdas(m, seed)
    seed = np.asarray(seed, dtype=np.int64)
    d = 2 * m
    mats, mus = _similitudes(F, m)
    if free_mu:
        # diagnostic reading: any similitude A, paired with every nonzero mu
        units = np.arange(1, F.q, dtype=np.int64)
        mats = np.repeat(mats, len(units), axis=0)
        mus = np.tile(units, len(mats) // len(units))
    ks = linalg.all_vectors(F, d)
    N, K = len(mats), len(ks)
    inv_mu = F.inv(mus)
    x_last = F.mul(F.pow(mus, F.p - 1), seed[-1])  # (N,)
    if F.p > 2:
        head = F.add(F.matmul(F.frob(mats), seed[:-1])[:, None, :], F.mul(seed[-1], F.frob(ks))[None, :, :])
    else:
        rows = quadratic_form(F, m, seed, mats)  # Q_seed on each row of A: (N, 2m)
        head = F.add(rows[:, None, :], F.mul(seed[-1], F.mul(ks, ks))[None, :, :])
    head = F.mul(inv_mu[:, None, None], head)  # (N, K, 2m)
    lam = np.concatenate([head, np.broadcast_to(x_last[:, None, None], (N, K, 1))], axis=-1)
    if F.p == 2:
        ok = _quadratic_identity(F, m, lam, mats, ks, mus, seed)
    else:
        ok = np.ones((N, K), dtype=bool)
    flat = lam.reshape(N * K, d + 1)
    idx = linalg.vector_index(F, flat)
    valid = ok.reshape(-1)
    out: dict[tuple[int, ...], IsoWitness] = {}
    _, first = np.unique(np.where(valid, idx, -1), return_index=True)
    for f in sorted(first):
        if not valid[f]:
            continue
        ai, ki = divmod(int(f), K)
        out[tuple(int(c) for c in flat[f])] = IsoWitness.make(mats[ai], ks[ki], mus[ai])
    return out


def _quadratic_identity(F: GF, m: int, lam, mats, ks, mus, seed) -> np.ndarray:
    """Quadratic form identity for candidate lambdas lam[N, K] against the target ``seed``, for all a."""
    if F.q ** (2 * m) > MAX_QUADRATIC_POINTS:
        raise InfeasibleSearch(f"quadratic form comparison needs {F.q}^{2 * m} evaluations")
    a = linalg.all_vectors(F, 2 * m)  # (P, 2m)
    N, K = lam.shape[:2]
    # mu * Q_lam(a): Q_lam(a) = sum a_i^2 lam_i + a_I a_II
    sq = F.mul(a, a)  # (P, 2m)
    diag = F.matmul(lam[..., : 2 * m], sq.T)  # (N, K, P)
    cross = F.dot(a[:, :m], a[:, m:])  # (P,)
    lhs = F.mul(mus[:, None, None], F.add(diag, cross[None, None, :]))
    aA = F.matmul(a[None, :, :], mats)  # (N, P, 2m)
    q2 = quadratic_form(F, m, seed, aA)  # (N, P)
    ak = F.matmul(a, ks.T).T  # (K, P)
    rhs = F.add(q2[:, None, :], F.mul(seed[-1], F.mul(ak, ak))[None, :, :])
    return (lhs == rhs).all(axis=-1)


@dataclass
class Classification:
    m: int
    field: GF
    orbits: list[list[tuple[int, ...]]]
    transitive: bool
    witnesses: dict = None  # lambda -> IsoWitness(lambda -> orbit representative)

    @property
    def count(self) -> int:
        return len(self.orbits)

    @property
    def representatives(self) -> list[tuple[int, ...]]:
        return [orbit[0] for orbit in self.orbits]

    def to_dict(self, members: bool = False) -> dict:
        F = self.field
        fmt = (lambda v: [int(c) for c in v]) if F.is_prime_field else (lambda v: [F.coeffs(c) for c in v])
        out = []
        for orbit in self.orbits:
            entry = {"representative": fmt(orbit[0]), "size": len(orbit)}
            if members:
                entry["members"] = [fmt(x) for x in orbit]
            out.append(entry)
        return {"orbits": out, "count": self.count, "transitive": self.transitive}


def classify(F: GF, m: int, validate: bool = True) -> Classification:
    """Partition F^{2m+1} into isomorphism classes of h_m^lambda, seeding each
    orbit from the least lambda not yet classified."""
    _similitudes(F, m)  # trips the feasibility guard before any work
    n = 2 * m + 1
    lams = sorted((tuple(int(c) for c in v) for v in linalg.all_vectors(F, n)), key=order_key)
    owner: dict[tuple[int, ...], int] = {}
    witnesses: dict[tuple[int, ...], IsoWitness] = {}
    orbits: list[list[tuple[int, ...]]] = []
    disjoint = True
    for lam in lams:
        if lam in owner:
            continue
        orb = orbit_of(F, m, lam)
        if lam not in orb:
            disjoint = False
        for x, w in orb.items():
            if x in owner:
                disjoint = False
                continue
            owner[x] = len(orbits)
            witnesses[x] = w
        orbits.append(sorted((x for x in orb if owner.get(x) == len(orbits)), key=order_key))
    transitive = disjoint and (validate_partition(F, m, orbits, witnesses) if validate else True)
    return Classification(m, F, orbits, transitive, witnesses)


def validate_partition(F: GF, m: int, orbits, witnesses) -> bool:
    """Reflexive, symmetric and transitive on the computed orbits.

    For every ordered pair (a, b) in an orbit, the witness a -> rep -> b built
    from the stored witnesses must pass :func:`iso_check`; this covers both
    directions of every pair.  Representatives of distinct orbits must be
    non-isomorphic by :func:`find_iso` in both directions.
    """
    for orbit in orbits:
        full = {x: witnesses[x].full_matrix() for x in orbit}
        inv = {x: linalg.inverse(F, M) for x, M in full.items()}
        for a in orbit:
            for b in orbit:
                w = _from_full(F.matmul(full[a], inv[b]))
                if not iso_check(F, m, a, b, w):
                    return False
    reps = [o[0] for o in orbits]
    for i, a in enumerate(reps):
        if find_iso(F, m, a, a) is None:
            return False
        for b in reps[i + 1 :]:
            if find_iso(F, m, a, b) is not None or find_iso(F, m, b, a) is not None:
                return False
    return True


def mu_reading_discrepancies(F: GF, m: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs (lambda, lambda') whose verdict changes if mu may be chosen freely
    instead of being the similitude multiplier of A."""
    n = 2 * m + 1
    out = []
    for v in linalg.all_vectors(F, n):
        seed = tuple(int(c) for c in v)
        forced = set(orbit_of(F, m, seed))
        free = set(orbit_of(F, m, seed, free_mu=True))
        out.extend((x, seed) for x in sorted(forced ^ free, key=order_key))
    return out
