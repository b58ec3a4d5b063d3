import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from resliep import linalg
from resliep.cecoh import cohomology, subsets
from resliep.gfp import field_make
from resliep.liealg import sl2
from resliep.pstruct import PMap, RestrictedLieAlgebra, heisenberg_restricted, pmap_eval
from resliep.rescoh import (
    RestrictedTwoCochain,
    check_d2_d1_vanishes,
    compat_check,
    d1_star,
    d2_star_matrix,
    delta_map,
    heisenberg_h2_star_basis,
    ind2_eval,
    ind2_on_pairs,
    is_cocycle,
    omega_eval,
    restricted_cohomology,
    tilde_eval,
    verify_sequences,
)


def unit_phi(n, s, t):
    phi = np.zeros(comb(n, 2), dtype=np.int64)
    phi[subsets(n, 2).index((s, t))] = 1
    return phi


def sl2_restricted(p):
    F = field_make(p)
    return RestrictedLieAlgebra(sl2(F), PMap.from_rows([[0, 0, 0], [0, 1, 0], [0, 0, 0]]))


# -- tilde and compatibility -------------------------------------------------------


@pytest.mark.parametrize("p", [3, 5])
def test_tilde_vanishes_for_odd_p(p):
    F = field_make(p)
    R = heisenberg_restricted(F, 2, (1, 0, 2, 0, 1))
    V = np.random.default_rng(0).integers(0, p, (500, 5))
    for s, t in itertools.combinations(range(1, 5), 2):
        assert not tilde_eval(R.algebra, R.pmap, unit_phi(5, s, t), V).any()


@pytest.mark.parametrize("m", [1, 2])
def test_tilde_p2_is_product(m):
    F = field_make(2)
    n = 2 * m + 1
    R = heisenberg_restricted(F, m, (0,) * n)
    V = linalg.all_vectors(F, n)
    for s, t in itertools.combinations(range(1, n + 1), 2):
        got = tilde_eval(R.algebra, R.pmap, unit_phi(n, s, t), V)
        assert np.array_equal(got, V[:, s - 1] * V[:, t - 1])


@given(st.sampled_from([2, 3, 5]), st.data())
def test_tilde_vanishes_on_basis(p, data):
    R = sl2_restricted(p)
    phi = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=3, max_size=3)))
    assert not tilde_eval(R.algebra, R.pmap, phi, np.eye(3, dtype=np.int64)).any()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_compat_check_examples(p):
    R = sl2_restricted(p)
    L, P = R.algebra, R.pmap
    rng = np.random.default_rng(p)
    phi = rng.integers(0, p, 3)
    assert compat_check(L, P, phi, RestrictedTwoCochain.make(phi, (0, 0, 0)))
    assert compat_check(L, P, np.zeros(3, dtype=np.int64), RestrictedTwoCochain.frobenius_basis(3, 2))
    const = lambda v: np.ones(np.shape(v)[:-1], dtype=np.int64)  # noqa: E731
    assert not compat_check(L, P, unit_phi(3, 1, 2), const)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_restricted_coboundary_is_compatible(p):
    """omega = psi o [p] is compatible with d psi; a check that the recursion,
    the sign convention and the s_i terms are mutually consistent."""
    for R in (sl2_restricted(p), heisenberg_restricted(field_make(p), 1, (1, 2 % p, 1))):
        L, P = R.algebra, R.pmap
        psi = np.random.default_rng(p).integers(0, p, R.n)
        rc = d1_star(L, P, psi)
        ind1 = lambda v: L.field.dot(pmap_eval(L, P, v), psi)  # noqa: E731
        assert compat_check(L, P, np.array(rc.phi), ind1)
        V = linalg.all_vectors(L.field, R.n)
        assert np.array_equal(omega_eval(L, P, rc, V), ind1(V))


@given(st.sampled_from([2, 3, 5]), st.data())
def test_tilde_linearity(p, data):
    F = field_make(p)
    R = sl2_restricted(p)
    L, P = R.algebra, R.pmap
    vec = st.lists(st.integers(0, p - 1), min_size=3, max_size=3).map(np.array)
    a, phi1, phi2 = data.draw(st.integers(0, p - 1)), data.draw(vec), data.draw(vec)
    E = np.eye(3, dtype=np.int64)
    V = F.add(E[:, None, :], E[None, :, :]).reshape(-1, 3)
    lhs = tilde_eval(L, P, F.add(F.mul(a, phi1), phi2), V)
    rhs = F.add(F.mul(a, tilde_eval(L, P, phi1, V)), tilde_eval(L, P, phi2, V))
    assert np.array_equal(lhs, rhs)


def test_tilde_refuses_large_p():
    F = field_make(17)
    R = RestrictedLieAlgebra(sl2(F), PMap.from_rows([[0, 0, 0], [0, 1, 0], [0, 0, 0]]))
    with pytest.raises(ValueError):
        tilde_eval(R.algebra, R.pmap, [1, 0, 0], [[1, 1, 0]])


# -- d1_*, ind2, d2_* ------------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("m", [1, 2])
def test_d1_star_examples(p, m):
    F = field_make(p)
    n = 2 * m + 1
    lam = tuple(int(x) for x in np.random.default_rng(m).integers(0, p, n))
    R = heisenberg_restricted(F, m, lam)
    psi = np.zeros(n, dtype=np.int64)
    psi[-1] = 1
    rc = d1_star(R.algebra, R.pmap, psi)
    expect = np.zeros(comb(n, 2), dtype=np.int64)
    for i in range(1, m + 1):
        expect[subsets(n, 2).index((i, m + i))] = 1
    assert np.array_equal(rc.phi, expect) and rc.frob == lam
    e1 = np.eye(n, dtype=np.int64)[0]
    assert not d1_star(R.algebra, R.pmap, e1).coords().any()
    R0 = heisenberg_restricted(F, m, (0,) * n)
    assert not any(d1_star(R0.algebra, R0.pmap, np.arange(n) % p).frob)


def test_ind2_examples():
    F = field_make(3)
    R = heisenberg_restricted(F, 1, (0, 0, 1))
    data = ind2_on_pairs(R.algebra, R.pmap, np.zeros(3, dtype=np.int64))
    assert not data.eta_on_pairs.any()
    data = ind2_on_pairs(R.algebra, R.pmap, unit_phi(3, 1, 3))
    assert data.eta_on_pairs[0, 2] == 1
    R2 = heisenberg_restricted(F, 2, (1, 2, 0, 1, 1))
    for s, t in itertools.combinations(range(1, 5), 2):
        assert not ind2_on_pairs(R2.algebra, R2.pmap, unit_phi(5, s, t)).eta_on_pairs.any()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_eta_matches_direct_evaluation(p):
    R = sl2_restricted(p)
    L, P = R.algebra, R.pmap
    phi = np.random.default_rng(p).integers(0, p, 3)
    E = np.eye(3, dtype=np.int64)
    direct = ind2_eval(L, P, phi, E[:, None, :], E[None, :, :])
    assert np.array_equal(direct, ind2_on_pairs(L, P, phi).eta_on_pairs)


def test_d2_star_ignores_frob_columns():
    R = heisenberg_restricted(field_make(3), 2, (1, 0, 0, 0, 2))
    D = d2_star_matrix(R.algebra, R.pmap)
    assert not D[:, comb(5, 2):].any()


def test_restricted_coordinate_dimension():
    for n in range(1, 8):
        assert len(RestrictedTwoCochain.zero(n).coords()) == comb(n + 1, 2)


CASES_SMALL = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)]  # (p, m) with |F|^n <= 2^12 where exhaustive


@pytest.mark.parametrize("p,m", CASES_SMALL)
def test_d2_star_d1_star_vanishes(p, m):
    F = field_make(p)
    n = 2 * m + 1
    rng = np.random.default_rng(p + m)
    for lam in [(0,) * n, tuple(int(x) for x in rng.integers(0, p, n))]:
        R = heisenberg_restricted(F, m, lam)
        exhaustive = F.q**n <= 2**12
        for psi in np.eye(n, dtype=np.int64):
            if exhaustive:
                assert check_d2_d1_vanishes(R, psi)
            E = np.eye(n, dtype=np.int64)
            assert check_d2_d1_vanishes(R, psi, E, E)
            assert not F.matmul(d2_star_matrix(R.algebra, R.pmap), d1_star(R.algebra, R.pmap, psi).coords()).any()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_d2_star_d1_star_vanishes_sl2(p):
    R = sl2_restricted(p)
    for psi in np.eye(3, dtype=np.int64):
        assert check_d2_d1_vanishes(R, psi)


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)])
def test_kernel_soundness_exhaustive(p, m):
    """Every kernel vector found from basis pairs kills ind^2 on all pairs."""
    F = field_make(p)
    n = 2 * m + 1
    R = heisenberg_restricted(F, m, tuple(int(x) for x in np.random.default_rng(7).integers(0, p, n)))
    L, P = R.algebra, R.pmap
    Z = linalg.nullspace(F, d2_star_matrix(L, P), comb(n, 2) + n)
    V = linalg.all_vectors(F, n)
    for z in Z:
        phi = z[: comb(n, 2)]
        for h in V:
            assert not np.asarray(ind2_eval(L, P, phi, V, h)).any()


@pytest.mark.parametrize("p", [3, 5])
def test_kernel_soundness_sl2(p):
    R = sl2_restricted(p)
    L, P, F = R.algebra, R.pmap, R.field
    Z = linalg.nullspace(F, d2_star_matrix(L, P), 6)
    V = linalg.all_vectors(F, 3)
    for z in Z:
        for h in V:
            assert not np.asarray(ind2_eval(L, P, z[:3], V, h)).any()


# -- cohomology dimensions -----------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_h1_star_equals_h1(p, m):
    F = field_make(p)
    n = 2 * m + 1
    for lam in [(0,) * n, (1,) + (0,) * (n - 1), (0,) * (n - 1) + (1,)]:
        R = heisenberg_restricted(F, m, lam)
        assert restricted_cohomology(R.algebra, R.pmap, 1).dim_H == 2 * m == cohomology(R.algebra, 1).dim_H


@pytest.mark.parametrize("pk", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)])
def test_h2_star_dimension_m2(pk):
    F = field_make(*pk)
    rng = np.random.default_rng(11)
    for lam in [(0,) * 5] + [tuple(int(x) for x in rng.integers(0, F.q, 5)) for _ in range(3)]:
        R = heisenberg_restricted(F, 2, lam)
        assert restricted_cohomology(R.algebra, R.pmap, 2).dim_H == 10


def test_h2_star_h1_examples():
    F = field_make(3)
    R = heisenberg_restricted(F, 1, (0, 0, 0))
    assert restricted_cohomology(R.algebra, R.pmap, 2).dim_H == 5
    R = heisenberg_restricted(F, 1, (0, 0, 1))
    assert restricted_cohomology(R.algebra, R.pmap, 2).dim_H == 3


def test_restricted_degree_range():
    R = heisenberg_restricted(field_make(3), 1, (0, 0, 0))
    with pytest.raises(ValueError):
        restricted_cohomology(R.algebra, R.pmap, 3)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("m", [2, 3])
def test_named_basis_is_a_basis(p, m):
    """The listed cocycles are restricted cocycles and independent modulo coboundaries."""
    F = field_make(p)
    n = 2 * m + 1
    R = heisenberg_restricted(F, m, tuple(int(x) for x in np.random.default_rng(m).integers(0, p, n)))
    L, P = R.algebra, R.pmap
    basis = heisenberg_h2_star_basis(m)
    assert len(basis) == 2 * m * m + m
    D = d2_star_matrix(L, P)
    coords = np.array([rc.coords() for _, rc in basis])
    assert not F.matmul(D, coords.T).any()
    B = linalg.row_basis(F, np.vstack([d1_star(L, P, e).coords() for e in np.eye(n, dtype=np.int64)]))
    assert linalg.rank(F, np.vstack([coords, B])) == len(basis) + B.shape[0]


# -- Delta and exact sequences -------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5])
def test_delta_vanishes_on_named_cocycles_m2(p):
    F = field_make(p)
    R = heisenberg_restricted(F, 2, (1, 0, 0, 1, 1 % p))
    for _, rc in heisenberg_h2_star_basis(2):
        assert not delta_map(R.algebra, R.pmap, np.array(rc.phi)).any()


def test_delta_nonzero_on_h1():
    F = field_make(3)
    R = heisenberg_restricted(F, 1, (0, 0, 1))
    D = delta_map(R.algebra, R.pmap, unit_phi(3, 1, 3))
    assert D[2, 0] == 1


def test_delta_refuses_non_cocycle():
    F = field_make(3)
    R = heisenberg_restricted(F, 2, (0,) * 5)
    phi = unit_phi(5, 1, 5)
    assert not is_cocycle(R.algebra, phi)
    with pytest.raises(ValueError):
        delta_map(R.algebra, R.pmap, phi)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("m", [1, 2])
def test_delta_is_transposed_eta(p, m):
    F = field_make(p)
    n = 2 * m + 1
    R = heisenberg_restricted(F, m, tuple(int(x) for x in np.random.default_rng(p).integers(0, p, n)))
    L, P = R.algebra, R.pmap
    for phi in cohomology(L, 2).cocycles:
        assert np.array_equal(delta_map(L, P, phi), ind2_on_pairs(L, P, phi).eta_on_pairs.T)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_delta_of_coboundary_matches_ind2(p):
    F = field_make(p)
    R = heisenberg_restricted(F, 1, (1, 0, 1))
    L, P = R.algebra, R.pmap
    for psi in np.eye(3, dtype=np.int64):
        rc = d1_star(L, P, psi)
        assert np.array_equal(delta_map(L, P, np.array(rc.phi)), ind2_on_pairs(L, P, np.array(rc.phi)).eta_on_pairs.T)


def test_sequence_examples():
    F = field_make(3)
    R = heisenberg_restricted(F, 2, (0,) * 5)
    rep = verify_sequences(R.algebra, R.pmap)
    assert rep.exact and rep.delta_zero and rep.ses_exact and rep.dims["H2*"] == 10 and rep.dims["H2"] == 5
    R = heisenberg_restricted(F, 1, (0, 0, 0))
    rep = verify_sequences(R.algebra, R.pmap)
    assert rep.exact and rep.delta_zero and rep.dims["H2*"] == 5
    R = heisenberg_restricted(F, 1, (0, 0, 1))
    rep = verify_sequences(R.algebra, R.pmap)
    assert rep.exact and not rep.delta_zero and rep.maps[4].rank == 2 and rep.dims["H2*"] == 3


@pytest.mark.parametrize("p", [2, 3, 5])
def test_sequence_exact_on_sl2(p):
    R = sl2_restricted(p)
    assert verify_sequences(R.algebra, R.pmap).exact


def test_d2_d1_check_detects_non_restricted_map():
    # e_1 -> e_2 breaks Jacobson's condition on h_1, and d2_* d1_* stops vanishing
    F = field_make(3)
    R = heisenberg_restricted(F, 1, (0, 0, 0))
    bad = RestrictedLieAlgebra(R.algebra, PMap.from_rows([[0, 1, 0], [0, 0, 0], [0, 0, 0]]))
    assert not check_d2_d1_vanishes(bad, np.array([0, 0, 1]))
    assert check_d2_d1_vanishes(R, np.array([0, 0, 1]))


@pytest.mark.parametrize("p", [2, 3])
def test_d2_d1_table_matches_pointwise_ind2(p):
    F = field_make(p)
    R = heisenberg_restricted(F, 1, (1, 0, 1))
    bad = RestrictedLieAlgebra(R.algebra, PMap.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 0]]))
    L, P = bad.algebra, bad.pmap
    V = linalg.all_vectors(F, 3)
    for psi in np.eye(3, dtype=np.int64):
        phi = d1_star(L, P, psi).phi
        pointwise = all(not np.asarray(ind2_eval(L, P, phi, V, h)).any() for h in V)
        assert check_d2_d1_vanishes(bad, psi) == pointwise
