import numpy as np
import pytest
from hypothesis import given, strategies as st

from resliep import linalg
from resliep.extend import (
    central_extension,
    named_extension,
    parse_kind,
    shift_by_coboundary,
    transport,
    verify_extension,
)
from resliep.gfp import field_make
from resliep.liealg import bracket, structure_report
from resliep.pstruct import heisenberg_restricted
from resliep.rescoh import RestrictedTwoCochain, heisenberg_h2_star_basis
from oracles import heis_bracket, heis_power


def lams(F, n, seed):
    rng = np.random.default_rng(seed)
    return [(0,) * n, (1,) + (0,) * (n - 1)] + [tuple(int(x) for x in rng.integers(0, F.q, n))]


@pytest.mark.parametrize("pk", [(2, 1), (3, 1), (5, 1), (2, 2)])
@pytest.mark.parametrize("m", [1, 2])
def test_basis_cocycle_extensions_verify(pk, m):
    F = field_make(*pk)
    n = 2 * m + 1
    basis = heisenberg_h2_star_basis(m) if m > 1 else [(f"Hi:{i}", RestrictedTwoCochain.frobenius_basis(3, i)) for i in (1, 2, 3)]
    for lam in lams(F, n, m):
        R = heisenberg_restricted(F, m, lam)
        for label, rc in basis:
            ext = central_extension(R, rc)
            assert verify_extension(ext).ok
            named = named_extension(R, label)
            rep = verify_extension(named, kind=label)
            assert rep.ok and rep.matches_generic


def test_hi_example_p3():
    F = field_make(3)
    R = heisenberg_restricted(F, 1, (0, 0, 0))
    ext = named_extension(R, "Hi:1")
    P = ext.total.pmap.matrix
    assert np.array_equal(P[0], [0, 0, 0, 1])
    assert not P[1:].any()


def test_hi_closed_form():
    F = field_make(3)
    R = heisenberg_restricted(F, 1, (1, 2, 0))
    ext = central_extension(R, RestrictedTwoCochain.frobenius_basis(3, 2))
    G = linalg.all_vectors(F, 4)
    got = ext.total.power(G)
    assert np.array_equal(got[:, 3], F.frob(G[:, 1]))
    assert np.array_equal(got[:, 2], [heis_power(1, (1, 2, 0), g[:3], 3) for g in G.tolist()])
    assert ext.total.algebra.sc == tuple(sorted(R.algebra.sc))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_hst_brackets_and_power(p):
    F = field_make(p)
    R = heisenberg_restricted(F, 2, (1, 0, 0, 1, 1))
    ext = named_extension(R, "Hst:1,2")
    T = ext.total
    rng = np.random.default_rng(p)
    G, H = rng.integers(0, p, (2, 300, 6))
    br = bracket(T.algebra, G, H)
    expect_c = (G[:, 0] * H[:, 1] - G[:, 1] * H[:, 0]) % p
    assert np.array_equal(br[:, 5], expect_c)
    assert np.array_equal(br[:, 4], [heis_bracket(2, g, h, p) for g, h in zip(G.tolist(), H.tolist())])
    pw = T.power(G)
    if p == 2:
        assert np.array_equal(pw[:, 5], (G[:, 0] * G[:, 1]) % 2)
    else:
        assert not pw[:, 5].any()


def test_refuses_non_cocycle():
    F = field_make(3)
    R = heisenberg_restricted(F, 2, (0,) * 5)
    with pytest.raises(ValueError):
        central_extension(R, RestrictedTwoCochain.basis_pair(5, 1, 5))
    with pytest.raises(ValueError):
        central_extension(R, RestrictedTwoCochain.zero(3))


def test_zero_cocycle_is_split():
    F = field_make(5)
    R = heisenberg_restricted(F, 1, (1, 0, 3))
    ext = central_extension(R, RestrictedTwoCochain.zero(3))
    assert verify_extension(ext).ok
    assert ext.total.algebra.sc == R.algebra.sc
    assert not ext.total.pmap.matrix[:, 3].any()


def test_named_extension_errors():
    R = heisenberg_restricted(field_make(3), 2, (0,) * 5)
    for bad in ["Hi:0", "Hi:6", "Hst:2,1", "Hst:1,5", "Hx:1", "Hi", "Hst:1"]:
        with pytest.raises(ValueError):
            named_extension(R, bad)
    assert parse_kind("Hst:1,2") == ("Hst", (1, 2))


def test_extension_projects_to_base():
    F = field_make(3)
    R = heisenberg_restricted(F, 2, (2, 1, 0, 0, 1))
    for label, rc in heisenberg_h2_star_basis(2):
        T = central_extension(R, rc).total
        G = np.random.default_rng(0).integers(0, 3, (100, 5))
        Gx = np.hstack([G, np.zeros((100, 1), dtype=np.int64)])
        assert np.array_equal(T.power(Gx)[:, :5], R.power(G))
        assert np.array_equal(bracket(T.algebra, Gx, Gx[::-1])[:, :5], bracket(R.algebra, G, G[::-1]))


@given(st.sampled_from([2, 3, 5]), st.integers(0, 10**6))
def test_cohomologous_cocycles_give_isomorphic_extensions(p, seed):
    F = field_make(p)
    rng = np.random.default_rng(seed)
    R = heisenberg_restricted(F, 2, tuple(int(x) for x in rng.integers(0, p, 5)))
    basis = heisenberg_h2_star_basis(2)
    rc = basis[int(rng.integers(len(basis)))][1]
    psi = rng.integers(0, p, 5)
    moved = transport(central_extension(R, rc), psi)
    other = central_extension(R, shift_by_coboundary(R, rc, psi, sign=-1))
    assert moved.algebra.sc == other.total.algebra.sc
    assert moved.pmap == other.total.pmap


@pytest.mark.parametrize("p", [2, 3, 5])
def test_extension_has_small_derived_and_power_spans(p):
    F = field_make(p)
    R = heisenberg_restricted(F, 2, (1, 1, 0, 1, 1))
    for label, rc in heisenberg_h2_star_basis(2):
        T = central_extension(R, rc).total
        assert structure_report(T.algebra).derived.shape[0] <= 2
        images = T.power(linalg.all_vectors(F, 6)) if p < 5 else T.power(np.random.default_rng(0).integers(0, p, (2000, 6)))
        assert linalg.rank(F, images) <= 2
