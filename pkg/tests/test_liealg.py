import numpy as np
import pytest
from hypothesis import given, strategies as st

from resliep.gfp import field_make
from resliep.liealg import (
    LieAlgebra,
    abelian,
    ad,
    ad_power,
    bracket,
    heisenberg,
    random_two_step,
    sl2,
    structure_report,
)


def test_heisenberg_brackets():
    L = heisenberg(field_make(3), 2)
    assert np.array_equal(bracket(L, L.e(1), L.e(3)), L.e(5))
    assert np.array_equal(bracket(L, L.e(2), L.e(4)), L.e(5))
    assert not bracket(L, L.e(1), L.e(2)).any()
    assert not bracket(L, L.e(5), L.e(1)).any()


def test_antisymmetric_basis_bracket():
    F = field_make(5)
    L = heisenberg(F, 1)
    assert np.array_equal(bracket(L, L.e(2), L.e(1)), F.neg(L.e(3)))


def test_bilinear_expansion():
    L = heisenberg(field_make(3), 1)
    assert np.array_equal(bracket(L, L.e(1) + L.e(2), L.e(2)), L.e(3))


def test_heisenberg_rejects_m0():
    with pytest.raises(ValueError):
        heisenberg(field_make(3), 0)


def test_dimension_mismatch():
    L = heisenberg(field_make(3), 1)
    with pytest.raises(ValueError):
        bracket(L, np.zeros(3, dtype=np.int64), np.zeros(4, dtype=np.int64))


def test_ad_power_examples():
    F = field_make(3)
    L = heisenberg(F, 1)
    A = ad_power(L, L.e(1), 1)
    assert np.array_equal(A @ L.e(2) % 3, L.e(3))
    assert not (A @ L.e(1)).any() and not (A @ L.e(3)).any()
    assert not ad_power(L, np.array([0, 0, 0]), 1).any()
    rng = np.random.default_rng(0)
    for _ in range(20):
        assert not ad_power(L, rng.integers(0, 3, 3), 2).any()


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("pk", [(2, 1), (3, 1), (5, 1), (2, 2)])
def test_heisenberg_structure(m, pk):
    F = field_make(*pk)
    L = heisenberg(F, m)
    rep = structure_report(L)
    assert rep.jacobi_ok
    assert rep.center.shape[0] == 1 and rep.center[0, -1] != 0 and not rep.center[0, :-1].any()
    assert rep.derived.shape[0] == 1 and not rep.derived[0, :-1].any()
    assert rep.nilpotency_class == 2


def test_abelian_structure():
    rep = structure_report(abelian(field_make(3), 4))
    assert rep.jacobi_ok and rep.center.shape[0] == 4 and rep.nilpotency_class == 1


def test_corrupted_heisenberg_fails_jacobi():
    F = field_make(3)
    L = LieAlgebra.from_brackets(F, 3, {(1, 2): [0, 0, 1], (1, 3): [1, 0, 0]})
    assert not structure_report(L).jacobi_ok


@pytest.mark.parametrize("p", [3, 5, 7])
def test_sl2_is_not_nilpotent(p):
    rep = structure_report(sl2(field_make(p)))
    assert rep.jacobi_ok and rep.nilpotency_class is None and rep.center.shape[0] == 0


def algebras():
    @st.composite
    def build(draw):
        pk = draw(st.sampled_from([(2, 1), (3, 1), (5, 1), (2, 2)]))
        F = field_make(*pk)
        kind = draw(st.sampled_from(["heis1", "heis2", "two_step", "sl2"]))
        if kind == "heis1":
            return heisenberg(F, 1)
        if kind == "heis2":
            return heisenberg(F, 2)
        if kind == "sl2":
            return sl2(F)
        seed = draw(st.integers(0, 10_000))
        return random_two_step(F, 6, 2, np.random.default_rng(seed))

    return build()


@given(algebras(), st.data())
def test_antisymmetry_and_jacobi(L, data):
    F = L.field
    vec = st.lists(st.integers(0, F.q - 1), min_size=L.n, max_size=L.n).map(np.array)
    x, y, z = data.draw(vec), data.draw(vec), data.draw(vec)
    assert np.array_equal(bracket(L, x, y), F.neg(bracket(L, y, x)))
    assert not bracket(L, x, x).any()
    jac = F.add(F.add(bracket(L, x, bracket(L, y, z)), bracket(L, y, bracket(L, z, x))), bracket(L, z, bracket(L, x, y)))
    assert not jac.any()
    assert structure_report(L).jacobi_ok


@given(algebras(), st.data())
def test_ad_matches_bracket(L, data):
    F = L.field
    vec = st.lists(st.integers(0, F.q - 1), min_size=L.n, max_size=L.n).map(np.array)
    x, y = data.draw(vec), data.draw(vec)
    assert np.array_equal(F.matmul(ad(L, x), y), bracket(L, x, y))
