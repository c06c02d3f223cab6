import pytest

from leibniz import catalog
from leibniz.algebra import LeibnizAlgebra, is_ideal
from leibniz.errors import InputError
from leibniz.exactla import GF, QQ, Subspace, unit_vector
from leibniz.invariants import (
    center,
    center_of_quotient_trivial,
    centralizer,
    derived_subalgebra,
    invariant_report,
    is_perfect,
    is_subideal,
    left_center,
    left_centralizer,
    leibniz_kernel,
    lie_center,
    normalizer,
)

E, H, F = (unit_vector(3, i) for i in range(3))
V = Subspace.span([unit_vector(5, 3), unit_vector(5, 4)], 5)


def span(vs, n):
    return Subspace.span(vs, n, QQ)


def test_derived(alg):
    assert derived_subalgebra(alg("ab2")).is_zero()
    assert derived_subalgebra(alg("nil2")) == span([(0, 1)], 2)
    assert derived_subalgebra(alg("sl2")).is_full()


@pytest.mark.parametrize("key,expected", [("sl2", True), ("nil2", False), ("h5", True), ("sl2sl2", True),
                                          ("h5split", False), ("sl2triv", False), ("borel2", False)])
def test_is_perfect(key, expected, alg):
    assert is_perfect(alg(key)) is expected


def test_leibniz_kernel(alg):
    assert leibniz_kernel(alg("sl2")).is_zero()
    assert leibniz_kernel(alg("nil2")) == span([(0, 1)], 2)
    assert leibniz_kernel(alg("h5")) == V


def test_left_center(alg):
    assert left_center(alg("ab2")).is_full()
    assert left_center(alg("nil2")) == span([(0, 1)], 2)
    h5 = alg("h5")
    assert left_center(h5) == leibniz_kernel(h5) == V


def test_lie_center_follows_the_symmetric_definition(alg):
    # {x : [x,y] + [y,x] = 0}: everything for a Lie algebra
    assert lie_center(alg("sl2")).is_full()
    assert lie_center(alg("nil2")) == span([(0, 1)], 2)
    nil2_gf2 = LeibnizAlgebra.from_products(2, {(0, 0): {1: 1}}, GF(2), "nil2/2")
    assert lie_center(nil2_gf2).is_full()
    assert lie_center(alg("h5")).is_zero()


def test_two_sided_center(alg):
    assert center(alg("sl2")).is_zero()
    assert center(alg("heis3")) == span([(0, 0, 1)], 3)
    assert center(alg("nil2")) == span([(0, 1)], 2)
    assert center(alg("h5")).is_zero()


@pytest.mark.parametrize("key,expected", [("sl2", True), ("h5", True), ("nil2", False), ("heis3", False),
                                          ("borel2", True), ("ab1", False)])
def test_center_of_quotient(key, expected, alg):
    assert center_of_quotient_trivial(alg(key)) is expected


def test_normalizer(alg):
    sl2 = alg("sl2")
    assert normalizer(sl2, Subspace.full(3)).is_full()
    borel = span([E, H], 3)
    assert normalizer(sl2, borel) == borel
    h5 = alg("h5")
    assert normalizer(h5, V).is_full()  # V is an ideal
    assert normalizer(sl2, span([H], 3)) == span([H], 3)
    with pytest.raises(InputError):
        normalizer(sl2, span([E, F], 3))


def test_centralizers(alg):
    sl2 = alg("sl2")
    assert left_centralizer(sl2, Subspace.zero(3)).is_full()
    assert left_centralizer(sl2, Subspace.full(3)).is_zero()
    K = alg("witness-nil2")
    A = span([(1, 0, 0), (0, 1, 0)], 3)
    C = left_centralizer(K, A)
    assert span([(0, 0, 1)], 3) <= C
    assert centralizer(sl2, span([H], 3)) == span([H], 3)


def test_subideal(alg):
    sl2, nil2 = alg("sl2"), alg("nil2")
    r = is_subideal(sl2, Subspace.full(3))
    assert r and len(r.chain) == 1
    r = is_subideal(nil2, span([(0, 1)], 2))
    assert r and r.chain[-1].is_full() and r.chain[0] == span([(0, 1)], 2)
    assert not is_subideal(sl2, span([E], 3))


def test_subideal_that_is_not_an_ideal(alg):
    # nil2 inside hol_Lie of its witness: nil2 < K < hol_Lie(K) but not an ideal of the top
    from leibniz.algebra import component
    from leibniz.constructions import hol_lie

    K = alg("witness-nil2")
    M, _ = hol_lie(K)
    A = component(0, 2, M.dim)
    r = is_subideal(M, A)
    assert r and len(r.chain) == 3
    assert not is_ideal(M, A)
    for lo, hi in zip(r.chain, r.chain[1:]):
        assert lo <= hi and is_ideal(M, lo, within=hi)


@pytest.mark.parametrize("key", catalog.keys())
def test_leib_inside_left_center(key, alg):
    A = alg(key)
    assert leibniz_kernel(A) <= left_center(A)
    assert is_ideal(A, leibniz_kernel(A))
    rep = invariant_report(A)
    assert rep.perfect == derived_subalgebra(A).is_full()


def test_report_json_and_table(alg):
    rep = invariant_report(alg("h5"))
    obj = rep.to_json()
    assert obj["perfect"] and not obj["lie"] and len(obj["leib"]) == 2
    assert "dim Leib" in rep.table()


@pytest.mark.parametrize("key", catalog.keys())
def test_leib_is_smallest_ideal_with_lie_quotient(key, alg):
    from itertools import combinations

    from leibniz.algebra import is_lie, quotient_algebra

    A = alg(key)
    L = leibniz_kernel(A)
    Q, _ = quotient_algebra(A, L)
    assert is_lie(Q)
    # every ideal spanned by a proper subset of Leib's canonical basis leaves a non-Lie quotient
    for r in range(L.dim):
        for subset in combinations(L.basis, r):
            J = Subspace.span(subset, A.dim, A.field)
            if is_ideal(A, J):
                assert not is_lie(quotient_algebra(A, J)[0])
