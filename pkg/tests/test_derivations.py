from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leibniz import catalog
from leibniz.algebra import LeibnizAlgebra, certify_hom, is_ideal, is_lie
from leibniz.derivations import (
    I_squared_embedding,
    adjoint_hom,
    check_Lx_identity,
    commutator,
    d_mod_i,
    derivation_algebra,
    derivation_tower,
    embed_L_into_DmodI,
    ideal_I,
    is_complete,
    is_derivation,
    left_multiplication_algebra,
    lie_derivations,
    phi_to_DL,
    restriction_embedding,
)
from leibniz.errors import HypothesisError, InputError
from leibniz.exactla import QQ, Matrix, Subspace
from leibniz.invariants import leibniz_kernel
from leibniz.io import algebra_to_json
from leibniz.recheck import Alg, derivation_nullity

# (dim A, dim D, dim D_Lie, dim I, dim L); D column checked against the
# independent constraint system in recheck.derivation_nullity.
DIMS = {
    "ab1": (1, 1, 1, 0, 0),
    "ab2": (2, 4, 4, 0, 0),
    "nil2": (2, 2, 1, 1, 1),
    "heis3": (3, 6, 6, 0, 2),
    "borel2": (2, 2, 2, 0, 2),
    "sl2": (3, 3, 3, 0, 3),
    "sl2sl2": (6, 6, 6, 0, 6),
    "h5": (5, 4, 0, 1, 3),
    "h5split": (6, 5, 1, 1, 3),
    "sl2triv": (4, 4, 4, 0, 3),
    "witness-nil2": (3, 5, 4, 2, 1),
    "witness-heis3": (5, 16, 16, 0, 2),
}


@pytest.mark.parametrize("key", sorted(DIMS))
def test_frozen_dimensions(key, alg):
    A = alg(key)
    D = derivation_algebra(A)
    got = (A.dim, D.dim, lie_derivations(A, D).dim, ideal_I(A, D).dim, left_multiplication_algebra(A)[0].dim)
    assert got == DIMS[key]
    assert derivation_nullity(Alg(algebra_to_json(A))) == D.dim


@pytest.mark.parametrize("key", sorted(DIMS))
def test_basis_maps_are_derivations(key, alg):
    A = alg(key)
    D = derivation_algebra(A)
    for f in D.basis:
        assert is_derivation(A, f) is None
    for f in D.basis:
        for g in D.basis:
            assert D.contains(commutator(f, g))


def test_nil2_parametrization(alg):
    # f(e1) = a e1 + b e2, f(e2) = 2a e2
    A = alg("nil2")
    D = derivation_algebra(A)
    for a, b in [(1, 0), (0, 1), (Fraction(3, 2), -4)]:
        f = Matrix([[a, 0], [b, 2 * a]])
        assert D.contains(f) and is_derivation(A, f) is None
    assert not D.contains(Matrix([[1, 0], [0, 1]]))
    assert is_derivation(A, Matrix([[1, 0], [0, 1]])) == (0, 0)


def test_sl2_derivations_are_inner(alg):
    sl2 = alg("sl2")
    D = derivation_algebra(sl2)
    ads = Subspace.span([sl2.left_matrix(sl2.unit(i)).flatten() for i in range(3)], 9)
    assert D.space == ads
    assert is_lie(D.lie)


def test_nil2_ideals_and_quotient(alg):
    A = alg("nil2")
    assert lie_derivations(A).dim == 1
    I = ideal_I(A)
    assert I.dim == 1
    for f in I.members():
        assert all(leibniz_kernel(A).contains(c) for c in f.columns())
    ctx = d_mod_i(A)
    assert ctx.g.dim == 1 and ctx.g == LeibnizAlgebra.abelian(1)


def test_L_of_h5_is_sl2(alg):
    L, hom = left_multiplication_algebra(alg("h5"))
    assert L.dim == 3 and is_lie(L.lie)
    assert certify_hom(hom).surjective
    assert hom.kernel() == leibniz_kernel(alg("h5"))
    # sl2 -> h5 -> L(h5) is an isomorphism of Lie algebras
    from leibniz.algebra import AlgebraHom

    sl2 = alg("sl2")
    inc = AlgebraHom.from_matrix(sl2, alg("h5"), Matrix.from_columns([alg("h5").unit(i) for i in range(3)], 5))
    iso = certify_hom(hom.compose(inc))
    assert iso.is_hom and iso.injective and iso.surjective


@pytest.mark.parametrize("key", sorted(DIMS))
def test_Lx_identity(key, alg):
    A = alg(key)
    audit = check_Lx_identity(A)
    assert audit and audit.count == A.dim * derivation_algebra(A).dim


def test_Lx_identity_detects_non_derivation(alg):
    from leibniz.derivations import DerivationAlgebra

    A = alg("nil2")
    fake = DerivationAlgebra(A, Subspace.span([Matrix.identity(2).flatten()], 4))
    audit = check_Lx_identity(A, fake)
    assert not audit and audit.failure == (0, 0)


@pytest.mark.parametrize("key", ["sl2", "h5", "sl2sl2"])
def test_embed_L(key, alg):
    emb = embed_L_into_DmodI(alg(key))
    assert emb.check.embedding
    assert emb.image_is_ideal
    assert emb.centralizer.is_zero()


@pytest.mark.parametrize("key", ["nil2", "heis3", "ab2"])
def test_embed_L_refused_with_central_element(key, alg):
    with pytest.raises(HypothesisError) as exc:
        embed_L_into_DmodI(alg(key))
    assert "central_element" in exc.value.witness


def test_restriction_identity(alg):
    sl2 = alg("sl2")
    h = restriction_embedding(sl2, Subspace.full(3))
    c = certify_hom(h)
    assert c.is_hom and c.injective and c.surjective


def test_restriction_refusals(alg):
    h5 = alg("h5")
    with pytest.raises(HypothesisError) as exc:
        restriction_embedding(h5, leibniz_kernel(h5))
    assert exc.value.witness["reason"] == "centralizer"
    sl2 = alg("sl2")
    with pytest.raises(HypothesisError) as exc:
        restriction_embedding(sl2, Subspace.span([sl2.unit(0), sl2.unit(1)], 3))
    assert exc.value.witness["reason"] == "not_ideal"
    with pytest.raises(InputError):
        restriction_embedding(sl2, Subspace.span([sl2.unit(0), sl2.unit(2)], 3))


def test_restriction_not_characteristic(alg):
    # in ab2 the line e1 is an ideal, but gl2 moves it; the abelian centralizer check never runs
    A = alg("ab2")
    with pytest.raises(HypothesisError) as exc:
        restriction_embedding(A, Subspace.span([A.unit(0)], 2))
    assert exc.value.witness["reason"] == "not_characteristic"


def test_restriction_to_factor_of_sl2sl2_is_refused(alg):
    # the second factor centralizes the first
    K = alg("sl2sl2")
    S = Subspace.span([K.unit(i) for i in range(3)], 6)
    with pytest.raises(HypothesisError) as exc:
        restriction_embedding(K, S)
    w = exc.value.witness
    assert w["reason"] == "centralizer"
    assert not S.contains([Fraction(x) for x in w["element"]])


@pytest.mark.parametrize("key", ["sl2", "h5", "sl2sl2"])
def test_phi(key, alg):
    res = phi_to_DL(alg(key))
    assert res.check.is_hom and res.kernel_is_I
    assert res.induced_check.embedding


def test_tower_sl2(alg):
    t = derivation_tower(alg("sl2"), depth=3)
    assert t.dims() == [3, 3, 3, 3]
    for lvl in t.levels[1:]:
        assert lvl.embedding_check.embedding and lvl.embedding_check.surjective
        assert lvl.center_dim == 0 and lvl.centralizer_dim == 0
    assert [lvl["level"] for lvl in t.to_json()] == [0, 1, 2, 3]
    assert derivation_tower(alg("sl2"), depth=0).dims() == [3]
    with pytest.raises(InputError):
        derivation_tower(alg("sl2"), depth=-1)


def test_tower_h5(alg):
    t = derivation_tower(alg("h5"), depth=2)
    # D(h5)/I is sl2, so the tower is stable from the start
    assert t.dims() == [3, 3, 3]
    assert all(l.embedding_check.embedding for l in t.levels[1:])


@pytest.mark.parametrize("key,expected", [("sl2", True), ("sl2sl2", True), ("ab1", False), ("ab2", False),
                                          ("heis3", False), ("borel2", True), ("nil2", False)])
def test_is_complete(key, expected, alg):
    assert is_complete(alg(key)) is expected


def test_is_complete_on_derivation_algebras(alg):
    for key in ("sl2", "sl2sl2"):
        assert is_complete(derivation_algebra(alg(key)).lie)


def test_adjoint_hom_kernel_is_center(alg):
    from leibniz.invariants import center, left_center

    for key in ("heis3", "h5", "nil2"):
        A = alg(key)
        assert adjoint_hom(A).kernel() == left_center(A)
        assert center(A) <= left_center(A)


@pytest.mark.parametrize("key", ["sl2", "h5"])
def test_I_squared(key, alg):
    r = I_squared_embedding(alg(key))
    assert r.phi_check.is_hom and r.kernel_is_I2
    assert r.check.embedding
    assert is_ideal(r.D2.lie, r.I2)


def test_I_squared_refuses_non_perfect(alg):
    with pytest.raises(HypothesisError):
        I_squared_embedding(alg("nil2"))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_every_combination_is_a_derivation(coeffs):
    A = catalog.get("h5")
    D = derivation_algebra(A)
    f = D.element(coeffs)
    assert is_derivation(A, f) is None
    assert tuple(Fraction(c) for c in coeffs) == D.coordinates(f)
