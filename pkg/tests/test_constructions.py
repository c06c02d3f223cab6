import pytest

from leibniz.algebra import certify_hom, check_leibniz, component, is_ideal, is_lie
from leibniz.catalog import natural_sl2_module, split_sl2_module, trivial_sl2_module
from leibniz.constructions import (
    Representation,
    certify_representation,
    hemisemidirect,
    hol,
    hol_lie,
    module_image,
    witness_nonperfect,
)
from leibniz.derivations import derivation_algebra, is_derivation, lie_derivations
from leibniz.errors import HypothesisError, InputError
from leibniz.exactla import GF, Matrix
from leibniz.invariants import is_perfect, leibniz_kernel, lie_center


@pytest.mark.parametrize("key,dim,a_ideal", [("ab1", 2, True), ("nil2", 4, False), ("sl2", 6, False),
                                             ("heis3", 9, False), ("h5", 9, False)])
def test_hol(key, dim, a_ideal, alg):
    A = alg(key)
    H, emb = hol(A)
    assert H.dim == dim and check_leibniz(H)
    S = emb.image()
    assert S == component(0, A.dim, H.dim)
    assert is_ideal(H, S) is a_ideal


def test_hol_sl2_failure_is_L_x_term(alg):
    # [x, g] picks up the D-component [L_x, g], which is nonzero for x = e, g = ad h
    sl2 = alg("sl2")
    H, _ = hol(sl2)
    assert any(H.sc[0][3 + b][3:] != (0, 0, 0) for b in range(3))


@pytest.mark.parametrize("key,dim", [("sl2", 6), ("nil2", 3), ("ab1", 2), ("h5", 5), ("heis3", 9),
                                     ("witness-nil2", 7)])
def test_hol_lie(key, dim, alg):
    A = alg(key)
    H, emb = hol_lie(A)
    assert H.dim == dim and check_leibniz(H)
    c = certify_hom(emb)
    assert c.is_hom and c.injective
    assert is_ideal(H, emb.image())


def test_hol_lie_of_lie_algebra_is_lie(alg):
    H, _ = hol_lie(alg("sl2"))
    assert is_lie(H)
    H, _ = hol_lie(alg("nil2"))
    assert not is_lie(H)


def test_hol_lie_derivation_part_acts(alg):
    A = alg("sl2")
    H, _ = hol_lie(A)
    DL = lie_derivations(A).as_derivation_algebra()
    for a, f in enumerate(DL.basis):
        for j in range(3):
            assert H.sc[3 + a][j][:3] == f.column(j)
            assert H.sc[j][3 + a][:3] == tuple(-c for c in f.column(j))


def test_hemisemidirect_examples():
    h5 = hemisemidirect(natural_sl2_module(), "h5")
    assert h5.dim == 5 and check_leibniz(h5) and is_perfect(h5) and not is_lie(h5)
    assert leibniz_kernel(h5) == component(3, 2, 5)
    split = hemisemidirect(split_sl2_module())
    assert not is_perfect(split) and split.name == "sl2xH3"
    triv = hemisemidirect(trivial_sl2_module())
    assert is_lie(triv) and not is_perfect(triv)


def test_component_range_checked():
    with pytest.raises(InputError):
        component(3, 5, 5)


def test_module_image():
    assert module_image(natural_sl2_module()).is_full()
    assert module_image(split_sl2_module()).dim == 2
    assert module_image(trivial_sl2_module()).is_zero()


def test_hemisemidirect_rejects_bad_input(alg):
    nat = natural_sl2_module()
    bad = Representation(nat.lie, 2, (nat.action[0], nat.action[1], nat.action[0]))
    assert certify_representation(bad) is not None
    with pytest.raises(InputError):
        hemisemidirect(bad)
    with pytest.raises(InputError):
        hemisemidirect(Representation(alg("nil2"), 1, (Matrix([[0]]), Matrix([[0]]))))
    with pytest.raises(InputError):
        Representation(nat.lie, 2, nat.action[:2])


def test_hemisemidirect_positive_characteristic():
    from leibniz.algebra import LeibnizAlgebra

    F = GF(5)
    g = LeibnizAlgebra.abelian(1, F)
    with pytest.raises(HypothesisError) as exc:
        hemisemidirect(Representation(g, 1, (Matrix([[1]], F),)))
    assert exc.value.witness == {"reason": "positive_characteristic", "p": 5}


@pytest.mark.parametrize("key,kdim", [("nil2", 3), ("heis3", 5), ("borel2", 3), ("ab2", 4), ("h5split", 7)])
def test_witness(key, kdim, alg):
    A = alg(key)
    w = witness_nonperfect(A)
    assert w.ambient.dim == kdim and check_leibniz(w.ambient)
    assert w.valid and w.kills_products and w.leibniz_sum_vanishes
    assert is_ideal(w.ambient, w.embedded_A)
    assert is_derivation(w.ambient, w.f) is None
    assert derivation_algebra(w.ambient).contains(w.f)
    Z = lie_center(w.ambient)
    assert all(Z.contains(c) for c in w.f.columns())
    assert not w.embedded_A.contains(w.f.column(w.escaping_index))


def test_witness_nil2_formula(alg):
    # f(e1, 0) = (0, pi e1)
    w = witness_nonperfect(alg("nil2"))
    assert w.f.column(0) == (0, 0, 1)
    assert w.f.column(1) == (0, 0, 0) and w.f.column(2) == (0, 0, 0)
    obj = w.to_json()
    assert obj["checks"]["f_escapes_A"] and obj["escaping_index"] == 0


@pytest.mark.parametrize("key", ["sl2", "h5", "sl2sl2"])
def test_witness_refused_for_perfect(key, alg):
    with pytest.raises(HypothesisError) as exc:
        witness_nonperfect(alg(key))
    assert exc.value.witness["reason"] == "perfect"
