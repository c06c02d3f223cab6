"""Acceptance criteria 1-10, one test each.

Every test prints a single ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line (visible without ``-s``).  All comparisons are exact; the only numeric
threshold is the per-item wall-clock budget below.
"""

import io
import json
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from leibniz import catalog
from leibniz.algebra import (
    certify_hom,
    check_leibniz,
    component,
    direct_product,
    is_ideal,
    quotient_algebra,
)
from leibniz.catalog import natural_sl2_module, split_sl2_module, trivial_sl2_module
from leibniz.cli import main
from leibniz.constructions import hemisemidirect, hol, hol_lie, witness_nonperfect
from leibniz.derivations import (
    I_squared_embedding,
    check_Lx_identity,
    d_mod_i,
    derivation_algebra,
    derivation_tower,
    embed_L_into_DmodI,
    is_complete,
    is_derivation,
    lie_derivations,
    phi_to_DL,
)
from leibniz.invariants import (
    center,
    derived_subalgebra,
    is_perfect,
    left_center,
    leibniz_kernel,
    normalizer,
    quotient_center,
)
from leibniz.io import algebra_to_json
from leibniz.recheck import Alg, derivation_nullity, recheck_report
from leibniz.verify import HOLDS, verify_cor34, verify_th12

SECONDS_PER_ITEM = 10.0


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(n: int, what: str):
        start = time.perf_counter()
        try:
            yield
            elapsed = time.perf_counter() - start
            assert elapsed < SECONDS_PER_ITEM, f"took {elapsed:.1f}s (budget {SECONDS_PER_ITEM}s)"
        except BaseException as exc:
            with capsys.disabled():
                print(f"\nFAIL criterion {n}: {what} -- {type(exc).__name__}: {exc}")
            raise
        with capsys.disabled():
            print(f"\nPASS criterion {n}: {what} ({time.perf_counter() - start:.2f}s)")
    return run


def constructed_algebras():
    base = [catalog.get(k) for k in catalog.keys()]
    out = []
    for A in base:
        out.append(hol(A)[0])
        out.append(hol_lie(A)[0])
        for J in (leibniz_kernel(A), derived_subalgebra(A), center(A), left_center(A)):
            out.append(quotient_algebra(A, J)[0])
        if not is_perfect(A):
            out.append(witness_nonperfect(A).ambient)
    for rep in (natural_sl2_module(), split_sl2_module(), trivial_sl2_module()):
        out.append(hemisemidirect(rep))
    small = [A for A in base if A.dim <= 3]
    for A, B in combinations_with_replacement(small, 2):
        out.append(direct_product(A, B))
    return base, out


def test_criterion_01_identity_gate(criterion):
    with criterion(1, "check_leibniz holds on catalog and constructed algebras"):
        base, built = constructed_algebras()
        assert len(base) >= 12 and len(built) >= 80
        failing = [A.name for A in base + built if not check_leibniz(A)]
        assert failing == []


@pytest.mark.parametrize("key", ["sl2", "sl2sl2", "h5"])
def test_criterion_02_perfect_ideal_in_holomorph_chain(key, criterion):
    with criterion(2, f"{key} ideal in hol_Lie(hol_Lie({key})) and characteristic in hol_Lie({key})"):
        A = catalog.get(key)
        K, _ = hol_lie(A)
        M, _ = hol_lie(K)
        AK, AM, KM = component(0, A.dim, K.dim), component(0, A.dim, M.dim), component(0, K.dim, M.dim)
        assert is_ideal(K, AK) and is_ideal(M, KM)
        assert is_ideal(M, AM)
        DK = derivation_algebra(K)
        assert all(AK.contains(f.apply(v)) for f in DK.basis for v in AK.basis)


@pytest.mark.parametrize("key", ["nil2", "heis3", "borel2"])
def test_criterion_03_nonperfect_witness(key, criterion):
    with criterion(3, f"witness for {key} valid and re-certified"):
        A = catalog.get(key)
        w = witness_nonperfect(A)
        assert w.f_is_derivation and w.f_is_lie_derivation and w.f_escapes_A
        K = w.ambient
        assert is_derivation(K, w.f) is None
        assert derivation_algebra(K).contains(w.f)
        assert lie_derivations(K).as_derivation_algebra().contains(w.f)
        # f(e_1, 0) = (0, pi e_1)
        e1 = tuple(Fraction(int(i == 0)) for i in range(A.dim))
        assert w.f.column(0) == (0,) * A.dim + tuple(w.projection(e1))
        assert any(w.projection(e1))


def test_criterion_04_Lx_identity_audit(criterion):
    with criterion(4, "[f, L_x] = L_{f(x)} on every catalog algebra"):
        total = 0
        for key in catalog.keys():
            audit = check_Lx_identity(catalog.get(key))
            assert audit, f"{key}: failure at {audit.failure}"
            total += audit.count
        assert total >= 200


def test_criterion_05_h5_kernel_and_centers(criterion):
    with criterion(5, "h5: Leib = Z^l, Z(A/Leib) = 0, Z(D/I) = 0, L embeds as centralizer-free ideal"):
        A = catalog.get("h5")
        assert leibniz_kernel(A) == left_center(A) and leibniz_kernel(A).dim == 2
        _, _, Z = quotient_center(A)
        assert Z.is_zero()
        assert center(d_mod_i(A).g).is_zero()
        emb = embed_L_into_DmodI(A)
        assert emb.check.is_hom and emb.check.injective
        assert emb.image_is_ideal and emb.centralizer.is_zero()


def test_criterion_06_tower_embeds_into_DL_h5(criterion):
    with criterion(6, "h5 depth 2: levels 0..2 embed into D(L(h5)), ker phi = I, image dims <= 3"):
        A = catalog.get("h5")
        phi = phi_to_DL(A)
        assert phi.kernel == phi.I.space
        assert phi.DL.dim == 3 and derivation_algebra(catalog.get("sl2")).dim == 3
        r = verify_th12(A, depth=2)
        assert r.verdict == HOLDS
        levels = r.certificate["levels"]
        assert [lvl["index"] for lvl in levels] == [0, 1, 2]
        for lvl in levels:
            assert lvl["is_hom"] and lvl["injective"] and lvl["image_dim"] <= 3
        res = recheck_report(json.loads(json.dumps(r.to_json())))
        assert res.ok and res.checked, res.problems


def test_criterion_07_complete_derivation_algebras(criterion):
    with criterion(7, "D(sl2), D(sl2+sl2) complete; dim D(sl2) = 3 by oracle; sl2 tower stable at depth 1"):
        sl2 = catalog.get("sl2")
        for key in ("sl2", "sl2sl2"):
            assert is_complete(derivation_algebra(catalog.get(key)).lie)
        assert derivation_algebra(sl2).dim == 3 == derivation_nullity(Alg(algebra_to_json(sl2)))
        t = derivation_tower(sl2, depth=2)
        assert t.dims() == [3, 3, 3]
        level1 = t.levels[1].embedding_check
        assert level1.is_hom and level1.injective and level1.surjective


@pytest.mark.parametrize("key", ["sl2", "sl2sl2", "h5"])
def test_criterion_08_normalizer_self_normalizing(key, criterion):
    with criterion(8, f"N_K(N_K({key})) = N_K({key}) in hol_Lie and hol_Lie^2"):
        A = catalog.get(key)
        K, _ = hol_lie(A)
        M, _ = hol_lie(K)
        for amb in (K, M):
            S = component(0, A.dim, amb.dim)
            N = normalizer(amb, S)
            assert normalizer(amb, N) == N
            r = verify_cor34(amb, S)
            assert r.verdict == HOLDS
            assert recheck_report(json.loads(json.dumps(r.to_json()))).ok


def test_criterion_09_second_derivation_quotient_h5(criterion):
    with criterion(9, "h5: D^2/I^2 embeds with kernel exactly I^2"):
        sq = I_squared_embedding(catalog.get("h5"))
        assert sq.kernel == sq.I2
        assert sq.phi_check.is_hom and sq.check.is_hom and sq.check.injective


def test_criterion_10_suite_integrity(criterion):
    with criterion(10, "verify all exits 0, no FAILS, every holds verdict rechecks"):
        out, err = io.StringIO(), io.StringIO()
        code = main(["verify", "all", "--recheck"], stdout=out, stderr=err)
        assert code == 0, err.getvalue()
        reports = [json.loads(line) for line in out.getvalue().splitlines()]
        assert reports and not any(r["verdict"] == "FAILS" for r in reports)
        holds = [r for r in reports if r["verdict"] == "holds"]
        assert holds
        for r in holds:
            res = recheck_report(r)
            assert res.ok and res.checked, (r["theorem"], r["instance"], res.problems)
