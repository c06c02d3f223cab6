"""Executable checks of the structure theorems on concrete instances.

Each verifier re-derives its own hypotheses, then either returns
``hypothesis_unmet`` (with the reason and, where one exists, the evidence) or
tests the conclusion.  ``holds`` always comes with a JSON certificate holding
enough data (algebras, bases, matrices) for :mod:`leibniz.recheck` to confirm
the claim without calling back into this package.  ``FAILS`` means a bug.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable

from . import catalog
from .algebra import (
    AlgebraHom,
    LeibnizAlgebra,
    certify_hom,
    component,
    ideal_failure,
    induced_algebra,
    is_ideal,
    is_lie,
    is_subalgebra,
    quotient_algebra,
)
from .constructions import hol_lie, witness_nonperfect
from .derivations import (
    DerivationAlgebra,
    I_squared_embedding,
    adjoint_hom,
    d_mod_i,
    derivation_algebra,
    embed_L_into_DmodI,
    left_multiplication_algebra,
    phi_to_DL,
    restriction_embedding,
)
from .errors import ConsistencyError, HypothesisError, InputError
from .exactla import Subspace, quotient_coordinates
from .invariants import (
    center,
    centralizer,
    derived_subalgebra,
    is_perfect,
    is_subideal,
    leibniz_kernel,
    normalizer,
    quotient_center,
)
from .io import algebra_to_json

HOLDS = "holds"
UNMET = "hypothesis_unmet"
FAILS = "FAILS"
VERDICTS = (HOLDS, UNMET, FAILS)

THEOREMS = ("th1_i_to_ii", "th1_iii", "cor33", "cor34", "prop41", "th12", "suzhu", "cor47")

DESCRIPTIONS = {
    "th1_i_to_ii": "a perfect ideal of an ideal is an ideal",
    "th1_iii": "a perfect ideal is characteristic",
    "cor33": "a perfect subideal is an ideal",
    "cor34": "the normalizer of a perfect subalgebra is self-normalizing",
    "prop41": "D(K) restricts injectively to D(S) for a characteristic ideal S with zero centralizer",
    "th12": "every tower level D^n(D(A)/I) embeds into D(A/Leib(A))",
    "suzhu": "the derivation algebra of a perfect centerless Lie algebra is complete",
    "cor47": "D^2(A)/I^2 embeds into D(A/Leib(A))",
}


@dataclass(frozen=True)
class VerificationReport:
    theorem: str
    instance: str
    verdict: str
    certificate: dict = dc_field(default_factory=dict)
    reason: str = ""

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "instance": self.instance,
            "verdict": self.verdict,
            "reason": self.reason,
            "certificate": self.certificate,
        }


def _dercert(D: DerivationAlgebra) -> dict:
    return {
        "base": algebra_to_json(D.base),
        "basis": [f.to_strings() for f in D.basis],
        "lie": algebra_to_json(D.lie),
    }


def _perfect_subalgebra(K: LeibnizAlgebra, S: Subspace) -> bool:
    B, _ = induced_algebra(K, S)
    return is_perfect(B)


def _report(theorem, instance, verdict, cert, reason=""):
    return VerificationReport(theorem, instance, verdict, cert, reason)


def _instance(K: LeibnizAlgebra, S: Subspace | None = None) -> str:
    if S is None:
        return K.name
    return f"dim-{S.dim} subspace of {K.name}"


# -- ideals ----------------------------------------------------------------------

def hol_lie_chain(A: LeibnizAlgebra):
    """``(M, A, K)`` with ``K = hol_Lie(A)``, ``M = hol_Lie(K)``, both subspaces in ``M``."""
    K, _ = hol_lie(A)
    M, _ = hol_lie(K)
    return M, component(0, A.dim, M.dim, A.field), component(0, K.dim, M.dim, A.field)


def verify_th1_i_to_ii(M: LeibnizAlgebra, A: Subspace, K: Subspace, instance: str = "") -> VerificationReport:
    """``A`` perfect, ``A`` ideal of ``K``, ``K`` ideal of ``M``: is ``A`` an ideal of ``M``?"""
    th, inst = "th1_i_to_ii", instance or _instance(M, A)
    cert = {"M": algebra_to_json(M), "A": A.to_strings(), "K": K.to_strings()}
    if not A <= K:
        return _report(th, inst, UNMET, cert, "A is not contained in K")
    if not is_subalgebra(M, A):
        return _report(th, inst, UNMET, cert, "A is not a subalgebra")
    if not _perfect_subalgebra(M, A):
        return _report(th, inst, UNMET, cert, "A is not perfect")
    if not is_ideal(M, A, within=K):
        return _report(th, inst, UNMET, cert, "A is not an ideal of K")
    if not is_ideal(M, K):
        return _report(th, inst, UNMET, cert, "K is not an ideal of M")
    bad = ideal_failure(M, A)
    cert["is_ideal"] = bad is None
    if bad is not None:
        cert["failing_product"] = list(bad)
        return _report(th, inst, FAILS, cert, "A is not an ideal of M")
    return _report(th, inst, HOLDS, cert)


def verify_th1_iii(K: LeibnizAlgebra, A: Subspace, instance: str = "") -> VerificationReport:
    """Every basis derivation of ``D(K)`` maps the perfect ideal ``A`` into itself.

    For a non-perfect ``A`` the verdict is ``hypothesis_unmet`` and the
    certificate carries the converse evidence: ``A`` embedded in
    ``A x A/[A,A]`` with a Lie-derivation that moves it.
    """
    th, inst = "th1_iii", instance or _instance(K, A)
    cert = {"K": algebra_to_json(K), "A": A.to_strings()}
    if not is_ideal(K, A):
        return _report(th, inst, UNMET, cert, "A is not an ideal of K")
    B, _ = induced_algebra(K, A, name=f"{K.name}|A")
    if not is_perfect(B):
        w = witness_nonperfect(B)
        cert["witness"] = w.to_json()
        cert["witness_valid"] = w.valid
        if not w.valid:
            return _report(th, inst, FAILS, cert, "witness construction did not produce a moving Lie-derivation")
        return _report(th, inst, UNMET, cert, "A is not perfect; witness derivation escapes A")
    DK = derivation_algebra(K)
    cert["derivations"] = _dercert(DK)
    for a, f in enumerate(DK.basis):
        for s in A.basis:
            if not A.contains(f.apply(s)):
                cert["moving_derivation"] = a
                return _report(th, inst, FAILS, cert, f"derivation {a} does not preserve A")
    return _report(th, inst, HOLDS, cert)


def verify_cor33(K: LeibnizAlgebra, A: Subspace, instance: str = "") -> VerificationReport:
    """For perfect ``A``: subideal of ``K`` exactly when ideal of ``K``.

    Both sides are always computed, so for a non-perfect ``A`` the certificate
    shows whether the equivalence breaks.
    """
    th, inst = "cor33", instance or _instance(K, A)
    cert = {"K": algebra_to_json(K), "A": A.to_strings()}
    if not is_subalgebra(K, A):
        return _report(th, inst, UNMET, cert, "A is not a subalgebra")
    sub = is_subideal(K, A)
    ideal = is_ideal(K, A)
    cert.update(subideal=sub.holds, ideal=ideal, chain=[s.to_strings() for s in sub.chain])
    if not _perfect_subalgebra(K, A):
        if sub.holds and not ideal:
            reason = "A is not perfect; it is a subideal but not an ideal"
        else:
            reason = "A is not perfect"
        return _report(th, inst, UNMET, cert, reason)
    if sub.holds != ideal:
        return _report(th, inst, FAILS, cert, "subideal and ideal disagree")
    return _report(th, inst, HOLDS, cert)


def verify_cor34(K: LeibnizAlgebra, A: Subspace, instance: str = "") -> VerificationReport:
    """``N_K(N_K(A)) = N_K(A)`` for a perfect subalgebra ``A``."""
    th, inst = "cor34", instance or _instance(K, A)
    cert = {"K": algebra_to_json(K), "A": A.to_strings()}
    if not is_subalgebra(K, A):
        return _report(th, inst, UNMET, cert, "A is not a subalgebra")
    if not _perfect_subalgebra(K, A):
        return _report(th, inst, UNMET, cert, "A is not perfect")
    N = normalizer(K, A)
    NN = normalizer(K, N)
    cert.update(N=N.to_strings(), NN=NN.to_strings())
    if NN != N:
        return _report(th, inst, FAILS, cert, "normalizer is not self-normalizing")
    return _report(th, inst, HOLDS, cert)


# -- derivation embeddings -----------------------------------------------------------

def verify_prop41(K: LeibnizAlgebra, S: Subspace, instance: str = "") -> VerificationReport:
    """Restriction ``D(K) -> D(S)``: preconditions, then an injective-hom certificate."""
    th, inst = "prop41", instance or _instance(K, S)
    cert = {"K": algebra_to_json(K), "S": S.to_strings()}
    try:
        B, chart = induced_algebra(K, S, name=f"{K.name}|S")
    except InputError:
        return _report(th, inst, UNMET, cert, "S is not a subalgebra")
    try:
        h = restriction_embedding(K, S, chart)
    except HypothesisError as exc:
        cert["refusal"] = exc.witness
        return _report(th, inst, UNMET, cert, str(exc))
    chk = certify_hom(h)
    cert.update(B=algebra_to_json(B), chart=chart.matrix.to_strings(),
                DK=_dercert(derivation_algebra(K)), DB=_dercert(derivation_algebra(B)),
                matrix=h.matrix.to_strings(), is_hom=chk.is_hom, injective=chk.injective)
    if not chk.embedding:
        return _report(th, inst, FAILS, cert, "restriction is not an injective homomorphism")
    return _report(th, inst, HOLDS, cert)


def _quotient_hypotheses(A: LeibnizAlgebra, cert: dict):
    """Reason string when ``A`` is not perfect or ``A/Leib(A)`` has a center, else None."""
    if not is_perfect(A):
        return "A is not perfect"
    _, _, Z = quotient_center(A)
    if not Z.is_zero():
        _, sec, _ = quotient_coordinates(A.dim, leibniz_kernel(A))
        cert["central_element"] = [str(a) for a in sec(Z.basis[0])]
        return "the center of A/Leib(A) is nonzero"
    return None


def _base_certificate(A: LeibnizAlgebra, cert: dict):
    ctx = d_mod_i(A)
    cert.update(A=algebra_to_json(A), D=_dercert(ctx.D), I=ctx.I.space.to_strings(),
                g=algebra_to_json(ctx.g), proj=ctx.proj.matrix.to_strings(),
                section=ctx.section.to_strings())
    return ctx


def _tower_maps(A: LeibnizAlgebra, depth: int):
    """Yield ``(n, K, chart, h)`` for ``n = 1..depth``: ``h: D(K) -> D(L(A))`` restricts along ``chart``.

    ``K`` is ``D^{n-1}(g)`` and ``chart: L(A) -> K`` composes the embedding of
    ``L(A)`` into ``g`` with the adjoint maps of the tower.
    """
    chart = embed_L_into_DmodI(A).hom
    K = chart.codomain
    for n in range(1, depth + 1):
        h = restriction_embedding(K, chart.image(), chart)
        yield n, K, chart, h
        DK = derivation_algebra(K)
        chart = adjoint_hom(K, DK).compose(chart)
        K = DK.lie


def verify_th12(A: LeibnizAlgebra, depth: int = 2, instance: str = "") -> VerificationReport:
    """Levels ``D(A)/I, D^1(g), .., D^depth(g)`` each embed into ``D(L(A))``.

    Level 0 goes through ``phi``, whose kernel must be ``I``; level ``n >= 1``
    restricts derivations of ``D^{n-1}(g)`` to its copy of ``L(A)``.
    """
    th, inst = "th12", instance or A.name
    if depth < 0:
        raise InputError("depth must be nonnegative")
    cert = {"depth": depth}
    reason = _quotient_hypotheses(A, cert)
    if reason:
        cert["A"] = algebra_to_json(A)
        return _report(th, inst, UNMET, cert, reason)
    _base_certificate(A, cert)
    phi = phi_to_DL(A)
    cert.update(L=_dercert(phi.L), DL=_dercert(phi.DL), phi=phi.hom.matrix.to_strings(),
                kernel_is_I=phi.kernel_is_I)
    levels = [{"index": 0, "matrix": phi.induced.matrix.to_strings(),
               "is_hom": phi.induced_check.is_hom, "injective": phi.induced_check.injective,
               "image_dim": phi.induced_check.rank}]
    ok = phi.check.is_hom and phi.kernel_is_I and phi.induced_check.embedding
    try:
        for n, K, chart, h in _tower_maps(A, depth):
            if h.codomain != phi.DL.lie:
                raise ConsistencyError("restriction codomain differs from D(L(A))")
            chk = certify_hom(h)
            ok = ok and chk.embedding
            levels.append({"index": n, "K": algebra_to_json(K), "chart": chart.matrix.to_strings(),
                           "DK": _dercert(derivation_algebra(K)), "matrix": h.matrix.to_strings(),
                           "is_hom": chk.is_hom, "injective": chk.injective, "image_dim": chk.rank,
                           "centralizer_dim": centralizer(K, chart.image()).dim})
    except HypothesisError as exc:
        cert["levels"] = levels
        cert["refusal"] = exc.witness
        return _report(th, inst, FAILS, cert, f"tower level {len(levels)}: {exc}")
    cert["levels"] = levels
    if not ok:
        return _report(th, inst, FAILS, cert, "some level is not an injective homomorphism")
    return _report(th, inst, HOLDS, cert)


def verify_suzhu(A: LeibnizAlgebra, instance: str = "") -> VerificationReport:
    """``D(A)`` is complete when ``A`` is a perfect Lie algebra with zero center."""
    th, inst = "suzhu", instance or A.name
    cert = {"A": algebra_to_json(A)}
    if not is_lie(A):
        return _report(th, inst, UNMET, cert, "A is not a Lie algebra")
    if not is_perfect(A):
        return _report(th, inst, UNMET, cert, "A is not perfect")
    if not center(A).is_zero():
        return _report(th, inst, UNMET, cert, "A has a nonzero center")
    D = derivation_algebra(A)
    G = D.lie
    DG = derivation_algebra(G)
    ad = adjoint_hom(G, DG)
    Z = center(G)
    cert.update(D=_dercert(D), DD=_dercert(DG), ad=ad.matrix.to_strings(), center=Z.to_strings())
    if not Z.is_zero() or not ad.image().is_full():
        return _report(th, inst, FAILS, cert, "D(A) is not complete")
    return _report(th, inst, HOLDS, cert)


def verify_cor47(A: LeibnizAlgebra, instance: str = "") -> VerificationReport:
    """``D^2(A)/I^2 -> D(D(A)/I) -> D(L(A))``, certified injective end to end."""
    th, inst = "cor47", instance or A.name
    cert: dict = {}
    reason = _quotient_hypotheses(A, cert)
    if reason:
        cert["A"] = algebra_to_json(A)
        return _report(th, inst, UNMET, cert, reason)
    _base_certificate(A, cert)
    sq = I_squared_embedding(A)
    Q, qproj = quotient_algebra(sq.D2.lie, sq.I2, sq.quotient.name)
    if Q != sq.quotient:
        raise ConsistencyError("D^2(A)/I^2 rebuilt differently")
    _, qsec, _ = quotient_coordinates(sq.D2.dim, sq.I2)
    _, _, chart, level = next(_tower_maps(A, 1))
    if level.domain != sq.Dg.lie:
        raise ConsistencyError("level-1 map does not start at D(D(A)/I)")
    composite = AlgebraHom.from_matrix(Q, level.codomain, level.matrix @ sq.hom.matrix)
    cchk = certify_hom(composite)
    DL = derivation_algebra(chart.domain)
    cert.update(D2=_dercert(sq.D2), I2=sq.I2.to_strings(), phi=sq.phi.matrix.to_strings(),
                kernel_is_I2=sq.kernel_is_I2, Dg=_dercert(sq.Dg), quotient=algebra_to_json(Q),
                quotient_proj=qproj.matrix.to_strings(), quotient_section=qsec.matrix.to_strings(),
                hom=sq.hom.matrix.to_strings(), L=_dercert(left_multiplication_algebra(A)[0]), DL=_dercert(DL),
                chart=chart.matrix.to_strings(), level_map=level.matrix.to_strings(),
                composite=composite.matrix.to_strings(), injective=cchk.injective,
                is_hom=cchk.is_hom, image_dim=cchk.rank)
    if not (sq.phi_check.is_hom and sq.kernel_is_I2 and sq.check.embedding and cchk.embedding):
        return _report(th, inst, FAILS, cert, "D^2(A)/I^2 does not embed")
    return _report(th, inst, HOLDS, cert)


# -- suite ------------------------------------------------------------------------

def _safe(theorem: str, instance: str, fn, *args) -> VerificationReport:
    try:
        return fn(*args, instance=instance)
    except (ConsistencyError, HypothesisError) as exc:
        return _report(theorem, instance, FAILS, {}, f"{type(exc).__name__}: {exc}")


def suite_for(A: LeibnizAlgebra, key: str = "", depth: int = 2,
              theorems: Iterable[str] | None = None) -> list[VerificationReport]:
    """Every applicable verifier on ``A`` (and the ambients built from it)."""
    key = key or A.name
    wanted = set(THEOREMS if theorems is None else theorems)
    unknown = wanted - set(THEOREMS)
    if unknown:
        raise InputError(f"unknown theorem ids: {', '.join(sorted(unknown))}")
    n, fld = A.dim, A.field
    full = Subspace.full(n, fld)
    perfect = is_perfect(A)
    out: list[VerificationReport] = []
    chain = None
    if perfect and wanted & {"th1_i_to_ii", "th1_iii", "cor33", "cor34"}:
        K, _ = hol_lie(A)
        M, _ = hol_lie(K)
        chain = (K, M, component(0, n, K.dim, fld), component(0, n, M.dim, fld), component(0, K.dim, M.dim, fld))
    hk, hm = f"hol_Lie({key})", f"hol_Lie(hol_Lie({key}))"

    if "th1_i_to_ii" in wanted:
        if chain:
            K, M, AK, AM, KM = chain
            out.append(_safe("th1_i_to_ii", f"{key} in {hk} in {hm}", verify_th1_i_to_ii, M, AM, KM))
        else:
            out.append(_safe("th1_i_to_ii", f"{key} in {key} in {key}", verify_th1_i_to_ii, A, full, full))
    if "th1_iii" in wanted:
        out.append(_safe("th1_iii", f"{key} in {key}", verify_th1_iii, A, full))
        if chain:
            out.append(_safe("th1_iii", f"{key} in {hk}", verify_th1_iii, chain[0], chain[2]))
    if "cor33" in wanted:
        if chain:
            out.append(_safe("cor33", f"{key} in {hm}", verify_cor33, chain[1], chain[3]))
        else:
            try:
                w = witness_nonperfect(A)
                H, _ = hol_lie(w.ambient)
                out.append(_safe("cor33", f"{key} in hol_Lie(witness({key}))", verify_cor33, H,
                                 component(0, n, H.dim, fld)))
            except HypothesisError as exc:
                out.append(_report("cor33", key, FAILS, {}, f"witness construction failed: {exc}"))
    if "cor34" in wanted:
        if chain:
            out.append(_safe("cor34", f"{key} in {hk}", verify_cor34, chain[0], chain[2]))
            out.append(_safe("cor34", f"{key} in {hm}", verify_cor34, chain[1], chain[3]))
        else:
            out.append(_safe("cor34", f"{key} in {key}", verify_cor34, A, full))
    if "prop41" in wanted:
        out.append(_safe("prop41", f"{key} in {key}", verify_prop41, A, full))
        for label, S in (("Leib", leibniz_kernel(A)), ("A^2", derived_subalgebra(A))):
            if not S.is_zero() and not S.is_full():
                out.append(_safe("prop41", f"{label}({key}) in {key}", verify_prop41, A, S))
    if "th12" in wanted:
        out.append(_safe("th12", key, verify_th12, A, depth))
    if "suzhu" in wanted:
        out.append(_safe("suzhu", key, verify_suzhu, A))
    if "cor47" in wanted:
        out.append(_safe("cor47", key, verify_cor47, A))
    return out


def run_suite(selector: Iterable[str] | None = None, depth: int = 2,
              theorems: Iterable[str] | None = None) -> list[VerificationReport]:
    """Run :func:`suite_for` on catalog keys (all of them when ``selector`` is None)."""
    keys = catalog.keys() if selector is None else list(selector)
    reports: list[VerificationReport] = []
    for key in keys:
        reports.extend(suite_for(catalog.get(key), key, depth, theorems))
    return reports


def summary_table(reports: list[VerificationReport]) -> str:
    counts: dict[str, dict[str, int]] = {}
    for r in reports:
        row = counts.setdefault(r.theorem, dict.fromkeys(VERDICTS, 0))
        row[r.verdict] += 1
    lines = [f"{'theorem':<12} {'holds':>6} {'unmet':>6} {'FAILS':>6}"]
    for th in THEOREMS:
        if th in counts:
            c = counts[th]
            lines.append(f"{th:<12} {c[HOLDS]:>6} {c[UNMET]:>6} {c[FAILS]:>6}")
    total = dict.fromkeys(VERDICTS, 0)
    for c in counts.values():
        for v in VERDICTS:
            total[v] += c[v]
    lines.append(f"{'total':<12} {total[HOLDS]:>6} {total[UNMET]:>6} {total[FAILS]:>6}")
    return "\n".join(lines)


__all__ = [
    "DESCRIPTIONS",
    "FAILS",
    "HOLDS",
    "THEOREMS",
    "UNMET",
    "VerificationReport",
    "hol_lie_chain",
    "run_suite",
    "suite_for",
    "summary_table",
    "verify_cor33",
    "verify_cor34",
    "verify_cor47",
    "verify_prop41",
    "verify_suzhu",
    "verify_th12",
    "verify_th1_i_to_ii",
    "verify_th1_iii",
]
