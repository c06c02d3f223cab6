"""Derivation algebras and the maps built from them.

A linear map ``f`` of an ``n``-dimensional algebra is an ``n x n`` matrix whose
column ``j`` is ``f(e_j)``; it is handled as the row-major flattening in
``F^{n^2}``.  A :class:`DerivationAlgebra` is any commutator-closed subspace of
such maps (the full ``D(A)``, ``L(A)``, ``D_Lie(A)`` as an algebra, ...)
together with its bracket table as a :class:`LeibnizAlgebra`.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from typing import Sequence

from .algebra import (
    AlgebraHom,
    HomCheck,
    LeibnizAlgebra,
    certify_hom,
    induced_algebra,
    is_ideal,
    is_lie,
    quotient_algebra,
)
from .errors import ConsistencyError, HypothesisError, InputError
from .exactla import (
    Matrix,
    Subspace,
    null_space_sparse,
    quotient_coordinates,
    solve,
    unit_vector,
)
from .invariants import (
    _common_kernel,
    center,
    centralizer,
    is_perfect,
    left_centralizer,
    leibniz_kernel,
    lie_center,
    quotient_center,
)


def commutator(f: Matrix, g: Matrix) -> Matrix:
    return f @ g - g @ f


def is_derivation(A: LeibnizAlgebra, f: Matrix):
    """Direct check of ``f([e_i,e_j]) = [f e_i, e_j] + [e_i, f e_j]``.

    Returns None when ``f`` is a derivation, else the first failing ``(i, j)``.
    Independent of the null-space solver used by :func:`derivation_algebra`.
    """
    n = A.dim
    if f.shape != (n, n):
        raise InputError(f"{f.shape} matrix is not an endomorphism of a {n}-dim algebra")
    cols = f.columns()
    for i in range(n):
        for j in range(n):
            lhs = f.apply(A.sc[i][j])
            r1 = A.bracket(cols[i], A.unit(j))
            r2 = A.bracket(A.unit(i), cols[j])
            if any(a != b + c for a, b, c in zip(lhs, r1, r2)):
                return (i, j)
    return None


class DerivationAlgebra:
    """A Lie algebra of endomorphisms of ``base`` closed under commutators.

    ``space`` lives in ``F^{n^2}``; its canonical basis rows, reshaped, are the
    basis maps, and ``lie`` is the commutator table in that basis.
    """

    def __init__(self, base: LeibnizAlgebra, space: Subspace, name: str = ""):
        n = base.dim
        if space.ambient_dim != n * n:
            raise InputError("derivation space must live in F^(n^2)")
        self.base = base
        self.space = space
        self.name = name or f"D({base.name})"
        self.basis = [Matrix.from_flat(r, n, n, base.field) for r in space.basis]
        d = len(self.basis)
        sc = [[self.coordinates(commutator(self.basis[a], self.basis[b])) for b in range(d)]
              for a in range(d)]
        self.lie = LeibnizAlgebra(sc, base.field, self.name)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def field(self):
        return self.base.field

    def contains(self, f: Matrix) -> bool:
        return self.space.contains(f.flatten())

    def coordinates(self, f: Matrix) -> tuple:
        try:
            return self.space.coordinates(f.flatten())
        except InputError:
            raise ConsistencyError(f"map does not lie in {self.name}") from None

    def element(self, coords: Sequence) -> Matrix:
        n = self.base.dim
        out = Matrix.zero(n, n, self.field)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(c)
        return out

    def subspace_of(self, maps: Sequence[Matrix]) -> Subspace:
        """Span of the given member maps, in this algebra's coordinates."""
        return Subspace.span([self.coordinates(f) for f in maps], self.dim, self.field)

    def __repr__(self) -> str:
        return f"DerivationAlgebra({self.name!r}, dim={self.dim})"


def derivation_constraints(A: LeibnizAlgebra) -> list[dict]:
    """Sparse rows of the linear system cutting out ``D(A)`` in ``F^{n^2}``.

    Row ``(i, j, k)`` (lexicographic) is the ``k``-th coordinate of
    ``f([e_i,e_j]) - [f e_i, e_j] - [e_i, f e_j]``; unknown ``f[r][c]`` has
    index ``r*n + c``.
    """
    n = A.dim
    zero = A.field.zero
    by_right = [[[] for _ in range(n)] for _ in range(n)]  # [j][k] -> (m, c_mjk)
    by_left = [[[] for _ in range(n)] for _ in range(n)]   # [i][k] -> (m, c_imk)
    for m, j, k, c in A.nonzero_constants():
        by_right[j][k].append((m, c))
    for i, m, k, c in A.nonzero_constants():
        by_left[i][k].append((m, c))
    rows = []
    for i in range(n):
        for j in range(n):
            ij = A._nz[i][j]
            for k in range(n):
                row: dict = {}

                def add(idx, val):
                    v = row.get(idx, zero) + val
                    if v:
                        row[idx] = v
                    else:
                        row.pop(idx, None)

                for m, c in ij.items():
                    add(k * n + m, c)
                for m, c in by_right[j][k]:
                    add(m * n + i, -c)
                for m, c in by_left[i][k]:
                    add(m * n + j, -c)
                if row:
                    rows.append(row)
    return rows


_DERIVATION_CACHE: dict = {}


def derivation_algebra(A: LeibnizAlgebra) -> DerivationAlgebra:
    """``D(A)``: null space of the derivation system, with its commutator table."""
    key = (A, A.name)
    hit = _DERIVATION_CACHE.get(key)
    if hit is not None:
        return hit
    n = A.dim
    space = null_space_sparse(derivation_constraints(A), n * n, A.field)
    D = DerivationAlgebra(A, space)
    for f in D.basis:
        if is_derivation(A, f) is not None:
            raise ConsistencyError("null-space basis element is not a derivation")
    if len(_DERIVATION_CACHE) > 256:
        _DERIVATION_CACHE.clear()
    _DERIVATION_CACHE[key] = D
    return D


@dataclass(frozen=True)
class DerivationIdeal:
    """An ideal of ``parent.lie`` given in ``parent``'s coordinates."""

    parent: DerivationAlgebra
    space: Subspace
    kind: str

    @property
    def dim(self) -> int:
        return self.space.dim

    def members(self) -> list[Matrix]:
        return [self.parent.element(c) for c in self.space.basis]

    def as_derivation_algebra(self, name: str = "") -> DerivationAlgebra:
        name = name or f"{self.kind}({self.parent.base.name})"
        if self.space.is_full():
            # same maps and table as the parent; skip rebuilding the commutator table
            D = copy.copy(self.parent)
            D.name, D.lie = name, self.parent.lie.renamed(name)
            return D
        n = self.parent.base.dim
        flat = Subspace.span([f.flatten() for f in self.members()], n * n, self.parent.field)
        return DerivationAlgebra(self.parent.base, flat, name)


def derivations_into(D: DerivationAlgebra, W: Subspace) -> Subspace:
    """``{f in D : Im f in W}`` in ``D``'s coordinates."""
    n = D.base.dim
    maps = [[W.residual(f.column(j)) for f in D.basis] for j in range(n)]
    return _common_kernel(D.dim, maps, D.field)


def _ideal(D: DerivationAlgebra, space: Subspace, kind: str) -> DerivationIdeal:
    if not is_ideal(D.lie, space):
        raise ConsistencyError(f"{kind} is not an ideal of {D.name}")
    return DerivationIdeal(D, space, kind)


def lie_derivations(A: LeibnizAlgebra, D: DerivationAlgebra | None = None) -> DerivationIdeal:
    """``D_Lie(A) = {f in D(A) : Im f in Z_Lie(A)}``."""
    D = D or derivation_algebra(A)
    return _ideal(D, derivations_into(D, lie_center(A)), "D_Lie")


def ideal_I(A: LeibnizAlgebra, D: DerivationAlgebra | None = None) -> DerivationIdeal:
    """``I = {f in D(A) : Im f in Leib(A)}``."""
    D = D or derivation_algebra(A)
    return _ideal(D, derivations_into(D, leibniz_kernel(A)), "I")


def left_multiplication_algebra(A: LeibnizAlgebra) -> tuple[DerivationAlgebra, AlgebraHom]:
    """``L(A) = {L_x}`` and the surjection ``x -> L_x`` (kernel ``Z^l(A)``)."""
    n = A.dim
    Ls = [A.left_matrix(A.unit(i)) for i in range(n)]
    space = Subspace.span([L.flatten() for L in Ls], n * n, A.field)
    L = DerivationAlgebra(A, space, f"L({A.name})")
    hom = AlgebraHom.from_matrix(A, L.lie, Matrix.from_columns([L.coordinates(m) for m in Ls], L.dim, A.field))
    return L, hom


@dataclass(frozen=True)
class IdentityAudit:
    holds: bool
    count: int
    failure: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.holds


def check_Lx_identity(A: LeibnizAlgebra, D: DerivationAlgebra | None = None) -> IdentityAudit:
    """Audit ``[f, L_x] = L_{f(x)}`` for every basis derivation and basis vector."""
    D = D or derivation_algebra(A)
    Ls = [A.left_matrix(A.unit(i)) for i in range(A.dim)]
    count = 0
    for a, f in enumerate(D.basis):
        for i, Lx in enumerate(Ls):
            count += 1
            if commutator(f, Lx) != A.left_matrix(f.column(i)):
                return IdentityAudit(False, count, (a, i))
    return IdentityAudit(True, count)


def quotient_lie_algebra(D: DerivationAlgebra, J: DerivationIdeal, name: str = "") -> tuple[LeibnizAlgebra, AlgebraHom]:
    g, proj = quotient_algebra(D.lie, J.space, name or f"{D.name}/{J.kind}")
    if not is_lie(g):
        raise ConsistencyError("quotient of a derivation algebra is not Lie")
    return g, proj


# -- D(A)/I and the embeddings around it ------------------------------------------

def _require_trivial_quotient_center(A: LeibnizAlgebra):
    Q, proj, Z = quotient_center(A)
    if not Z.is_zero():
        _, section, _ = quotient_coordinates(A.dim, leibniz_kernel(A))
        lifted = section(Z.basis[0])
        raise HypothesisError(
            "the center of A/Leib(A) is nontrivial",
            {"central_element": [str(a) for a in lifted],
             "quotient_center_dim": Z.dim})


@dataclass
class DModI:
    """``g = D(A)/I`` with everything needed to map into and out of it."""

    A: LeibnizAlgebra
    D: DerivationAlgebra
    I: DerivationIdeal
    g: LeibnizAlgebra
    proj: AlgebraHom
    section: Matrix


def d_mod_i(A: LeibnizAlgebra) -> DModI:
    D = derivation_algebra(A)
    I = ideal_I(A, D)
    g, proj = quotient_lie_algebra(D, I, f"D({A.name})/I")
    _, sec, _ = quotient_coordinates(D.dim, I.space)
    return DModI(A, D, I, g, proj, sec.matrix)


@dataclass(frozen=True)
class LEmbedding:
    """``L(A) -> D(A)/I``, ``L_x -> L_x + I``, with its certificates."""

    L: DerivationAlgebra
    hom: AlgebraHom
    check: HomCheck
    image: Subspace
    image_is_ideal: bool
    centralizer: Subspace
    context: DModI


def embed_L_into_DmodI(A: LeibnizAlgebra) -> LEmbedding:
    _require_trivial_quotient_center(A)
    ctx = d_mod_i(A)
    L, _ = left_multiplication_algebra(A)
    cols = [ctx.proj(ctx.D.coordinates(m)) for m in L.basis]
    hom = AlgebraHom.from_matrix(L.lie, ctx.g, Matrix.from_columns(cols, ctx.g.dim, A.field))
    check = certify_hom(hom)
    image = hom.image()
    return LEmbedding(L, hom, check, image, is_ideal(ctx.g, image), centralizer(ctx.g, image), ctx)


def restriction_embedding(K: LeibnizAlgebra, S: Subspace, chart: AlgebraHom | None = None) -> AlgebraHom:
    """``D(K) -> D(B)``, ``f -> f|_S``, where ``chart: B -> K`` identifies ``B`` with ``S``.

    ``S`` must be a characteristic ideal of ``K`` with ``C^l_K(S) = 0``; either
    failure raises :class:`HypothesisError` carrying the offending map or element.
    """
    if chart is None:
        B, chart = induced_algebra(K, S, name=f"{K.name}|S")
    else:
        B = chart.domain
        if chart.image() != S or chart.map.rank() != B.dim:
            raise InputError("chart must be injective with image S")
    if not is_ideal(K, S):
        raise HypothesisError("S is not an ideal of K", {"reason": "not_ideal"})
    DK = derivation_algebra(K)
    for a, f in enumerate(DK.basis):
        if not all(S.contains(f.apply(s)) for s in S.basis):
            raise HypothesisError("S is not a characteristic ideal of K",
                                  {"reason": "not_characteristic", "derivation_index": a,
                                   "derivation": f.to_strings()})
    C = left_centralizer(K, S)
    if not C.is_zero():
        raise HypothesisError("the left centralizer of S in K is nonzero",
                              {"reason": "centralizer", "element": [str(x) for x in C.basis[0]]})
    DB = derivation_algebra(B)
    cm = chart.matrix
    images = cm.columns()
    cols = []
    for f in DK.basis:
        restricted = [solve(cm, f.apply(v)) for v in images]
        cols.append(DB.coordinates(Matrix.from_columns(restricted, B.dim, B.field)))
    return AlgebraHom.from_matrix(DK.lie, DB.lie, Matrix.from_columns(cols, DB.dim, K.field))


@dataclass(frozen=True)
class PhiResult:
    """``phi: D(A) -> D(L(A))``, ``phi(f)(L_x) = L_{f(x)}``."""

    hom: AlgebraHom
    check: HomCheck
    kernel: Subspace
    I: DerivationIdeal
    L: DerivationAlgebra
    DL: DerivationAlgebra
    induced: AlgebraHom  # D(A)/I -> D(L(A))
    induced_check: HomCheck

    @property
    def kernel_is_I(self) -> bool:
        return self.kernel == self.I.space


def phi_to_DL(A: LeibnizAlgebra) -> PhiResult:
    _require_trivial_quotient_center(A)
    ctx = d_mod_i(A)
    L, to_L = left_multiplication_algebra(A)
    DL = derivation_algebra(L.lie)
    h = to_L.matrix
    preimages = [solve(h, unit_vector(L.dim, b, A.field)) for b in range(L.dim)]
    cols = []
    for f in ctx.D.basis:
        img = [to_L(f.apply(x)) for x in preimages]
        cols.append(DL.coordinates(Matrix.from_columns(img, L.dim, A.field)))
    hom = AlgebraHom.from_matrix(ctx.D.lie, DL.lie, Matrix.from_columns(cols, DL.dim, A.field))
    induced = AlgebraHom.from_matrix(ctx.g, DL.lie, hom.matrix @ ctx.section)
    return PhiResult(hom, certify_hom(hom), hom.kernel(), ctx.I, L, DL, induced, certify_hom(induced))


# -- towers --------------------------------------------------------------------

def adjoint_hom(G: LeibnizAlgebra, DG: DerivationAlgebra | None = None) -> AlgebraHom:
    """``ad: G -> D(G)``, ``x -> L_x``, in ``D(G)``'s coordinates."""
    DG = DG or derivation_algebra(G)
    cols = [DG.coordinates(G.left_matrix(G.unit(i))) for i in range(G.dim)]
    return AlgebraHom.from_matrix(G, DG.lie, Matrix.from_columns(cols, DG.dim, G.field))


@dataclass(frozen=True)
class TowerLevel:
    index: int
    algebra: LeibnizAlgebra
    center_dim: int
    centralizer_dim: int  # of the previous level's image (level 0: of L(A))
    embedding: AlgebraHom | None  # previous level -> this one
    embedding_check: HomCheck | None
    image_is_ideal: bool

    def to_json(self) -> dict:
        return {
            "level": self.index,
            "dim": self.algebra.dim,
            "center_dim": self.center_dim,
            "centralizer_dim": self.centralizer_dim,
            "image_is_ideal": self.image_is_ideal,
            "embedding": None if self.embedding is None else self.embedding.matrix.to_strings(),
            "embedding_injective_hom": None if self.embedding_check is None else self.embedding_check.embedding,
        }


@dataclass(frozen=True)
class Tower:
    A: LeibnizAlgebra
    levels: tuple[TowerLevel, ...]
    L_embedding: LEmbedding

    def dims(self) -> list[int]:
        return [lvl.algebra.dim for lvl in self.levels]

    def to_json(self) -> list[dict]:
        return [lvl.to_json() for lvl in self.levels]


def derivation_tower(A: LeibnizAlgebra, depth: int = 3) -> Tower:
    """``g = D(A)/I, D(g), D(D(g)), ...`` up to ``D^depth(g)``, linked by ``ad``."""
    if depth < 0:
        raise InputError("tower depth must be nonnegative")
    emb = embed_L_into_DmodI(A)
    g = emb.context.g
    levels = [TowerLevel(0, g, center(g).dim, emb.centralizer.dim, None, None, emb.image_is_ideal)]
    cur = g
    for n in range(1, depth + 1):
        Dcur = derivation_algebra(cur)
        ad = adjoint_hom(cur, Dcur)
        nxt = Dcur.lie.renamed(f"D^{n}(g)")
        ad = AlgebraHom(cur, nxt, ad.map)
        img = ad.image()
        levels.append(TowerLevel(n, nxt, center(nxt).dim, centralizer(nxt, img).dim, ad,
                                 certify_hom(ad), is_ideal(nxt, img)))
        cur = nxt
    return Tower(A, tuple(levels), emb)


def inner_derivations(G: LeibnizAlgebra) -> Subspace:
    """``ad(G)`` (= ``L(G)``) as a subspace of ``D(G)``'s coordinates."""
    return adjoint_hom(G).image()


def is_complete(G: LeibnizAlgebra) -> bool:
    """Trivial center and every derivation inner."""
    if not center(G).is_zero():
        return False
    return inner_derivations(G).is_full()


@dataclass(frozen=True)
class ISquared:
    """``phi: D^2(A) -> D(D(A)/I)``, ``phi(F)(f + I) = F(f) + I``, and its quotient."""

    D2: DerivationAlgebra
    I2: Subspace
    phi: AlgebraHom
    phi_check: HomCheck
    kernel: Subspace
    quotient: LeibnizAlgebra  # D^2(A)/I^2
    hom: AlgebraHom  # D^2(A)/I^2 -> D(D(A)/I)
    check: HomCheck
    Dg: DerivationAlgebra
    context: DModI

    @property
    def kernel_is_I2(self) -> bool:
        return self.kernel == self.I2


def I_squared_embedding(A: LeibnizAlgebra) -> ISquared:
    if not is_perfect(A):
        raise HypothesisError("A is not perfect", {"reason": "not_perfect"})
    _require_trivial_quotient_center(A)
    ctx = d_mod_i(A)
    D2 = derivation_algebra(ctx.D.lie)
    I2 = derivations_into(D2, ctx.I.space)
    if not is_ideal(D2.lie, I2):
        raise ConsistencyError("I^2 is not an ideal of D^2(A)")
    Dg = derivation_algebra(ctx.g)
    P, S = ctx.proj.matrix, ctx.section
    for F in D2.basis:
        if not all(ctx.I.space.contains(F.apply(v)) for v in ctx.I.space.basis):
            raise ConsistencyError("I is not characteristic in D(A)")
    cols = [Dg.coordinates(P @ F @ S) for F in D2.basis]
    phi = AlgebraHom.from_matrix(D2.lie, Dg.lie, Matrix.from_columns(cols, Dg.dim, A.field))
    Q, _ = quotient_algebra(D2.lie, I2, f"D^2({A.name})/I^2")
    _, sec, _ = quotient_coordinates(D2.dim, I2)
    hom = AlgebraHom.from_matrix(Q, Dg.lie, phi.matrix @ sec.matrix)
    return ISquared(D2, I2, phi, certify_hom(phi), phi.kernel(), Q, hom, certify_hom(hom), Dg, ctx)


__all__ = [
    "DerivationAlgebra",
    "DerivationIdeal",
    "IdentityAudit",
    "check_Lx_identity",
    "commutator",
    "derivation_algebra",
    "derivation_constraints",
    "derivation_tower",
    "derivations_into",
    "embed_L_into_DmodI",
    "I_squared_embedding",
    "ideal_I",
    "inner_derivations",
    "is_complete",
    "is_derivation",
    "left_multiplication_algebra",
    "lie_derivations",
    "phi_to_DL",
    "quotient_lie_algebra",
    "restriction_embedding",
    "adjoint_hom",
]
