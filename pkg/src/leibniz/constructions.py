"""Builders: both holomorphs, the hemisemidirect product and the non-perfectness witness.

Basis order is always "original algebra first": ``A`` occupies coordinates
``0 .. n-1`` of every ambient algebra built here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    AlgebraHom,
    LeibnizAlgebra,
    check_leibniz,
    component,
    direct_product,
    is_lie,
    quotient_algebra,
)
from .derivations import (
    commutator,
    derivation_algebra,
    is_derivation,
    lie_derivations,
)
from .errors import ConsistencyError, HypothesisError, InputError
from .exactla import LinearMap, Matrix, Subspace, is_zero
from .invariants import derived_subalgebra, lie_center


def _checked(H: LeibnizAlgebra) -> LeibnizAlgebra:
    res = check_leibniz(H)
    if not res:
        raise ConsistencyError(f"constructed algebra {H.name} violates the Leibniz identity at {res.triple}")
    return H


def hol(A: LeibnizAlgebra) -> tuple[LeibnizAlgebra, LinearMap]:
    """Holomorph ``A + D(A)`` with ``[x+f, y+g] = [x,y] + f(y) + [L_x, g] + [f, g]``.

    ``A`` sits in the first ``n`` coordinates, but in general *not* as an ideal.
    """
    n, fld = A.dim, A.field
    D = derivation_algebra(A)
    d = D.dim
    N = n + d
    z = fld.zero
    sc = [[[z] * N for _ in range(N)] for _ in range(N)]
    Ls = [A.left_matrix(A.unit(i)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            sc[i][j][:n] = A.sc[i][j]
        for b, g in enumerate(D.basis):
            sc[i][n + b][n:] = D.coordinates(commutator(Ls[i], g))
    for a, f in enumerate(D.basis):
        for j in range(n):
            sc[n + a][j][:n] = f.column(j)
        for b in range(d):
            sc[n + a][n + b][n:] = D.lie.sc[a][b]
    H = _checked(LeibnizAlgebra(sc, fld, f"hol({A.name})"))
    emb = LinearMap.from_matrix(Matrix.from_columns([H.unit(i) for i in range(n)], N, fld))
    return H, emb


def hol_lie(A: LeibnizAlgebra) -> tuple[LeibnizAlgebra, AlgebraHom]:
    """Lie-holomorph ``A x| D_Lie(A)`` with ``[(x,f),(y,g)] = ([x,y] + f(y) - g(x), [f,g])``."""
    n, fld = A.dim, A.field
    DL = lie_derivations(A).as_derivation_algebra()
    d = DL.dim
    N = n + d
    z = fld.zero
    sc = [[[z] * N for _ in range(N)] for _ in range(N)]
    for i in range(n):
        for j in range(n):
            sc[i][j][:n] = A.sc[i][j]
        for b, g in enumerate(DL.basis):
            sc[i][n + b][:n] = [-a for a in g.column(i)]
    for a, f in enumerate(DL.basis):
        for j in range(n):
            sc[n + a][j][:n] = f.column(j)
        for b in range(d):
            sc[n + a][n + b][n:] = DL.lie.sc[a][b]
    H = _checked(LeibnizAlgebra(sc, fld, f"hol_Lie({A.name})"))
    emb = AlgebraHom.from_matrix(A, H, Matrix.from_columns([H.unit(i) for i in range(n)], N, fld))
    return H, emb


@dataclass(frozen=True)
class Representation:
    """Left module of a Lie algebra: ``action[i]`` is the matrix of ``e_i``."""

    lie: LeibnizAlgebra
    module_dim: int
    action: tuple[Matrix, ...]

    def __post_init__(self):
        if len(self.action) != self.lie.dim:
            raise InputError(f"{len(self.action)} action matrices for a {self.lie.dim}-dim algebra")
        for m in self.action:
            if m.shape != (self.module_dim, self.module_dim) or m.field != self.lie.field:
                raise InputError("action matrices must be square of size module_dim over the algebra's field")

    def rho(self, x) -> Matrix:
        out = Matrix.zero(self.module_dim, self.module_dim, self.lie.field)
        for c, m in zip(x, self.action):
            if c:
                out = out + m.scale(c)
        return out


def certify_representation(rep: Representation):
    """None if ``rho([x,y]) = [rho x, rho y]`` on basis pairs, else the first failing pair."""
    g = rep.lie
    for i in range(g.dim):
        for j in range(g.dim):
            if rep.rho(g.sc[i][j]) != commutator(rep.action[i], rep.action[j]):
                return (i, j)
    return None


def module_image(rep: Representation) -> Subspace:
    """``g . V``: span of all columns of the action matrices."""
    cols = [c for m in rep.action for c in m.columns()]
    return Subspace.span(cols, rep.module_dim, rep.lie.field)


def hemisemidirect(rep: Representation, name: str = "") -> LeibnizAlgebra:
    """``g x|_H V`` with ``[(x,u),(y,v)] = ([x,y], x.v)``; characteristic zero only."""
    g = rep.lie
    if g.field.characteristic != 0:
        raise HypothesisError("the hemisemidirect product is only built in characteristic zero",
                              {"reason": "positive_characteristic", "p": g.field.p})
    if not is_lie(g) or not check_leibniz(g):
        raise InputError("the acting algebra must be a Lie algebra")
    bad = certify_representation(rep)
    if bad is not None:
        raise InputError(f"not a representation: rho([e_{bad[0]}, e_{bad[1]}]) != [rho, rho]")
    n, m = g.dim, rep.module_dim
    N = n + m
    z = g.field.zero
    sc = [[[z] * N for _ in range(N)] for _ in range(N)]
    for i in range(n):
        for j in range(n):
            sc[i][j][:n] = g.sc[i][j]
        for k in range(m):
            sc[i][n + k][n:] = rep.action[i].column(k)
    return _checked(LeibnizAlgebra(sc, g.field, name or f"{g.name}xH{m}"))


@dataclass(frozen=True)
class WitnessCertificate:
    """``K = A x A/[A,A]`` and ``f(x, pi y) = (0, pi x)``: a Lie-derivation moving ``A``."""

    A: LeibnizAlgebra
    ambient: LeibnizAlgebra
    embedded_A: Subspace
    projection: AlgebraHom
    f: Matrix
    kills_products: bool  # f([X,Y]) = 0
    leibniz_sum_vanishes: bool  # [fX,Y] + [X,fY] = 0
    f_is_derivation: bool
    f_is_lie_derivation: bool
    f_escapes_A: bool
    escaping_index: int | None

    @property
    def valid(self) -> bool:
        return self.f_is_derivation and self.f_is_lie_derivation and self.f_escapes_A

    def to_json(self) -> dict:
        from .io import algebra_to_json

        return {
            "algebra": self.A.name,
            "ambient": algebra_to_json(self.ambient),
            "embedded_A": self.embedded_A.to_strings(),
            "projection": self.projection.matrix.to_strings(),
            "f": self.f.to_strings(),
            "escaping_index": self.escaping_index,
            "checks": {
                "f_is_derivation": self.f_is_derivation,
                "f_is_lie_derivation": self.f_is_lie_derivation,
                "f_escapes_A": self.f_escapes_A,
                "kills_products": self.kills_products,
                "leibniz_sum_vanishes": self.leibniz_sum_vanishes,
            },
        }


def witness_nonperfect(A: LeibnizAlgebra) -> WitnessCertificate:
    """Embed a non-perfect ``A`` as an ideal that some Lie-derivation does not preserve."""
    A2 = derived_subalgebra(A)
    if A2.is_full():
        raise HypothesisError("A is perfect: no witness exists", {"reason": "perfect"})
    Q, proj = quotient_algebra(A, A2, name=f"{A.name}/A^2")
    K = direct_product(A, Q, name=f"witness({A.name})")
    n, q, fld = A.dim, Q.dim, A.field
    N = n + q
    P = proj.matrix
    rows = [[fld.zero] * N for _ in range(N)]
    for r in range(q):
        for c in range(n):
            rows[n + r][c] = P[r, c]
    f = Matrix(rows, fld)
    cols = f.columns()
    kills = all(is_zero(f.apply(K.sc[i][j])) for i in range(N) for j in range(N))
    sums = all(is_zero(tuple(a + b for a, b in zip(K.bracket(cols[i], K.unit(j)), K.bracket(K.unit(i), cols[j]))))
               for i in range(N) for j in range(N))
    zlie = lie_center(K)
    emb = component(0, n, N, fld)
    escaping = next((i for i in range(n) if not emb.contains(cols[i])), None)
    return WitnessCertificate(
        A=A, ambient=K, embedded_A=emb, projection=proj, f=f,
        kills_products=kills, leibniz_sum_vanishes=sums,
        f_is_derivation=is_derivation(K, f) is None,
        f_is_lie_derivation=all(zlie.contains(c) for c in cols),
        f_escapes_A=escaping is not None,
        escaping_index=escaping,
    )


__all__ = [
    "Representation",
    "WitnessCertificate",
    "certify_representation",
    "hemisemidirect",
    "hol",
    "hol_lie",
    "module_image",
    "witness_nonperfect",
]
