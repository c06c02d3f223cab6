"""Structural subspaces and predicates of a Leibniz algebra."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import (
    LeibnizAlgebra,
    _check_sub,
    ideal_closure,
    ideal_failure,
    is_lie,
    is_subalgebra,
    quotient_algebra,
)
from .errors import ConsistencyError, InputError
from .exactla import Subspace, null_space_sparse, vec_add


def _common_kernel(n: int, maps: Sequence[Sequence[Sequence]], field) -> Subspace:
    """``{x : T(x) = 0 for every T}``, each ``T`` given by its images of ``e_0..e_{n-1}``."""
    rows = []
    for images in maps:
        if not images:
            continue
        for k in range(len(images[0])):
            row = {i: img[k] for i, img in enumerate(images) if img[k]}
            if row:
                rows.append(row)
    return null_space_sparse(rows, n, field)


def derived_subalgebra(A: LeibnizAlgebra) -> Subspace:
    """``A^2 = [A, A]``."""
    n = A.dim
    return Subspace.span([A.sc[i][j] for i in range(n) for j in range(n)], n, A.field)


def is_perfect(A: LeibnizAlgebra) -> bool:
    return derived_subalgebra(A).is_full()


def leibniz_kernel(A: LeibnizAlgebra) -> Subspace:
    """Span of all squares ``[x, x]``.

    Spanned by ``[e_i, e_i]`` and ``[e_i, e_j] + [e_j, e_i]``, which gives the
    right answer in characteristic 2 as well.
    """
    n = A.dim
    vecs = [A.sc[i][i] for i in range(n)]
    vecs += [vec_add(A.sc[i][j], A.sc[j][i]) for i in range(n) for j in range(i + 1, n)]
    return Subspace.span(vecs, n, A.field)


def left_center(A: LeibnizAlgebra) -> Subspace:
    """``Z^l(A) = {x : [x, y] = 0 for all y}``."""
    n = A.dim
    maps = [[A.sc[i][j] for i in range(n)] for j in range(n)]
    return _common_kernel(n, maps, A.field)


def lie_center(A: LeibnizAlgebra) -> Subspace:
    """``Z_Lie(A) = {x : [x, y] + [y, x] = 0 for all y}``; all of A when A is Lie."""
    n = A.dim
    maps = [[vec_add(A.sc[i][j], A.sc[j][i]) for i in range(n)] for j in range(n)]
    return _common_kernel(n, maps, A.field)


def center(A: LeibnizAlgebra) -> Subspace:
    """Two-sided center ``{x : [x, y] = [y, x] = 0 for all y}``."""
    n = A.dim
    maps = [[A.sc[i][j] for i in range(n)] for j in range(n)]
    maps += [[A.sc[j][i] for i in range(n)] for j in range(n)]
    return _common_kernel(n, maps, A.field)


def quotient_center(A: LeibnizAlgebra):
    """``(Q, proj, Z(Q))`` for ``Q = A / Leib(A)``."""
    Q, proj = quotient_algebra(A, leibniz_kernel(A), name=f"{A.name}/Leib")
    return Q, proj, center(Q)


def center_of_quotient_trivial(A: LeibnizAlgebra) -> bool:
    """Whether ``A / Leib(A)`` has trivial center."""
    return quotient_center(A)[2].is_zero()


def left_centralizer(K: LeibnizAlgebra, S: Subspace) -> Subspace:
    """``C^l_K(S) = {x in K : [x, s] = 0 for all s in S}``."""
    _check_sub(K, S)
    n = K.dim
    maps = [[K.bracket(K.unit(i), s) for i in range(n)] for s in S.basis]
    return _common_kernel(n, maps, K.field)


def centralizer(K: LeibnizAlgebra, S: Subspace) -> Subspace:
    """Two-sided centralizer ``{x : [x, s] = [s, x] = 0 for all s in S}``."""
    _check_sub(K, S)
    n = K.dim
    maps = [[K.bracket(K.unit(i), s) for i in range(n)] for s in S.basis]
    maps += [[K.bracket(s, K.unit(i)) for i in range(n)] for s in S.basis]
    return _common_kernel(n, maps, K.field)


def normalizer(K: LeibnizAlgebra, S: Subspace) -> Subspace:
    """Largest subalgebra of ``K`` containing the subalgebra ``S`` as an ideal.

    Computed as the linear set ``{x : [x, S] + [S, x] in S}``; product closure
    and ``S`` being an ideal of the result are asserted rather than assumed.
    """
    _check_sub(K, S)
    if not is_subalgebra(K, S):
        raise InputError("normalizer requires a subalgebra")
    n = K.dim
    maps = [[S.residual(K.bracket(K.unit(i), s)) for i in range(n)] for s in S.basis]
    maps += [[S.residual(K.bracket(s, K.unit(i))) for i in range(n)] for s in S.basis]
    N = _common_kernel(n, maps, K.field)
    if not is_subalgebra(K, N):
        raise ConsistencyError("normalizer is not closed under the product")
    if not S <= N or ideal_failure(K, S, within=N) is not None:
        raise ConsistencyError("normalizer does not contain the subalgebra as an ideal")
    return N


@dataclass(frozen=True)
class SubidealResult:
    """``chain`` runs from ``S`` up to ``K`` when ``holds``; each link is an ideal of the next."""

    holds: bool
    chain: tuple[Subspace, ...]
    series: tuple[Subspace, ...]

    def __bool__(self) -> bool:
        return self.holds


def is_subideal(K: LeibnizAlgebra, S: Subspace) -> SubidealResult:
    """Decide whether ``S`` is a subideal of ``K`` via iterated ideal closures.

    ``K_0 = K`` and ``K_{i+1}`` is the ideal of ``K_i`` generated by ``S``; the
    series is non-increasing and ``S`` is a subideal iff it reaches ``S``.
    """
    _check_sub(K, S)
    if not is_subalgebra(K, S):
        raise InputError("subideal test requires a subalgebra")
    cur = Subspace.full(K.dim, K.field)
    series = [cur]
    while cur != S:
        nxt = ideal_closure(K, S, within=cur)
        if nxt == cur:
            return SubidealResult(False, (), tuple(series))
        series.append(nxt)
        cur = nxt
    return SubidealResult(True, tuple(reversed(series)), tuple(series))


@dataclass(frozen=True)
class InvariantReport:
    name: str
    dim: int
    derived: Subspace
    leib: Subspace
    left_center: Subspace
    lie_center: Subspace
    center: Subspace
    perfect: bool
    lie: bool
    quotient_center_trivial: bool
    extra: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "algebra": self.name,
            "dim": self.dim,
            "derived": self.derived.to_strings(),
            "leib": self.leib.to_strings(),
            "left_center": self.left_center.to_strings(),
            "lie_center": self.lie_center.to_strings(),
            "center": self.center.to_strings(),
            "perfect": self.perfect,
            "lie": self.lie,
            "quotient_center_trivial": self.quotient_center_trivial,
        }

    def table(self) -> str:
        rows = [
            ("algebra", self.name),
            ("dim", self.dim),
            ("dim A^2", self.derived.dim),
            ("dim Leib", self.leib.dim),
            ("dim Z^l", self.left_center.dim),
            ("dim Z_Lie", self.lie_center.dim),
            ("dim Z", self.center.dim),
            ("perfect", self.perfect),
            ("Lie", self.lie),
            ("Z(A/Leib) = 0", self.quotient_center_trivial),
        ]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def invariant_report(A: LeibnizAlgebra) -> InvariantReport:
    leib = leibniz_kernel(A)
    zl = left_center(A)
    if not leib <= zl:
        raise ConsistencyError("Leib(A) is not contained in the left center")
    derived = derived_subalgebra(A)
    return InvariantReport(
        name=A.name,
        dim=A.dim,
        derived=derived,
        leib=leib,
        left_center=zl,
        lie_center=lie_center(A),
        center=center(A),
        perfect=derived.is_full(),
        lie=is_lie(A),
        quotient_center_trivial=center_of_quotient_trivial(A),
    )
