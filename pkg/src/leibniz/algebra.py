"""Leibniz algebras given by structure constants.

An algebra of dimension ``n`` is a tensor ``sc[i][j][k]`` with
``[e_i, e_j] = sum_k sc[i][j][k] e_k``.  Everything is stored in the *left*
convention, where every left multiplication ``L_x = [x, -]`` is a derivation:

    [x, [y, z]] = [[x, y], z] + [y, [x, z]]

Right Leibniz input is transposed on ingest and remembered in
``source_orientation`` so it can be written back unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InputError, NotAnIdealError
from .exactla import (
    QQ,
    Field,
    LinearMap,
    Matrix,
    Subspace,
    quotient_coordinates,
    unit_vector,
)


def _dense(d: dict, n: int, field: Field) -> tuple:
    out = [field.zero] * n
    for k, a in d.items():
        out[k] = a
    return tuple(out)


def _axpy(acc: dict, c, v: dict, zero) -> None:
    """``acc += c * v`` on sparse vectors, in place."""
    for k, a in v.items():
        val = acc.get(k, zero) + c * a
        if val:
            acc[k] = val
        else:
            acc.pop(k, None)


class LeibnizAlgebra:
    """Finite-dimensional left Leibniz algebra over ``QQ`` or ``GF(p)``.

    Instances are immutable and compare structurally (field and tensor); the
    ``name`` is a label only.  Validity of the Leibniz identity is *not*
    assumed: call :func:`check_leibniz`.
    """

    __slots__ = ("name", "field", "dim", "sc", "source_orientation", "_nz", "_hash")

    def __init__(self, sc: Sequence, field: Field = QQ, name: str = "", orientation: str = "left"):
        if orientation not in ("left", "right"):
            raise InputError(f"orientation must be 'left' or 'right', got {orientation!r}")
        n = len(sc)
        for i, plane in enumerate(sc):
            if len(plane) != n or any(len(row) != n for row in plane):
                raise InputError(f"structure tensor is not {n}x{n}x{n} (slice {i})")
        data = tuple(tuple(tuple(field(a) for a in row) for row in plane) for plane in sc)
        if orientation == "right":
            data = tuple(tuple(data[j][i] for j in range(n)) for i in range(n))
        self.name = name
        self.field = field
        self.dim = n
        self.sc = data
        self.source_orientation = orientation
        self._nz = tuple(
            tuple({k: a for k, a in enumerate(data[i][j]) if a} for j in range(n))
            for i in range(n))
        self._hash = None

    @classmethod
    def abelian(cls, n: int, field: Field = QQ, name: str = "") -> LeibnizAlgebra:
        z = field.zero
        return cls([[[z] * n for _ in range(n)] for _ in range(n)], field, name or f"ab{n}")

    @classmethod
    def from_products(cls, n: int, products: dict, field: Field = QQ, name: str = "") -> LeibnizAlgebra:
        """Build from ``{(i, j): {k: c}}``; unlisted products are zero."""
        sc = [[[field.zero] * n for _ in range(n)] for _ in range(n)]
        for (i, j), vec in products.items():
            for k, c in vec.items():
                sc[i][j][k] = field(c)
        return cls(sc, field, name)

    def renamed(self, name: str) -> LeibnizAlgebra:
        out = object.__new__(LeibnizAlgebra)
        for attr in ("field", "dim", "sc", "source_orientation", "_nz", "_hash"):
            setattr(out, attr, getattr(self, attr))
        out.name = name
        return out

    def oriented_sc(self, orientation: str | None = None) -> tuple:
        """The tensor in the given (default: source) orientation."""
        orientation = orientation or self.source_orientation
        if orientation == "left":
            return self.sc
        n = self.dim
        return tuple(tuple(self.sc[j][i] for j in range(n)) for i in range(n))

    def unit(self, i: int) -> tuple:
        return unit_vector(self.dim, i, self.field)

    def zero_vector(self) -> tuple:
        return (self.field.zero,) * self.dim

    def basis_product(self, i: int, j: int) -> tuple:
        return self.sc[i][j]

    def sparse_product(self, i: int, j: int) -> dict:
        return self._nz[i][j]

    def sparse_bracket(self, x: dict, y: dict) -> dict:
        out: dict = {}
        zero = self.field.zero
        for i, a in x.items():
            row = self._nz[i]
            for j, b in y.items():
                v = row[j]
                if v:
                    _axpy(out, a * b, v, zero)
        return out

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        if len(x) != self.dim or len(y) != self.dim:
            raise InputError(f"vectors of length {len(x)}, {len(y)} in a {self.dim}-dim algebra")
        f = self.field
        xs = {i: f(a) for i, a in enumerate(x) if a}
        ys = {j: f(b) for j, b in enumerate(y) if b}
        return _dense(self.sparse_bracket(xs, ys), self.dim, f)

    def left_matrix(self, x: Sequence) -> Matrix:
        """Matrix of ``L_x = [x, -]``."""
        cols = [self.bracket(x, self.unit(j)) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.dim, self.field)

    def right_matrix(self, y: Sequence) -> Matrix:
        """Matrix of ``R_y = [-, y]``."""
        cols = [self.bracket(self.unit(i), y) for i in range(self.dim)]
        return Matrix.from_columns(cols, self.dim, self.field)

    def nonzero_constants(self):
        for i in range(self.dim):
            for j in range(self.dim):
                for k, c in self._nz[i][j].items():
                    yield i, j, k, c

    def __eq__(self, other) -> bool:
        if not isinstance(other, LeibnizAlgebra):
            return NotImplemented
        return self.field == other.field and self.sc == other.sc

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.sc))
        return self._hash

    def __repr__(self) -> str:
        return f"LeibnizAlgebra({self.name!r}, dim={self.dim}, field={self.field})"


def product(A: LeibnizAlgebra, x: Sequence, y: Sequence) -> tuple:
    return A.bracket(x, y)


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of :func:`check_leibniz`; truthy iff the identity holds."""

    holds: bool
    triple: tuple[int, int, int] | None = None
    lhs: tuple | None = None
    rhs: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


def check_leibniz(A: LeibnizAlgebra) -> IdentityCheck:
    """Check ``[e_i,[e_j,e_k]] = [[e_i,e_j],e_k] + [e_j,[e_i,e_k]]`` on all triples.

    On failure the lexicographically first ``(i, j, k)`` is reported with both
    sides as dense vectors.
    """
    n, f = A.dim, A.field
    zero = f.zero
    nz = A._nz

    def left(i: int, v: dict) -> dict:
        out: dict = {}
        row = nz[i]
        for j, b in v.items():
            if row[j]:
                _axpy(out, b, row[j], zero)
        return out

    def right(u: dict, k: int) -> dict:
        out: dict = {}
        for j, a in u.items():
            if nz[j][k]:
                _axpy(out, a, nz[j][k], zero)
        return out

    for i in range(n):
        for j in range(n):
            ij = nz[i][j]
            for k in range(n):
                lhs = left(i, nz[j][k])
                rhs = right(ij, k)
                extra = left(j, nz[i][k])
                for key, a in extra.items():
                    val = rhs.get(key, zero) + a
                    if val:
                        rhs[key] = val
                    else:
                        rhs.pop(key, None)
                if lhs != rhs:
                    return IdentityCheck(False, (i, j, k), _dense(lhs, n, f), _dense(rhs, n, f))
    return IdentityCheck(True)


def is_lie(A: LeibnizAlgebra) -> bool:
    """Alternating test: ``[e_i,e_i] = 0`` and ``[e_i,e_j] = -[e_j,e_i]``."""
    n = A.dim
    for i in range(n):
        if A._nz[i][i]:
            return False
        for j in range(i + 1, n):
            a, b = A.sc[i][j], A.sc[j][i]
            if any(x + y for x, y in zip(a, b)):
                return False
    return True


# -- subspaces of an algebra --------------------------------------------------

def _check_sub(A: LeibnizAlgebra, S: Subspace):
    if S.ambient_dim != A.dim or S.field != A.field:
        raise InputError(f"subspace of F^{S.ambient_dim} over {S.field} does not live in {A!r}")


def _sparse_rows(S: Subspace) -> list[dict]:
    return [{k: a for k, a in enumerate(r) if a} for r in S.basis]


def products_with(A: LeibnizAlgebra, W: Subspace, S: Subspace, left: bool = True, right: bool = True):
    """Yield ``((i, j, side), [w_i, s_j] or [s_j, w_i])`` over the bases of W and S."""
    n, f = A.dim, A.field
    ws, ss = _sparse_rows(W), _sparse_rows(S)
    for i, w in enumerate(ws):
        for j, s in enumerate(ss):
            if left:
                yield (i, j, "left"), _dense(A.sparse_bracket(w, s), n, f)
            if right:
                yield (i, j, "right"), _dense(A.sparse_bracket(s, w), n, f)


def ideal_failure(A: LeibnizAlgebra, S: Subspace, within: Subspace | None = None,
                  left: bool = True, right: bool = True):
    """First basis product escaping ``S``, as ``(i, j, side)``; None if closed.

    ``i`` indexes the basis of ``within`` (default: the standard basis of A),
    ``j`` the RREF basis of ``S``.  ``side == "left"`` means ``[w_i, s_j]``.
    """
    _check_sub(A, S)
    W = within if within is not None else Subspace.full(A.dim, A.field)
    for pair, v in products_with(A, W, S, left, right):
        if not S.contains(v):
            return pair
    return None


def is_left_ideal(A: LeibnizAlgebra, S: Subspace, within: Subspace | None = None) -> bool:
    """``[A, S] in S``."""
    return ideal_failure(A, S, within, left=True, right=False) is None


def is_right_ideal(A: LeibnizAlgebra, S: Subspace, within: Subspace | None = None) -> bool:
    """``[S, A] in S``."""
    return ideal_failure(A, S, within, left=False, right=True) is None


def is_ideal(A: LeibnizAlgebra, S: Subspace, within: Subspace | None = None) -> bool:
    return ideal_failure(A, S, within) is None


def is_subalgebra(A: LeibnizAlgebra, S: Subspace) -> bool:
    return ideal_failure(A, S, within=S, left=True, right=False) is None


def subalgebra_closure(A: LeibnizAlgebra, S: Subspace) -> Subspace:
    _check_sub(A, S)
    cur = S
    for _ in range(A.dim + 1):
        new = Subspace.span(cur.basis + tuple(v for _, v in products_with(A, cur, cur, right=False)),
                            A.dim, A.field)
        if new == cur:
            return cur
        cur = new
    return cur


def ideal_closure(A: LeibnizAlgebra, S: Subspace, within: Subspace | None = None) -> Subspace:
    """Smallest two-sided ideal of ``within`` (default: A) containing ``S``."""
    _check_sub(A, S)
    W = within if within is not None else Subspace.full(A.dim, A.field)
    cur = S
    for _ in range(A.dim + 1):
        new = Subspace.span(cur.basis + tuple(v for _, v in products_with(A, W, cur)), A.dim, A.field)
        if new == cur:
            return cur
        cur = new
    return cur


# -- homomorphisms ------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraHom:
    """Linear map between algebras, meant to preserve products (see :func:`certify_hom`)."""

    domain: LeibnizAlgebra
    codomain: LeibnizAlgebra
    map: LinearMap

    def __post_init__(self):
        if (self.map.domain_dim, self.map.codomain_dim) != (self.domain.dim, self.codomain.dim):
            raise InputError("linear map dimensions do not match the algebras")

    @classmethod
    def from_matrix(cls, domain: LeibnizAlgebra, codomain: LeibnizAlgebra, m: Matrix) -> AlgebraHom:
        return cls(domain, codomain, LinearMap(domain.dim, codomain.dim, m))

    @classmethod
    def identity(cls, A: LeibnizAlgebra) -> AlgebraHom:
        return cls.from_matrix(A, A, Matrix.identity(A.dim, A.field))

    @property
    def matrix(self) -> Matrix:
        return self.map.matrix

    def __call__(self, v: Sequence) -> tuple:
        return self.map(v)

    def compose(self, other: AlgebraHom) -> AlgebraHom:
        """``self o other``."""
        return AlgebraHom(other.domain, self.codomain, self.map.compose(other.map))

    def kernel(self) -> Subspace:
        return self.map.kernel()

    def image(self) -> Subspace:
        return self.map.image()


@dataclass(frozen=True)
class HomCheck:
    is_hom: bool
    failing_pair: tuple[int, int] | None
    injective: bool
    surjective: bool
    rank: int

    def __bool__(self) -> bool:
        return self.is_hom

    @property
    def embedding(self) -> bool:
        return self.is_hom and self.injective


def certify_hom(h: AlgebraHom) -> HomCheck:
    """Check ``h([e_i, e_j]) = [h e_i, h e_j]`` on all basis pairs, plus rank data."""
    A, B = h.domain, h.codomain
    cols = h.matrix.columns()
    failing = None
    for i in range(A.dim):
        for j in range(A.dim):
            if h(A.sc[i][j]) != B.bracket(cols[i], cols[j]):
                failing = (i, j)
                break
        if failing:
            break
    r = h.map.rank()
    return HomCheck(failing is None, failing, r == A.dim, r == B.dim, r)


# -- derived algebras ---------------------------------------------------------

def quotient_algebra(A: LeibnizAlgebra, J: Subspace, name: str = "") -> tuple[LeibnizAlgebra, AlgebraHom]:
    """``A / J`` on the non-pivot coordinates of ``J``, with its projection."""
    _check_sub(A, J)
    bad = ideal_failure(A, J)
    if bad is not None:
        raise NotAnIdealError(f"subspace is not an ideal: product {bad} escapes", bad)
    proj, _, reps = quotient_coordinates(A.dim, J)
    sc = [[proj(A.sc[a][b]) for b in reps] for a in reps]
    Q = LeibnizAlgebra(sc, A.field, name or f"{A.name}/J")
    return Q, AlgebraHom(A, Q, proj)


def induced_algebra(A: LeibnizAlgebra, S: Subspace, name: str = "") -> tuple[LeibnizAlgebra, AlgebraHom]:
    """The subalgebra ``S`` in its RREF basis, with the inclusion into ``A``."""
    _check_sub(A, S)
    bad = ideal_failure(A, S, within=S, right=False)
    if bad is not None:
        raise InputError(f"subspace is not a subalgebra: product {bad} escapes")
    rows = S.basis
    sc = [[S.coordinates(A.bracket(x, y)) for y in rows] for x in rows]
    B = LeibnizAlgebra(sc, A.field, name or f"{A.name}|S")
    inc = Matrix.from_columns(rows, A.dim, A.field)
    return B, AlgebraHom.from_matrix(B, A, inc)


def direct_product(A: LeibnizAlgebra, B: LeibnizAlgebra, name: str = "") -> LeibnizAlgebra:
    if A.field != B.field:
        raise InputError(f"mixed fields: {A.field} and {B.field}")
    n, m = A.dim, B.dim
    z = A.field.zero
    sc = [[[z] * (n + m) for _ in range(n + m)] for _ in range(n + m)]
    for i, j, k, c in A.nonzero_constants():
        sc[i][j][k] = c
    for i, j, k, c in B.nonzero_constants():
        sc[n + i][n + j][n + k] = c
    return LeibnizAlgebra(sc, A.field, name or f"{A.name}x{B.name}")


def component(n_before: int, n: int, total: int, field: Field = QQ) -> Subspace:
    """Coordinates ``n_before .. n_before+n-1`` of ``F^total`` as a subspace."""
    if n_before < 0 or n < 0 or n_before + n > total:
        raise InputError(f"coordinates {n_before}..{n_before + n - 1} do not fit in dimension {total}")
    return Subspace(total, tuple(unit_vector(total, n_before + i, field) for i in range(n)), field,
                    _trusted=True)
