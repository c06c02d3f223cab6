"""Exact scalars and the linear-algebra kernel.

Two ground fields are supported: the rationals (``fractions.Fraction``) and
prime fields GF(p) for p < 2**31 (:class:`Mod`).  Vectors are plain tuples of
field elements; matrices are row-major :class:`Matrix` values.  A
:class:`Subspace` always stores its basis in canonical reduced row-echelon
form, so two subspaces are equal exactly when their basis tuples agree.

Elimination is done on sparse rows (``dict`` column -> value) by an
incremental reduced echelon builder; the structure-constant systems that the
rest of the package produces are very sparse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InputError

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")
_INTEGER_RE = re.compile(r"^\s*-?\d+\s*$")
_MAX_PRIME = 2**31


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Mod:
    """Residue class modulo a prime ``p``, stored as an int in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _other(self, other) -> int:
        if isinstance(other, Mod):
            if other.p != self.p:
                raise InputError(f"mixed fields: GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other % self.p
        raise InputError(f"mixed fields: GF({self.p}) and {type(other).__name__}")

    def __add__(self, other):
        return Mod(self.v + self._other(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Mod(self.v - self._other(other), self.p)

    def __rsub__(self, other):
        return Mod(self._other(other) - self.v, self.p)

    def __mul__(self, other):
        return Mod(self.v * self._other(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> Mod:
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * Mod(self._other(other), self.p).inverse()

    def __rtruediv__(self, other):
        return Mod(self._other(other), self.p) * self.inverse()

    def __bool__(self) -> bool:
        return self.v != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.v, self.p))

    def __repr__(self) -> str:
        return f"Mod({self.v}, {self.p})"

    def __str__(self) -> str:
        return str(self.v)


@dataclass(frozen=True)
class Field:
    """Field descriptor: ``Field()`` is the rationals, ``Field(p)`` is GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or not _is_prime(self.p) or self.p >= _MAX_PRIME:
                raise InputError(f"GF(p) requires a prime p < 2^31, got {self.p!r}")

    @property
    def kind(self) -> str:
        return "rational" if self.p is None else "prime"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @cached_property
    def zero(self):
        return Fraction(0) if self.p is None else Mod(0, self.p)

    @cached_property
    def one(self):
        return Fraction(1) if self.p is None else Mod(1, self.p)

    def __call__(self, x):
        """Coerce ``x`` into this field, refusing elements of another field."""
        t = type(x)
        if (t is Fraction and self.p is None) or (t is Mod and x.p == self.p):
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool) or isinstance(x, float):
            raise InputError(f"not an exact scalar: {x!r}")
        if self.p is None:
            if isinstance(x, Fraction):
                return x
            if isinstance(x, int):
                return Fraction(x)
            raise InputError(f"mixed fields: expected a rational, got {x!r}")
        if isinstance(x, Mod):
            if x.p != self.p:
                raise InputError(f"mixed fields: GF({self.p}) and GF({x.p})")
            return x
        if isinstance(x, int):
            return Mod(x, self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise InputError(f"{x} has no image in GF({self.p})")
            return Mod(x.numerator, self.p) / Mod(x.denominator, self.p)
        raise InputError(f"mixed fields: expected an element of GF({self.p}), got {x!r}")

    def parse(self, text: str):
        if self.p is None:
            m = _RATIONAL_RE.match(text)
            if not m:
                raise InputError(f"invalid rational literal {text!r}")
            den = int(m.group(2)) if m.group(2) is not None else 1
            if den == 0:
                raise InputError(f"zero denominator in {text!r}")
            return Fraction(int(m.group(1)), den)
        if not _INTEGER_RE.match(text):
            raise InputError(f"invalid residue literal {text!r}")
        return Mod(int(text), self.p)

    def format(self, x) -> str:
        """Canonical string: ``"-3/2"``, ``"7"``, ``"0"``; residues in decimal."""
        x = self(x)
        return str(x)

    def contains(self, x) -> bool:
        if self.p is None:
            return isinstance(x, Fraction)
        return isinstance(x, Mod) and x.p == self.p

    def to_json(self) -> dict:
        return {"kind": "rational"} if self.p is None else {"kind": "prime", "p": self.p}

    @classmethod
    def from_json(cls, obj) -> Field:
        if not isinstance(obj, dict) or obj.get("kind") not in ("rational", "prime"):
            raise InputError(f"invalid field descriptor {obj!r}")
        if obj["kind"] == "rational":
            return cls()
        p = obj.get("p")
        if not isinstance(p, int) or isinstance(p, bool):
            raise InputError(f"prime field needs an integer p, got {p!r}")
        return cls(p)

    def __str__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


# -- vectors ---------------------------------------------------------------

def zero_vector(n: int, field: Field = QQ) -> tuple:
    return (field.zero,) * n


def unit_vector(n: int, i: int, field: Field = QQ) -> tuple:
    z, o = field.zero, field.one
    return tuple(o if k == i else z for k in range(n))


def is_zero(v: Iterable) -> bool:
    return not any(v)


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b if b else a for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b if b else a for a, b in zip(u, v))


def vec_scale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)


def lin_comb(coeffs: Sequence, vectors: Sequence[Sequence], n: int, field: Field = QQ) -> tuple:
    """Return ``sum(c * v)``, skipping zero coefficients."""
    out = [field.zero] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for k, a in enumerate(v):
            if a:
                out[k] += c * a
    return tuple(out)


# -- sparse incremental reduced echelon form --------------------------------

class Echelon:
    """Incrementally maintained reduced row-echelon basis of a row space.

    Rows are sparse dicts.  Every stored row is fully reduced against the
    others, so reducing a new row needs a single sweep over its pivot
    columns.
    """

    def __init__(self, ncols: int, field: Field = QQ):
        self.ncols = ncols
        self.field = field
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        row = {c: a for c, a in row.items() if a}
        for c in [c for c in row if c in self.pivots]:
            a = row.get(c)
            if not a:
                continue
            for k, b in self.pivots[c].items():
                val = row.get(k, self.field.zero) - a * b
                if val:
                    row[k] = val
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert ``row``; return True when it enlarged the row space."""
        if self.rank == self.ncols:
            return False
        row = self.reduce(row)
        if not row:
            return False
        lead = min(row)
        inv = self.field.one / row[lead]
        row = {k: a * inv for k, a in row.items()}
        for prow in self.pivots.values():
            a = prow.get(lead)
            if a:
                for k, b in row.items():
                    val = prow.get(k, self.field.zero) - a * b
                    if val:
                        prow[k] = val
                    else:
                        prow.pop(k, None)
        self.pivots[lead] = row
        return True

    def dense_rows(self) -> tuple[tuple, ...]:
        z = self.field.zero
        out = []
        for c in sorted(self.pivots):
            row = [z] * self.ncols
            for k, a in self.pivots[c].items():
                row[k] = a
            out.append(tuple(row))
        return tuple(out)

    def free_columns(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self.pivots]


def _sparse(v: Sequence) -> dict:
    return {k: a for k, a in enumerate(v) if a}


# -- matrices ----------------------------------------------------------------

class Matrix:
    """Immutable dense matrix over one :class:`Field`."""

    __slots__ = ("rows", "nrows", "ncols", "field")

    def __init__(self, rows: Iterable[Iterable], field: Field = QQ, ncols: int | None = None):
        data = tuple(tuple(field(a) for a in r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for r in data:
            if len(r) != ncols:
                raise InputError("ragged matrix rows")
        self.rows = data
        self.nrows = len(data)
        self.ncols = ncols
        self.field = field

    @classmethod
    def _raw(cls, rows: tuple, ncols: int, field: Field) -> Matrix:
        m = object.__new__(cls)
        m.rows, m.nrows, m.ncols, m.field = rows, len(rows), ncols, field
        return m

    @classmethod
    def zero(cls, nrows: int, ncols: int, field: Field = QQ) -> Matrix:
        return cls._raw(tuple(zero_vector(ncols, field) for _ in range(nrows)), ncols, field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> Matrix:
        return cls._raw(tuple(unit_vector(n, i, field) for i in range(n)), n, field)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int, field: Field = QQ) -> Matrix:
        cols = [tuple(field(a) for a in c) for c in columns]
        rows = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return cls._raw(rows, len(cols), field)

    @classmethod
    def from_flat(cls, flat: Sequence, nrows: int, ncols: int, field: Field = QQ) -> Matrix:
        flat = tuple(flat)
        return cls._raw(tuple(flat[i * ncols:(i + 1) * ncols] for i in range(nrows)), ncols, field)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def flatten(self) -> tuple:
        return tuple(a for r in self.rows for a in r)

    @property
    def T(self) -> Matrix:
        return Matrix._raw(tuple(self.column(j) for j in range(self.ncols)), self.nrows, self.field)

    def _check(self, other: Matrix):
        if other.field != self.field:
            raise InputError(f"mixed fields: {self.field} and {other.field}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise InputError("shape mismatch in matrix sum")
        return Matrix._raw(tuple(vec_add(a, b) for a, b in zip(self.rows, other.rows)), self.ncols, self.field)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise InputError("shape mismatch in matrix difference")
        return Matrix._raw(tuple(vec_sub(a, b) for a, b in zip(self.rows, other.rows)), self.ncols, self.field)

    def __neg__(self) -> Matrix:
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.ncols, self.field)

    def scale(self, c) -> Matrix:
        c = self.field(c)
        return Matrix._raw(tuple(vec_scale(c, r) for r in self.rows), self.ncols, self.field)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise InputError(f"vector of length {len(v)} for a {self.nrows}x{self.ncols} matrix")
        z = self.field.zero
        nz = [(j, a) for j, a in enumerate(v) if a]
        out = []
        for r in self.rows:
            s = z
            for j, a in nz:
                b = r[j]
                if b:
                    s += b * a
            out.append(s)
        return tuple(out)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.ncols != other.nrows:
                raise InputError(f"cannot multiply {self.shape} by {other.shape}")
            cols = [other.column(j) for j in range(other.ncols)]
            prod_cols = [self.apply(c) for c in cols]
            return Matrix._raw(tuple(tuple(c[i] for c in prod_cols) for i in range(self.nrows)),
                               other.ncols, self.field)
        return self.apply(other)

    def is_zero(self) -> bool:
        return all(is_zero(r) for r in self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.field, self.ncols, self.rows))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows)
        return f"Matrix([{body}], {self.field})"

    def rref(self) -> Matrix:
        return rref(self)

    def rank(self) -> int:
        return rref(self).nrows

    def null_space(self) -> Subspace:
        return null_space(self)

    def to_strings(self) -> list[list[str]]:
        return [[str(a) for a in r] for r in self.rows]


def _echelon_of(m: Matrix) -> Echelon:
    ech = Echelon(m.ncols, m.field)
    for r in m.rows:
        ech.add(_sparse(r))
    return ech


def rref(m: Matrix) -> Matrix:
    """Canonical reduced row-echelon form with zero rows removed."""
    return Matrix._raw(_echelon_of(m).dense_rows(), m.ncols, m.field)


def rank(m: Matrix) -> int:
    return _echelon_of(m).rank


def _kernel_from_echelon(ech: Echelon) -> Subspace:
    n, f = ech.ncols, ech.field
    vectors = []
    for free in ech.free_columns():
        v = [f.zero] * n
        v[free] = f.one
        for c, row in ech.pivots.items():
            a = row.get(free)
            if a:
                v[c] = -a
        vectors.append(v)
    return Subspace.span(vectors, n, f)


def null_space(m: Matrix) -> Subspace:
    """``{v : m v = 0}`` as a canonical subspace of ``F^{m.ncols}``."""
    return _kernel_from_echelon(_echelon_of(m))


def null_space_sparse(rows: Iterable[dict], ncols: int, field: Field = QQ) -> Subspace:
    """Null space of a matrix given as sparse rows; used for large constraint systems."""
    ech = Echelon(ncols, field)
    for r in rows:
        ech.add(r)
        if ech.rank == ncols:
            break
    return _kernel_from_echelon(ech)


def solve(m: Matrix, b: Sequence):
    """Return one solution ``x`` of ``m x = b`` (free variables zero), or None."""
    if len(b) != m.nrows:
        raise InputError("right-hand side length does not match matrix rows")
    f = m.field
    aug = Echelon(m.ncols + 1, f)
    for r, bi in zip(m.rows, b):
        row = _sparse(r)
        bi = f(bi)
        if bi:
            row[m.ncols] = bi
        aug.add(row)
    if m.ncols in aug.pivots:
        return None
    x = [f.zero] * m.ncols
    for c, row in aug.pivots.items():
        x[c] = row.get(m.ncols, f.zero)
    return tuple(x)


# -- subspaces ---------------------------------------------------------------

class Subspace:
    """Subspace of ``F^n`` stored by its canonical RREF basis."""

    __slots__ = ("ambient_dim", "field", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: tuple, field: Field = QQ, _trusted: bool = False):
        if not _trusted:
            ech = Echelon(ambient_dim, field)
            for r in basis:
                r = tuple(field(a) for a in r)
                if len(r) != ambient_dim:
                    raise InputError(f"vector of length {len(r)} in ambient dimension {ambient_dim}")
                ech.add(_sparse(r))
            basis = ech.dense_rows()
        self.ambient_dim = ambient_dim
        self.field = field
        self.basis = tuple(basis)
        self.pivots = tuple(next(k for k, a in enumerate(r) if a) for r in self.basis)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int, field: Field = QQ) -> Subspace:
        return cls(ambient_dim, tuple(vectors), field)

    @classmethod
    def zero(cls, ambient_dim: int, field: Field = QQ) -> Subspace:
        return cls(ambient_dim, (), field, _trusted=True)

    @classmethod
    def full(cls, ambient_dim: int, field: Field = QQ) -> Subspace:
        return cls(ambient_dim, tuple(unit_vector(ambient_dim, i, field) for i in range(ambient_dim)),
                   field, _trusted=True)

    @classmethod
    def from_echelon(cls, ech: Echelon) -> Subspace:
        return cls(ech.ncols, ech.dense_rows(), ech.field, _trusted=True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def matrix(self) -> Matrix:
        return Matrix._raw(self.basis, self.ambient_dim, self.field)

    def echelon(self) -> Echelon:
        ech = Echelon(self.ambient_dim, self.field)
        for c, r in zip(self.pivots, self.basis):
            ech.pivots[c] = _sparse(r)
        return ech

    def residual(self, v: Sequence) -> tuple:
        """``v`` minus its component along the basis (canonical coset representative)."""
        v = tuple(self.field(a) for a in v)
        if len(v) != self.ambient_dim:
            raise InputError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        coeffs = [v[p] for p in self.pivots]
        if not any(coeffs):
            return v
        return vec_sub(v, lin_comb(coeffs, self.basis, self.ambient_dim, self.field))

    def coordinates(self, v: Sequence) -> tuple:
        """Coordinates of ``v`` in the RREF basis; raises if ``v`` is not a member."""
        v = tuple(self.field(a) for a in v)
        if not is_zero(self.residual(v)):
            raise InputError("vector does not lie in the subspace")
        return tuple(v[p] for p in self.pivots)

    def contains(self, x) -> bool:
        return subspace_contains(self, x)

    def __contains__(self, x) -> bool:
        return subspace_contains(self, x)

    def __add__(self, other: Subspace) -> Subspace:
        return subspace_sum(self, other)

    def __and__(self, other: Subspace) -> Subspace:
        return subspace_intersect(self, other)

    def __le__(self, other: Subspace) -> bool:
        return subspace_contains(other, self)

    def annihilator(self) -> list[tuple]:
        """Row vectors ``c`` with ``c . x = 0`` exactly for ``x`` in the subspace."""
        return list(null_space(self.matrix()).basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.field == other.field
                and self.basis == other.basis)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.field, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={[list(map(str, r)) for r in self.basis]})"

    def to_strings(self) -> list[list[str]]:
        return [[str(a) for a in r] for r in self.basis]


def _compatible(u: Subspace, v: Subspace):
    if u.ambient_dim != v.ambient_dim:
        raise InputError(f"ambient mismatch: {u.ambient_dim} vs {v.ambient_dim}")
    if u.field != v.field:
        raise InputError(f"mixed fields: {u.field} and {v.field}")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _compatible(u, v)
    ech = u.echelon()
    for r in v.basis:
        ech.add(_sparse(r))
    return Subspace.from_echelon(ech)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    _compatible(u, v)
    constraints = [_sparse(c) for c in u.annihilator() + v.annihilator()]
    return null_space_sparse(constraints, u.ambient_dim, u.field)


def subspace_contains(u: Subspace, x) -> bool:
    if isinstance(x, Subspace):
        _compatible(u, x)
        return all(is_zero(u.residual(r)) for r in x.basis)
    return is_zero(u.residual(x))


# -- linear maps and quotients -----------------------------------------------

@dataclass(frozen=True)
class LinearMap:
    """Linear map ``F^domain_dim -> F^codomain_dim``; columns are images of unit vectors."""

    domain_dim: int
    codomain_dim: int
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.codomain_dim, self.domain_dim):
            raise InputError(
                f"matrix shape {self.matrix.shape} does not fit a map "
                f"{self.domain_dim} -> {self.codomain_dim}")

    @classmethod
    def from_matrix(cls, m: Matrix) -> LinearMap:
        return cls(m.ncols, m.nrows, m)

    @property
    def field(self) -> Field:
        return self.matrix.field

    def __call__(self, v: Sequence) -> tuple:
        return self.matrix.apply(v)

    def compose(self, other: LinearMap) -> LinearMap:
        """``self o other``."""
        return LinearMap(other.domain_dim, self.codomain_dim, self.matrix @ other.matrix)

    def kernel(self) -> Subspace:
        return null_space(self.matrix)

    def image(self) -> Subspace:
        return Subspace.span(self.matrix.columns(), self.codomain_dim, self.field)

    def rank(self) -> int:
        return rank(self.matrix)


def quotient_coordinates(ambient_dim: int, w: Subspace) -> tuple[LinearMap, LinearMap, list[int]]:
    """Coordinates on ``F^n / w`` using the non-pivot columns of ``w`` as representatives.

    Returns ``(projection, section, reps)``: ``projection`` sends a vector to the
    coordinates of its coset, ``section`` sends quotient coordinates to the
    representative combination of unit vectors ``e_{reps[i]}``.
    """
    if w.ambient_dim != ambient_dim:
        raise InputError(f"ambient mismatch: {w.ambient_dim} vs {ambient_dim}")
    f = w.field
    pivots = set(w.pivots)
    reps = [c for c in range(ambient_dim) if c not in pivots]
    q = len(reps)
    proj_cols = []
    for j in range(ambient_dim):
        r = w.residual(unit_vector(ambient_dim, j, f))
        proj_cols.append(tuple(r[c] for c in reps))
    projection = LinearMap(ambient_dim, q, Matrix.from_columns(proj_cols, q, f))
    section = LinearMap(q, ambient_dim,
                        Matrix.from_columns([unit_vector(ambient_dim, c, f) for c in reps], ambient_dim, f))
    return projection, section, reps
