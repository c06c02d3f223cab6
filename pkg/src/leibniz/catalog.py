"""Built-in algebras.

Keys: ``ab1`` / ``abN`` (abelian of dimension N), ``nil2``, ``heis3``,
``borel2``, ``sl2``, ``sl2sl2``, ``h5`` (sl2 acting on its natural module via
the hemisemidirect product), ``h5split`` (same with an extra trivial summand),
``sl2triv`` (trivial 1-dim module), and the non-perfectness witnesses
``witness-nil2``, ``witness-heis3``.

Setting ``LEIBNIZ_CATALOG_DIR`` adds every ``*.json`` algebra file of that
directory under its file stem, shadowing built-ins of the same name.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .algebra import LeibnizAlgebra, check_leibniz, direct_product
from .constructions import Representation, hemisemidirect, witness_nonperfect
from .errors import ConsistencyError, InputError
from .exactla import QQ, Matrix

CATALOG_ENV = "LEIBNIZ_CATALOG_DIR"


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    builder: Callable[[], LeibnizAlgebra]
    notes: str


def nil2() -> LeibnizAlgebra:
    return LeibnizAlgebra.from_products(2, {(0, 0): {1: 1}}, QQ, "nil2")


def heis3() -> LeibnizAlgebra:
    return LeibnizAlgebra.from_products(3, {(0, 1): {2: 1}, (1, 0): {2: -1}}, QQ, "heis3")


def borel2() -> LeibnizAlgebra:
    return LeibnizAlgebra.from_products(2, {(0, 1): {1: 1}, (1, 0): {1: -1}}, QQ, "borel2")


def sl2() -> LeibnizAlgebra:
    """Basis ``(e, h, f)`` with ``[h,e] = 2e``, ``[h,f] = -2f``, ``[e,f] = h``."""
    return LeibnizAlgebra.from_products(3, {
        (1, 0): {0: 2}, (0, 1): {0: -2},
        (1, 2): {2: -2}, (2, 1): {2: 2},
        (0, 2): {1: 1}, (2, 0): {1: -1},
    }, QQ, "sl2")


def natural_sl2_module() -> Representation:
    e = Matrix([[0, 1], [0, 0]])
    h = Matrix([[1, 0], [0, -1]])
    f = Matrix([[0, 0], [1, 0]])
    return Representation(sl2(), 2, (e, h, f))


def split_sl2_module() -> Representation:
    """Natural module plus a trivial summand (third coordinate)."""
    e = Matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    h = Matrix([[1, 0, 0], [0, -1, 0], [0, 0, 0]])
    f = Matrix([[0, 0, 0], [1, 0, 0], [0, 0, 0]])
    return Representation(sl2(), 3, (e, h, f))


def trivial_sl2_module() -> Representation:
    z = Matrix([[0]])
    return Representation(sl2(), 1, (z, z, z))


def _abelian(n: int) -> LeibnizAlgebra:
    return LeibnizAlgebra.abelian(n, QQ, f"ab{n}")


_BUILTIN = {
    "ab1": CatalogEntry("ab1", lambda: _abelian(1), "1-dim abelian"),
    "ab2": CatalogEntry("ab2", lambda: _abelian(2), "2-dim abelian"),
    "nil2": CatalogEntry("nil2", nil2, "[e1,e1] = e2; nilpotent, not Lie"),
    "heis3": CatalogEntry("heis3", heis3, "Heisenberg: [e1,e2] = e3 = -[e2,e1]"),
    "borel2": CatalogEntry("borel2", borel2, "2-dim nonabelian Lie: [x,y] = y"),
    "sl2": CatalogEntry("sl2", sl2, "simple Lie algebra, basis (e, h, f)"),
    "sl2sl2": CatalogEntry("sl2sl2", lambda: direct_product(sl2(), sl2(), "sl2sl2"), "direct sum sl2 + sl2"),
    "h5": CatalogEntry("h5", lambda: hemisemidirect(natural_sl2_module(), "h5"),
                       "hemisemidirect product of sl2 and its natural module; perfect, not Lie"),
    "h5split": CatalogEntry("h5split", lambda: hemisemidirect(split_sl2_module(), "h5split"),
                            "sl2 with natural + trivial module; not perfect"),
    "sl2triv": CatalogEntry("sl2triv", lambda: hemisemidirect(trivial_sl2_module(), "sl2triv"),
                            "sl2 with the trivial 1-dim module; Lie, not perfect"),
    "witness-nil2": CatalogEntry("witness-nil2", lambda: witness_nonperfect(nil2()).ambient.renamed("witness-nil2"),
                                 "nil2 x nil2/[nil2,nil2]"),
    "witness-heis3": CatalogEntry("witness-heis3",
                                  lambda: witness_nonperfect(heis3()).ambient.renamed("witness-heis3"),
                                  "heis3 x heis3/[heis3,heis3]"),
}

_AB_RE = re.compile(r"^ab(\d+)$")


def _override_dir() -> Path | None:
    d = os.environ.get(CATALOG_ENV)
    return Path(d) if d else None


def keys() -> list[str]:
    out = dict.fromkeys(_BUILTIN)
    d = _override_dir()
    if d is not None and d.is_dir():
        for p in sorted(d.glob("*.json")):
            out[p.stem] = None
    return list(out)


def entry(key: str) -> CatalogEntry:
    d = _override_dir()
    if d is not None:
        p = d / f"{key}.json"
        if p.is_file():
            from .io import load_algebra

            return CatalogEntry(key, lambda: load_algebra(p).renamed(key), f"from {p}")
    if key in _BUILTIN:
        return _BUILTIN[key]
    m = _AB_RE.match(key)
    if m and int(m.group(1)) >= 0:
        n = int(m.group(1))
        return CatalogEntry(key, lambda: _abelian(n), f"{n}-dim abelian")
    raise InputError(f"unknown catalog key {key!r}")


def get(key: str) -> LeibnizAlgebra:
    """Build the algebra for ``key`` and check the Leibniz identity on it."""
    e = entry(key)
    A = e.builder()
    res = check_leibniz(A)
    if not res:
        err = InputError if e.notes.startswith("from ") else ConsistencyError
        raise err(f"catalog algebra {key} fails the Leibniz identity at {res.triple}")
    return A


def all_algebras() -> list[LeibnizAlgebra]:
    return [get(k) for k in keys()]
