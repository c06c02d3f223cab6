"""JSON exchange formats for algebras, representations and subspaces.

Algebra file::

    {"name": str, "field": {"kind": "rational"} | {"kind": "prime", "p": int},
     "dim": int, "orientation": "left" | "right", "sc": [[[str, ...], ...], ...]}

The tensor is dense and 0-indexed: ``sc[i][j][k]`` is the ``e_k`` coefficient
of ``[e_i, e_j]`` in the stated orientation.  Output is byte-stable.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import LeibnizAlgebra
from .errors import InputError
from .exactla import Field, Matrix, Subspace


def parse_json_text(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def read_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_json_text(text, str(path))


def _scalar_strings(field: Field, values, where: str) -> list:
    out = []
    for v in values:
        if not isinstance(v, str):
            raise InputError(f"{where}: scalars must be strings, got {v!r}")
        out.append(field.parse(v))
    return out


def algebra_from_json(obj) -> LeibnizAlgebra:
    if not isinstance(obj, dict):
        raise InputError("algebra file must be a JSON object")
    missing = [k for k in ("name", "field", "dim", "orientation", "sc") if k not in obj]
    if missing:
        raise InputError(f"algebra file is missing keys: {', '.join(missing)}")
    name, dim, orientation, sc = obj["name"], obj["dim"], obj["orientation"], obj["sc"]
    if not isinstance(name, str):
        raise InputError("'name' must be a string")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise InputError("'dim' must be a nonnegative integer")
    if orientation not in ("left", "right"):
        raise InputError("'orientation' must be 'left' or 'right'")
    field = Field.from_json(obj["field"])
    if not isinstance(sc, list) or len(sc) != dim:
        raise InputError(f"'sc' must have {dim} slices")
    tensor = []
    for i, plane in enumerate(sc):
        if not isinstance(plane, list) or len(plane) != dim:
            raise InputError(f"sc[{i}] must have {dim} rows")
        rows = []
        for j, row in enumerate(plane):
            if not isinstance(row, list) or len(row) != dim:
                raise InputError(f"sc[{i}][{j}] must have {dim} entries")
            rows.append(_scalar_strings(field, row, f"sc[{i}][{j}]"))
        tensor.append(rows)
    return LeibnizAlgebra(tensor, field, name, orientation)


def algebra_to_json(A: LeibnizAlgebra) -> dict:
    sc = A.oriented_sc()
    return {
        "name": A.name,
        "field": A.field.to_json(),
        "dim": A.dim,
        "orientation": A.source_orientation,
        "sc": [[[str(a) for a in row] for row in plane] for plane in sc],
    }


def dumps_algebra(A: LeibnizAlgebra) -> str:
    """Canonical text: one line per ``sc[i]`` slice, trailing newline."""
    obj = algebra_to_json(A)
    head = ",\n".join(f"  {json.dumps(k)}: {json.dumps(obj[k])}" for k in ("name", "field", "dim", "orientation"))
    planes = ",\n".join("    " + json.dumps(p, separators=(",", ":")) for p in obj["sc"])
    body = f'  "sc": [\n{planes}\n  ]' if obj["sc"] else '  "sc": []'
    return "{\n" + head + ",\n" + body + "\n}\n"


def load_algebra(path) -> LeibnizAlgebra:
    return algebra_from_json(read_json(path))


def matrix_from_json(obj, field: Field, where: str = "matrix") -> Matrix:
    if not isinstance(obj, list):
        raise InputError(f"{where} must be a list of rows")
    rows = []
    for r, row in enumerate(obj):
        if not isinstance(row, list):
            raise InputError(f"{where}[{r}] must be a list")
        rows.append(_scalar_strings(field, row, f"{where}[{r}]"))
    return Matrix(rows, field)


def representation_from_json(obj):
    from .constructions import Representation

    if not isinstance(obj, dict) or not {"lie", "module_dim", "action"} <= set(obj):
        raise InputError("representation file needs 'lie', 'module_dim' and 'action'")
    g = algebra_from_json(obj["lie"])
    m = obj["module_dim"]
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise InputError("'module_dim' must be a nonnegative integer")
    action = obj["action"]
    if not isinstance(action, list):
        raise InputError("'action' must be a list of matrices")
    mats = []
    for i, a in enumerate(action):
        mat = matrix_from_json(a, g.field, f"action[{i}]")
        if m == 0:
            mat = Matrix.zero(0, 0, g.field)
        mats.append(mat)
    return Representation(g, m, tuple(mats))


def representation_to_json(rep) -> dict:
    return {
        "lie": algebra_to_json(rep.lie),
        "module_dim": rep.module_dim,
        "action": [m.to_strings() for m in rep.action],
    }


def subspace_from_json(obj, ambient_dim: int, field: Field) -> Subspace:
    """Accepts a list of basis vectors (scalar strings); the span is taken."""
    if not isinstance(obj, list):
        raise InputError("subspace must be a list of vectors")
    vecs = []
    for r, v in enumerate(obj):
        if not isinstance(v, list) or len(v) != ambient_dim:
            raise InputError(f"subspace vector {r} must have {ambient_dim} entries")
        vecs.append(_scalar_strings(field, v, f"vector {r}"))
    return Subspace.span(vecs, ambient_dim, field)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
