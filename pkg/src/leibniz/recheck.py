"""Independent re-checker for verification certificates.

Works from the JSON payload alone and does its own linear algebra with
sympy's ``DomainMatrix``; nothing from the rest of this package is imported,
so a bug in the main code paths cannot vouch for itself here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Iterable

from sympy import GF, QQ, Rational
from sympy.polys.matrices import DomainMatrix


class RecheckError(Exception):
    pass


def _domain(obj):
    if obj.get("kind") == "rational":
        return QQ
    if obj.get("kind") == "prime":
        return GF(int(obj["p"]))
    raise RecheckError(f"unknown field {obj!r}")


def _scalar(text: str, dom):
    r = Rational(text)
    if dom == QQ:
        return QQ(int(r.p), int(r.q))
    return dom(int(r.p)) / dom(int(r.q))


def _vectors(rows, dom) -> list[list]:
    return [[_scalar(a, dom) for a in r] for r in rows]


class Alg:
    """Structure constants in the left convention, entries in a sympy domain."""

    def __init__(self, obj: dict):
        self.obj = obj
        self.dom = _domain(obj["field"])
        self.dim = n = int(obj["dim"])
        raw = [[[_scalar(a, self.dom) for a in row] for row in plane] for plane in obj["sc"]]
        if obj["orientation"] == "right":
            raw = [[raw[j][i] for j in range(n)] for i in range(n)]
        self.sc = raw

    def zero(self) -> list:
        return [self.dom.zero] * self.dim

    def unit(self, i: int) -> list:
        v = self.zero()
        v[i] = self.dom.one
        return v

    def bracket(self, x, y) -> list:
        out = self.zero()
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.sc[i][j]):
                    if c:
                        out[k] += ab * c
        return out

    def left(self, x) -> list[list]:
        """Matrix of ``y -> [x, y]`` (column ``j`` is ``[x, e_j]``)."""
        cols = [self.bracket(x, self.unit(j)) for j in range(self.dim)]
        return _transpose(cols, self.dim)


# -- small dense linear algebra -------------------------------------------------------

def _transpose(rows, ncols) -> list[list]:
    return [[r[j] for r in rows] for j in range(ncols)]


def _mat(rows, dom) -> list[list]:
    return _vectors(rows, dom)


def _apply(m, v) -> list:
    return [sum((a * b for a, b in zip(row, v) if a and b), 0) for row in m]


def _mul(a, b, dom) -> list[list]:
    if not a:
        return []
    if not b:
        return [[] for _ in a]
    cols = len(b[0])
    out = []
    for row in a:
        r = [dom.zero] * cols
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        r[j] += x * y
        out.append(r)
    return out


def _sub(a, b) -> list[list]:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _comb(coeffs, mats, shape, dom) -> list[list]:
    nr, nc = shape
    out = [[dom.zero] * nc for _ in range(nr)]
    for c, m in zip(coeffs, mats):
        if c:
            for i in range(nr):
                for j in range(nc):
                    if m[i][j]:
                        out[i][j] += c * m[i][j]
    return out


def _column(m, j) -> list:
    return [r[j] for r in m]


def _flat(m) -> list:
    return [a for r in m for a in r]


def _identity(n, dom) -> list[list]:
    return [[dom.one if i == j else dom.zero for j in range(n)] for i in range(n)]


def _dm(rows, ncols, dom) -> DomainMatrix:
    return DomainMatrix([[dom.convert(a) for a in r] for r in rows], (len(rows), ncols), dom)


def rank(vectors, ncols, dom) -> int:
    vectors = [v for v in vectors if any(v)]
    if not vectors or ncols == 0:
        return 0
    return _dm(vectors, ncols, dom).rank()


def rank_sparse(rows: list[dict], ncols: int, dom) -> int:
    rows = [r for r in rows if r]
    if not rows:
        return 0
    d = {i: {k: dom.convert(v) for k, v in r.items()} for i, r in enumerate(rows)}
    return DomainMatrix(d, (len(rows), ncols), dom).rank()


def nullspace(rows, ncols, dom) -> list[list]:
    rows = [r for r in rows if any(r)]
    if ncols == 0:
        return []
    if not rows:
        return _identity(ncols, dom)
    return _dm(rows, ncols, dom).nullspace().to_list()


def in_span(basis, vectors, ncols, dom) -> bool:
    r = rank(basis, ncols, dom)
    return rank(list(basis) + list(vectors), ncols, dom) == r


def same_span(u, v, ncols, dom) -> bool:
    r = rank(u, ncols, dom)
    return r == rank(v, ncols, dom) == rank(list(u) + list(v), ncols, dom)


# -- algebraic checks -------------------------------------------------------------------

@dataclass
class Checker:
    problems: list = dc_field(default_factory=list)
    count: int = 0

    def expect(self, cond: bool, msg: str) -> bool:
        self.count += 1
        if not cond:
            self.problems.append(msg)
        return cond


def products(A: Alg, left, right) -> list:
    return [A.bracket(x, y) for x in left for y in right]


def is_ideal(A: Alg, S, within=None) -> bool:
    W = within if within is not None else [A.unit(i) for i in range(A.dim)]
    prods = products(A, W, S) + products(A, S, W)
    return in_span(S, prods, A.dim, A.dom)


def is_perfect_sub(A: Alg, S) -> bool:
    prods = products(A, S, S)
    r = rank(S, A.dim, A.dom)
    return in_span(S, prods, A.dim, A.dom) and rank(prods, A.dim, A.dom) == r


def is_hom(dom_alg: Alg, cod: Alg, H) -> bool:
    cols = [_column(H, i) for i in range(dom_alg.dim)]
    for i in range(dom_alg.dim):
        for j in range(dom_alg.dim):
            if _apply(H, dom_alg.sc[i][j]) != cod.bracket(cols[i], cols[j]):
                return False
    return True


def mat_rank(H, dom) -> int:
    if not H or not H[0]:
        return 0
    return rank(H, len(H[0]), dom)


def is_derivation(A: Alg, f) -> bool:
    cols = [_column(f, i) for i in range(A.dim)]
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = _apply(f, A.sc[i][j])
            rhs = [a + b for a, b in zip(A.bracket(cols[i], A.unit(j)), A.bracket(A.unit(i), cols[j]))]
            if lhs != rhs:
                return False
    return True


def derivation_nullity(A: Alg) -> int:
    """Dimension of ``D(A)`` from a freshly assembled linear system.

    Unknown ``f[r][c]`` is variable ``r*n + c``; the equation for ``(i,j,k)``
    is the ``e_k`` coefficient of ``f[e_i,e_j] - [f e_i, e_j] - [e_i, f e_j]``.
    """
    n, sc, dom = A.dim, A.sc, A.dom
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row: dict = {}
                for m in range(n):
                    terms = ((k * n + m, sc[i][j][m]), (m * n + i, -sc[m][j][k]), (m * n + j, -sc[i][m][k]))
                    for var, c in terms:
                        if c:
                            row[var] = row.get(var, dom.zero) + c
                rows.append({v: c for v, c in row.items() if c})
    return n * n - rank_sparse(rows, n * n, dom)


def lie_table_matches(basis, lie: Alg, n: int, dom) -> bool:
    """``[f_a, f_b] = sum_c lie.sc[a][b][c] f_c`` for matrices ``f``."""
    for a, fa in enumerate(basis):
        for b, fb in enumerate(basis):
            comm = _sub(_mul(fa, fb, dom), _mul(fb, fa, dom))
            if comm != _comb(lie.sc[a][b], basis, (n, n), dom):
                return False
    return True


def check_dercert(ck: Checker, cert: dict, label: str, full: bool = True):
    """Basis of derivations with its bracket table; when ``full``, all of ``D(base)``."""
    base, lie = Alg(cert["base"]), Alg(cert["lie"])
    dom, n = base.dom, base.dim
    basis = [_mat(m, dom) for m in cert["basis"]]
    ck.expect(lie.dim == len(basis), f"{label}: table size differs from basis size")
    ck.expect(all(is_derivation(base, f) for f in basis), f"{label}: basis element is not a derivation")
    ck.expect(rank([_flat(f) for f in basis], n * n, dom) == len(basis), f"{label}: basis is dependent")
    if full:
        ck.expect(derivation_nullity(base) == len(basis), f"{label}: dimension differs from the null-space oracle")
    ck.expect(lie_table_matches(basis, lie, n, dom), f"{label}: bracket table does not match commutators")
    return base, basis, lie


def coords(basis_mats, m, dom) -> list:
    """Coordinates of matrix ``m`` in ``basis_mats`` (must exist)."""
    k = len(basis_mats)
    if k == 0:
        if any(_flat(m)):
            raise RecheckError("matrix is not in the span")
        return []
    cols = [_flat(b) for b in basis_mats]
    target = _flat(m)
    system = [[cols[j][r] for j in range(k)] + [target[r]] for r in range(len(target))]
    R, pivots = _dm(system, k + 1, dom).rref()
    if k in pivots:
        raise RecheckError("matrix is not in the span")
    rows = R.to_list()
    sol = [dom.zero] * k
    for r, p in enumerate(pivots):
        sol[p] = rows[r][k]
    return sol


def common_kernel(images_per_map, n, dom) -> list[list]:
    """``{x : T(x) = 0}`` for maps given by their images of ``e_0..e_{n-1}``."""
    rows = []
    for imgs in images_per_map:
        if imgs:
            rows.extend([[img[k] for img in imgs] for k in range(len(imgs[0]))])
    return nullspace(rows, n, dom)


def normalizer(A: Alg, S) -> list[list]:
    n, dom = A.dim, A.dom
    ann = nullspace(S, n, dom) if S else _identity(n, dom)
    rows = []
    for s in S:
        left = [A.bracket(A.unit(i), s) for i in range(n)]
        right = [A.bracket(s, A.unit(i)) for i in range(n)]
        for w in ann:
            rows.append([sum((a * b for a, b in zip(w, v)), dom.zero) for v in left])
            rows.append([sum((a * b for a, b in zip(w, v)), dom.zero) for v in right])
    return nullspace(rows, n, dom)


def leib(A: Alg) -> list[list]:
    n = A.dim
    vecs = [A.sc[i][i] for i in range(n)]
    vecs += [[a + b for a, b in zip(A.sc[i][j], A.sc[j][i])] for i in range(n) for j in range(i + 1, n)]
    return vecs


def ideal_series(A: Alg, S) -> list[list[list]]:
    """``K_0 = A``, ``K_{i+1}`` = ideal of ``K_i`` generated by ``S``; stops when stable."""
    n, dom = A.dim, A.dom
    cur = [A.unit(i) for i in range(n)]
    series = [cur]
    while True:
        gen = list(S)
        while True:
            new = products(A, cur, gen) + products(A, gen, cur)
            if in_span(gen, new, n, dom):
                break
            gen = gen + new
        if same_span(gen, cur, n, dom):
            return series
        cur = gen
        series.append(cur)


# -- per-theorem checks -----------------------------------------------------------------

def _check_th1_i_to_ii(ck: Checker, c: dict):
    M = Alg(c["M"])
    A, K = _vectors(c["A"], M.dom), _vectors(c["K"], M.dom)
    ck.expect(in_span(K, A, M.dim, M.dom), "A is not inside K")
    ck.expect(is_perfect_sub(M, A), "A is not perfect")
    ck.expect(is_ideal(M, A, within=K), "A is not an ideal of K")
    ck.expect(is_ideal(M, K), "K is not an ideal of M")
    ck.expect(is_ideal(M, A), "A is not an ideal of M")


def _check_th1_iii(ck: Checker, c: dict):
    K = Alg(c["K"])
    A = _vectors(c["A"], K.dom)
    ck.expect(is_ideal(K, A), "A is not an ideal of K")
    ck.expect(is_perfect_sub(K, A), "A is not perfect")
    ck.expect(c["derivations"]["base"] == c["K"], "derivations are for a different algebra")
    _, basis, _ = check_dercert(ck, c["derivations"], "D(K)")
    for a, f in enumerate(basis):
        ck.expect(in_span(A, [_apply(f, s) for s in A], K.dim, K.dom), f"derivation {a} moves A")


def _check_chain(ck: Checker, K: Alg, A, chain_rows):
    chain = [_vectors(s, K.dom) for s in chain_rows]
    if not ck.expect(bool(chain), "empty subideal chain"):
        return
    ck.expect(same_span(chain[0], A, K.dim, K.dom), "chain does not start at A")
    ck.expect(rank(chain[-1], K.dim, K.dom) == K.dim, "chain does not end at K")
    for lo, hi in zip(chain, chain[1:]):
        ck.expect(in_span(hi, lo, K.dim, K.dom) and is_ideal(K, lo, within=hi), "chain link is not an ideal")


def _check_cor33(ck: Checker, c: dict):
    K = Alg(c["K"])
    A = _vectors(c["A"], K.dom)
    ck.expect(is_perfect_sub(K, A), "A is not perfect")
    ideal = is_ideal(K, A)
    ck.expect(ideal == c["ideal"], "ideal flag is wrong")
    if c["subideal"]:
        _check_chain(ck, K, A, c["chain"])
    else:
        last = ideal_series(K, A)[-1]
        ck.expect(not same_span(last, A, K.dim, K.dom), "A is a subideal after all")
    ck.expect(c["subideal"] == ideal, "subideal and ideal disagree")


def _check_cor34(ck: Checker, c: dict):
    K = Alg(c["K"])
    A, N, NN = (_vectors(c[k], K.dom) for k in ("A", "N", "NN"))
    ck.expect(is_perfect_sub(K, A), "A is not perfect")
    ck.expect(same_span(normalizer(K, A), N, K.dim, K.dom), "N differs from the recomputed normalizer")
    ck.expect(same_span(normalizer(K, N), NN, K.dim, K.dom), "N(N) differs from the recomputed normalizer")
    ck.expect(same_span(N, NN, K.dim, K.dom), "normalizer is not self-normalizing")


def _check_restriction(ck: Checker, label, DK_basis, DB_basis, chart, Mx, B_dim, dom):
    """``f_a o chart = chart o (sum_c M[c][a] g_c)`` for every column ``a``."""
    for a, f in enumerate(DK_basis):
        g = _comb(_column(Mx, a), DB_basis, (B_dim, B_dim), dom)
        ck.expect(_mul(f, chart, dom) == _mul(chart, g, dom), f"{label}: column {a} is not a restriction")


def _check_prop41(ck: Checker, c: dict):
    K = Alg(c["K"])
    dom = K.dom
    S = _vectors(c["S"], dom)
    B = Alg(c["B"])
    chart = _mat(c["chart"], dom)
    ck.expect(is_ideal(K, S), "S is not an ideal of K")
    ck.expect(is_hom(B, K, chart) and mat_rank(chart, dom) == B.dim, "chart is not an injective hom")
    ck.expect(same_span([_column(chart, i) for i in range(B.dim)], S, K.dim, dom), "chart image is not S")
    ck.expect(c["DK"]["base"] == c["K"] and c["DB"]["base"] == c["B"], "derivation data for the wrong algebras")
    _, DKb, DKl = check_dercert(ck, c["DK"], "D(K)")
    _, DBb, DBl = check_dercert(ck, c["DB"], "D(S)")
    Mx = _mat(c["matrix"], dom)
    ck.expect(not common_kernel([[K.bracket(K.unit(i), s) for i in range(K.dim)] for s in S], K.dim, dom),
              "left centralizer of S is nonzero")
    _check_restriction(ck, "restriction", DKb, DBb, chart, Mx, B.dim, dom)
    ck.expect(is_hom(DKl, DBl, Mx), "restriction is not a homomorphism")
    ck.expect(mat_rank(Mx, dom) == DKl.dim, "restriction is not injective")


def _quotient_center_trivial(A: Alg) -> bool:
    """``{x : [x,A] + [A,x] in Leib}`` equals ``Leib`` exactly when ``Z(A/Leib) = 0``."""
    n, dom = A.dim, A.dom
    L = leib(A)
    ann = nullspace(L, n, dom) if rank(L, n, dom) else _identity(n, dom)
    rows = []
    for j in range(n):
        for w in ann:
            rows.append([sum((a * b for a, b in zip(w, A.sc[i][j])), dom.zero) for i in range(n)])
            rows.append([sum((a * b for a, b in zip(w, A.sc[j][i])), dom.zero) for i in range(n)])
    big = nullspace(rows, n, dom)
    return same_span(big, L, n, dom) if big else not rank(L, n, dom)


def _check_base(ck: Checker, c: dict):
    """Shared part of the embedding certificates: ``A``, ``D(A)``, ``I``, ``g = D(A)/I``."""
    A = Alg(c["A"])
    dom, n = A.dom, A.dim
    ck.expect(rank(products(A, [A.unit(i) for i in range(n)], [A.unit(i) for i in range(n)]), n, dom) == n,
              "A is not perfect")
    ck.expect(_quotient_center_trivial(A), "A/Leib(A) has a nonzero center")
    ck.expect(c["D"]["base"] == c["A"], "D is for a different algebra")
    _, Db, Dl = check_dercert(ck, c["D"], "D(A)")
    d = len(Db)
    I = _vectors(c["I"], dom)
    L = leib(A)
    # {c : image of sum c_a f_a lies in Leib}, computed directly
    annL = nullspace(L, n, dom) if rank(L, n, dom) else _identity(n, dom)
    rows = []
    for j in range(n):
        for w in annL:
            rows.append([sum((x * y for x, y in zip(w, _column(f, j))), dom.zero) for f in Db])
    ck.expect(same_span(nullspace(rows, d, dom), I, d, dom), "I differs from {f : Im f in Leib}")
    g = Alg(c["g"])
    P, Sec = _mat(c["proj"], dom), _mat(c["section"], dom)
    ck.expect(is_hom(Dl, g, P), "projection D(A) -> g is not a hom")
    ck.expect(mat_rank(P, dom) == g.dim == d - len(I), "projection has the wrong rank")
    ck.expect(all(not any(_apply(P, v)) for v in I), "projection does not kill I")
    ck.expect(_mul(P, Sec, dom) == _identity(g.dim, dom), "section is not a right inverse")
    return A, Db, Dl, I, g, P, Sec


def _check_L(ck: Checker, c: dict, A: Alg):
    ck.expect(c["L"]["base"] == c["A"], "L is for a different algebra")
    _, Lb, Ll = check_dercert(ck, c["L"], "L(A)", full=False)
    lefts = [_flat(A.left(A.unit(i))) for i in range(A.dim)]
    ck.expect(same_span([_flat(m) for m in Lb], lefts, A.dim * A.dim, A.dom), "L basis does not span L(A)")
    ck.expect(c["DL"]["base"] == c["L"]["lie"], "D(L) is for a different algebra")
    _, DLb, DLl = check_dercert(ck, c["DL"], "D(L(A))")
    return Lb, Ll, DLb, DLl


def _check_first_chart(ck: Checker, chart, Lb, Ll, Db, P, g: Alg, dom):
    for b, ell in enumerate(Lb):
        ck.expect(_column(chart, b) == _apply(P, coords(Db, ell, dom)), f"chart column {b} is not L_x + I")
    ck.expect(is_hom(Ll, g, chart) and mat_rank(chart, dom) == Ll.dim, "L(A) -> g is not an injective hom")


def _check_phi(ck: Checker, c: dict, A: Alg, Db, Dl, I, Lb, DLb, DLl):
    dom, n = A.dom, A.dim
    phi = _mat(c["phi"], dom)
    k = len(Lb)
    for a, f in enumerate(Db):
        image = _comb(_column(phi, a), DLb, (k, k), dom)
        for b, ell in enumerate(Lb):
            target = _sub(_mul(f, ell, dom), _mul(ell, f, dom))
            got = _comb(_column(image, b), Lb, (n, n), dom)
            ck.expect(got == target, f"phi(f_{a}) does not send L-basis {b} to [f, L_x]")
    ck.expect(is_hom(Dl, DLl, phi), "phi is not a hom")
    ck.expect(all(not any(_apply(phi, v)) for v in I), "phi does not kill I")
    ck.expect(mat_rank(phi, dom) == len(Db) - len(I), "kernel of phi is larger than I")
    return phi


def _check_th12(ck: Checker, c: dict):
    A, Db, Dl, I, g, P, Sec = _check_base(ck, c)
    dom = A.dom
    Lb, Ll, DLb, DLl = _check_L(ck, c, A)
    phi = _check_phi(ck, c, A, Db, Dl, I, Lb, DLb, DLl)
    levels = c["levels"]
    ck.expect(len(levels) == c["depth"] + 1, "wrong number of levels")
    lvl0 = _mat(levels[0]["matrix"], dom)
    ck.expect(lvl0 == _mul(phi, Sec, dom), "level 0 is not phi on coset representatives")
    ck.expect(is_hom(g, DLl, lvl0) and mat_rank(lvl0, dom) == g.dim, "level 0 is not an injective hom")
    prev = None
    for lvl in levels[1:]:
        K = Alg(lvl["K"])
        chart = _mat(lvl["chart"], dom)
        if prev is None:
            ck.expect(lvl["K"] == c["g"], "level 1 does not start at g")
            _check_first_chart(ck, chart, Lb, Ll, Db, P, g, dom)
        else:
            pK, pchart, pDKb, prev_alg = prev
            ck.expect(lvl["K"] == pK, "tower levels are not linked")
            for b in range(Ll.dim):
                v = _apply(pchart, Ll.unit(b))
                adv = _comb(_column(chart, b), pDKb, (len(v), len(v)), dom)
                ck.expect(adv == prev_alg.left(v), f"chart column {b} is not ad of the previous chart")
            ck.expect(is_hom(Ll, K, chart) and mat_rank(chart, dom) == Ll.dim, "chart is not an injective hom")
        ck.expect(lvl["DK"]["base"] == lvl["K"], "level derivations are for a different algebra")
        _, DKb, DKl = check_dercert(ck, lvl["DK"], f"level {lvl['index']}")
        Mx = _mat(lvl["matrix"], dom)
        _check_restriction(ck, f"level {lvl['index']}", DKb, DLb, chart, Mx, Ll.dim, dom)
        ck.expect(is_hom(DKl, DLl, Mx), f"level {lvl['index']} is not a hom")
        ck.expect(mat_rank(Mx, dom) == DKl.dim, f"level {lvl['index']} is not injective")
        prev = (lvl["DK"]["lie"], chart, DKb, K)


def _check_suzhu(ck: Checker, c: dict):
    A = Alg(c["A"])
    n, dom = A.dim, A.dom
    ck.expect(all(not any(A.sc[i][i]) for i in range(n)), "A is not Lie")
    ck.expect(all(A.sc[i][j] == [-x for x in A.sc[j][i]] for i in range(n) for j in range(n)), "A is not Lie")
    units = [A.unit(i) for i in range(n)]
    ck.expect(rank(products(A, units, units), n, dom) == n, "A is not perfect")
    maps = [[A.sc[i][j] for i in range(n)] for j in range(n)] + [[A.sc[j][i] for i in range(n)] for j in range(n)]
    ck.expect(not common_kernel(maps, n, dom), "A has a nonzero center")
    ck.expect(c["D"]["base"] == c["A"], "D is for a different algebra")
    _, _, G = check_dercert(ck, c["D"], "D(A)")
    ck.expect(c["DD"]["base"] == c["D"]["lie"], "D(D(A)) is for a different algebra")
    _, DDb, DDl = check_dercert(ck, c["DD"], "D(D(A))")
    ad = _mat(c["ad"], dom)
    for i in range(G.dim):
        ck.expect(_comb(_column(ad, i), DDb, (G.dim, G.dim), dom) == G.left(G.unit(i)), f"ad column {i} is wrong")
    ck.expect(mat_rank(ad, dom) == DDl.dim, "not every derivation of D(A) is inner")
    gm = [[G.sc[i][j] for i in range(G.dim)] for j in range(G.dim)]
    gm += [[G.sc[j][i] for i in range(G.dim)] for j in range(G.dim)]
    ck.expect(not common_kernel(gm, G.dim, dom), "D(A) has a nonzero center")


def _check_cor47(ck: Checker, c: dict):
    A, Db, Dl, I, g, P, Sec = _check_base(ck, c)
    dom = A.dom
    d = len(Db)
    ck.expect(c["D2"]["base"] == c["D"]["lie"], "D^2 is for a different algebra")
    _, D2b, D2l = check_dercert(ck, c["D2"], "D^2(A)")
    I2 = _vectors(c["I2"], dom)
    annI = nullspace(I, d, dom) if I else _identity(d, dom)
    rows = []
    for j in range(d):
        for w in annI:
            rows.append([sum((x * y for x, y in zip(w, _column(F, j))), dom.zero) for F in D2b])
    ck.expect(same_span(nullspace(rows, len(D2b), dom), I2, len(D2b), dom), "I^2 differs from {F : Im F in I}")
    ck.expect(c["Dg"]["base"] == c["g"], "D(g) is for a different algebra")
    _, Dgb, Dgl = check_dercert(ck, c["Dg"], "D(g)")
    phi = _mat(c["phi"], dom)
    for a, F in enumerate(D2b):
        ck.expect(_comb(_column(phi, a), Dgb, (g.dim, g.dim), dom) == _mul(_mul(P, F, dom), Sec, dom),
                  f"phi(F_{a}) is not P F S")
    ck.expect(is_hom(D2l, Dgl, phi), "phi is not a hom")
    ck.expect(all(not any(_apply(phi, v)) for v in I2), "phi does not kill I^2")
    ck.expect(mat_rank(phi, dom) == len(D2b) - len(I2), "kernel of phi is larger than I^2")
    Q = Alg(c["quotient"])
    qp, qs = _mat(c["quotient_proj"], dom), _mat(c["quotient_section"], dom)
    ck.expect(is_hom(D2l, Q, qp) and mat_rank(qp, dom) == Q.dim == len(D2b) - len(I2), "bad quotient projection")
    ck.expect(all(not any(_apply(qp, v)) for v in I2), "quotient projection does not kill I^2")
    ck.expect(_mul(qp, qs, dom) == _identity(Q.dim, dom), "quotient section is not a right inverse")
    hom = _mat(c["hom"], dom)
    ck.expect(hom == _mul(phi, qs, dom), "induced map is not phi on representatives")
    Lb, Ll, DLb, DLl = _check_L(ck, c, A)
    chart = _mat(c["chart"], dom)
    _check_first_chart(ck, chart, Lb, Ll, Db, P, g, dom)
    lm = _mat(c["level_map"], dom)
    _check_restriction(ck, "level map", Dgb, DLb, chart, lm, Ll.dim, dom)
    ck.expect(is_hom(Dgl, DLl, lm), "level map is not a hom")
    comp = _mat(c["composite"], dom)
    ck.expect(comp == _mul(lm, hom, dom), "composite is not level_map o hom")
    ck.expect(is_hom(Q, DLl, comp), "composite is not a hom")
    ck.expect(mat_rank(comp, dom) == Q.dim, "composite is not injective")


def _check_witness(ck: Checker, w: dict):
    K = Alg(w["ambient"])
    dom = K.dom
    f = _mat(w["f"], dom)
    E = _vectors(w["embedded_A"], dom)
    ck.expect(is_ideal(K, E), "embedded A is not an ideal of the witness ambient")
    ck.expect(is_derivation(K, f), "witness map is not a derivation")
    cols = [_column(f, i) for i in range(K.dim)]
    ck.expect(all(not any(a + b for a, b in zip(K.bracket(x, K.unit(j)), K.bracket(K.unit(j), x)))
                  for x in cols for j in range(K.dim)), "witness map does not land in the Lie center")
    ck.expect(not in_span(E, [_apply(f, e) for e in E], K.dim, dom), "witness map preserves A")


_HOLDS = {
    "th1_i_to_ii": _check_th1_i_to_ii,
    "th1_iii": _check_th1_iii,
    "cor33": _check_cor33,
    "cor34": _check_cor34,
    "prop41": _check_prop41,
    "th12": _check_th12,
    "suzhu": _check_suzhu,
    "cor47": _check_cor47,
}


@dataclass(frozen=True)
class RecheckResult:
    theorem: str
    instance: str
    verdict: str
    checked: bool
    checks: int
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems


def recheck_report(report: dict) -> RecheckResult:
    """Re-validate one report dict (as produced by ``VerificationReport.to_json``).

    ``holds`` reports must carry a certificate that passes every check.
    ``hypothesis_unmet`` reports are checked when they carry evidence (a
    witness derivation, or a subideal that is not an ideal).
    """
    th, verdict = report.get("theorem"), report.get("verdict")
    cert = report.get("certificate") or {}
    ck = Checker()
    checked = False
    try:
        if verdict == "holds":
            checked = True
            fn = _HOLDS.get(th)
            if fn is None:
                ck.expect(False, f"unknown theorem {th!r}")
            elif not cert:
                ck.expect(False, "holds without a certificate")
            else:
                fn(ck, cert)
        elif verdict == "hypothesis_unmet":
            if "witness" in cert:
                checked = True
                _check_witness(ck, cert["witness"])
            if th == "cor33" and cert.get("subideal") and not cert.get("ideal"):
                checked = True
                K = Alg(cert["K"])
                A = _vectors(cert["A"], K.dom)
                _check_chain(ck, K, A, cert["chain"])
                ck.expect(not is_ideal(K, A), "A is an ideal after all")
                ck.expect(not is_perfect_sub(K, A), "A is perfect after all")
        else:
            checked = True
            ck.expect(False, f"verdict {verdict!r}")
    except (KeyError, TypeError, ValueError, IndexError, RecheckError) as exc:
        ck.expect(False, f"malformed certificate: {type(exc).__name__}: {exc}")
    return RecheckResult(str(th), str(report.get("instance")), str(verdict), checked, ck.count, tuple(ck.problems))


def recheck_lines(lines: Iterable[str]) -> list[RecheckResult]:
    """Re-validate a JSON-lines report stream; blank lines are skipped."""
    return [recheck_report(json.loads(line)) for line in lines if line.strip()]
