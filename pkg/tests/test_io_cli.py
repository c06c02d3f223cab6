import io
import json

import pytest

from leibniz import catalog
from leibniz.cli import main
from leibniz.errors import InputError
from leibniz.io import algebra_from_json, algebra_to_json, dumps_algebra, load_algebra, subspace_from_json
from leibniz.exactla import GF, QQ


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def emit(tmp_path, key, name=None):
    path = tmp_path / f"{name or key}.json"
    code, _, _ = run("catalog", "emit", key, "-o", str(path))
    assert code == 0
    return path


@pytest.mark.parametrize("key", catalog.keys())
def test_round_trip_byte_identical(key, tmp_path):
    code, first, _ = run("catalog", "emit", key)
    assert code == 0
    path = tmp_path / "a.json"
    path.write_text(first)
    code, out, _ = run("check", str(path))
    assert code == 0 and json.loads(out)["leibniz"] is True
    again = dumps_algebra(load_algebra(path))
    assert again == first


def test_algebra_json_round_trip_over_gf():
    from leibniz.algebra import LeibnizAlgebra

    A = LeibnizAlgebra.from_products(2, {(0, 0): {1: 3}}, GF(5), "nil2/5")
    B = algebra_from_json(json.loads(dumps_algebra(A)))
    assert B == A and B.field == GF(5)


def test_right_oriented_file_round_trips(tmp_path, alg):
    obj = algebra_to_json(alg("h5"))
    obj["orientation"] = "right"
    obj["sc"] = [[[str(a) for a in row] for row in plane] for plane in alg("h5").oriented_sc("right")]
    B = algebra_from_json(obj)
    assert B.sc == alg("h5").sc
    assert algebra_to_json(B) == obj


def test_check_exit_codes(tmp_path):
    good = emit(tmp_path, "nil2")
    assert run("check", str(good))[0] == 0
    bad = json.loads(good.read_text())
    # [e1,e1] = e1 and [e1,e2] = e2 with [e2,e1] = 0: [e1,[e1,e1]] = e1 but the right side is 2 e1
    bad["sc"][0][0] = ["1", "0"]
    bad["sc"][0][1] = ["0", "1"]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad))
    code, out, _ = run("check", str(p))
    assert code == 1
    obj = json.loads(out)
    assert obj["leibniz"] is False and len(obj["failing_triple"]) == 3
    # the other commands treat a non-Leibniz file as bad input
    assert run("info", str(p))[0] == 2


def test_malformed_json_reports_position(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{\n  "name": "x",\n  "dim": 1,,\n}')
    code, out, err = run("check", str(p))
    assert code == 2 and out == ""
    assert "line 3" in err and "column" in err


@pytest.mark.parametrize("mutate", [
    lambda o: o.pop("sc"),
    lambda o: o.update(dim=-1),
    lambda o: o.update(orientation="up"),
    lambda o: o.update(field={"kind": "prime", "p": 4}),
    lambda o: o["sc"][0][0].__setitem__(0, 1),
    lambda o: o["sc"][0][0].__setitem__(0, "1/0"),
    lambda o: o["sc"][0].pop(),
])
def test_schema_errors_are_bad_input(mutate, tmp_path):
    obj = json.loads(dumps_algebra(catalog.get("nil2")))
    mutate(obj)
    p = tmp_path / "x.json"
    p.write_text(json.dumps(obj))
    with pytest.raises(InputError):
        load_algebra(p)
    assert run("check", str(p))[0] == 2


def test_missing_file_and_unknown_key():
    assert run("check", "/nonexistent/file.json")[0] == 2
    assert run("info", "catalog:nope")[0] == 2
    assert run("frobnicate")[0] == 2


def test_info_outputs():
    code, out, err = run("info", "catalog:h5")
    obj = json.loads(out)
    assert code == 0 and obj["perfect"] is True and obj["lie"] is False
    assert "dim Leib" in err
    code, out, err = run("info", "catalog:h5", "--table")
    assert "dim Leib" in out and err == ""


def test_derivations_command():
    code, out, _ = run("derivations", "catalog:nil2", "--lie", "--ideal-I", "--bracket-table")
    obj = json.loads(out)
    assert code == 0 and obj["dim"] == 2
    assert obj["lie_derivations"]["dim"] == 1 and obj["ideal_I"]["dim"] == 1
    assert obj["bracket_table"]["dim"] == 2


@pytest.mark.parametrize("variant,key,dim,ideal", [("lie", "sl2", 6, True), ("bms", "sl2", 6, False),
                                                   ("lie", "nil2", 3, True), ("bms", "ab1", 2, True)])
def test_holomorph_command(variant, key, dim, ideal, tmp_path):
    code, out, err = run("holomorph", f"catalog:{key}", "--variant", variant)
    assert code == 0
    H = algebra_from_json(json.loads(out))
    assert H.dim == dim
    status = json.loads(err)
    assert status["A_is_ideal"] is ideal
    target = tmp_path / "h.json"
    code, out, _ = run("holomorph", f"catalog:{key}", "--variant", variant, "-o", str(target))
    assert json.loads(out)["dim"] == dim
    assert run("check", str(target))[0] == 0


def test_construct_direct_product_and_quotient(tmp_path):
    code, out, _ = run("construct", "direct-product", "catalog:sl2", "catalog:sl2", "--name", "ss")
    assert code == 0 and algebra_from_json(json.loads(out)) == catalog.get("sl2sl2").renamed("ss")
    code, out, err = run("construct", "quotient", "catalog:h5", "--ideal", "leib")
    Q = algebra_from_json(json.loads(out))
    assert code == 0 and Q == catalog.get("sl2").renamed(Q.name)
    code, out, _ = run("construct", "quotient", "catalog:nil2", "--ideal", '[["0","1"]]')
    assert algebra_from_json(json.loads(out)).dim == 1
    f = tmp_path / "ideal.json"
    f.write_text('[["0","1"]]')
    assert run("construct", "quotient", "catalog:nil2", "--ideal", str(f))[0] == 0


def test_quotient_by_non_ideal_names_pair():
    code, out, err = run("construct", "quotient", "catalog:sl2", "--ideal", '[["1","0","0"]]')
    assert code == 2 and out == ""
    assert "not an ideal" in err and "e_" in err and "s_0" in err


def test_construct_hemisemidirect(tmp_path):
    from leibniz.catalog import natural_sl2_module
    from leibniz.io import representation_to_json

    rep = tmp_path / "rep.json"
    rep.write_text(json.dumps(representation_to_json(natural_sl2_module())))
    code, out, _ = run("construct", "hemisemidirect", "--rep", str(rep), "--name", "h5")
    assert code == 0 and out == dumps_algebra(catalog.get("h5"))
    bad = representation_to_json(natural_sl2_module())
    bad["action"][2] = bad["action"][0]
    rep.write_text(json.dumps(bad))
    code, _, err = run("construct", "hemisemidirect", "--rep", str(rep))
    assert code == 2 and "basis pair" in err


def test_witness_command():
    code, out, _ = run("witness", "catalog:nil2")
    obj = json.loads(out)
    assert code == 0 and obj["valid"] and obj["checks"]["f_escapes_A"]
    code, out, _ = run("witness", "catalog:sl2")
    assert code == 1 and json.loads(out)["perfect"] is True


def test_tower_command():
    code, out, _ = run("tower", "catalog:sl2", "--depth", "2")
    assert code == 0 and json.loads(out)["dims"] == [3, 3, 3]
    code, out, _ = run("tower", "catalog:nil2")
    assert code == 1 and "central_element" in json.loads(out)["witness"]
    assert run("tower", "catalog:sl2", "--depth", "-1")[0] == 2


def test_catalog_list():
    code, out, _ = run("catalog", "list")
    keys = [line.split("\t")[0] for line in out.splitlines()]
    assert code == 0 and keys == catalog.keys()
    assert run("catalog", "emit")[0] == 2


def test_catalog_override(tmp_path, monkeypatch):
    (tmp_path / "mine.json").write_text(dumps_algebra(catalog.get("heis3")))
    (tmp_path / "nil2.json").write_text(dumps_algebra(catalog.get("ab2")))
    monkeypatch.setenv("LEIBNIZ_CATALOG_DIR", str(tmp_path))
    assert "mine" in catalog.keys()
    assert catalog.get("mine").name == "mine" and catalog.get("mine").dim == 3
    assert catalog.get("nil2").sc == catalog.get("ab2").sc
    bad = json.loads(dumps_algebra(catalog.get("sl2")))
    bad["sc"][0][2] = ["0", "2", "0"]
    (tmp_path / "broken.json").write_text(json.dumps(bad))
    with pytest.raises(InputError):
        catalog.get("broken")
    assert run("info", "catalog:broken")[0] == 2


def test_outputs_are_byte_stable():
    for argv in (("info", "catalog:h5"), ("derivations", "catalog:h5", "--bracket-table"),
                 ("verify", "th12", "--catalog", "h5")):
        assert run(*argv) == run(*argv)


def test_every_json_line_reparses():
    code, out, _ = run("verify", "all", "--catalog", "nil2", "sl2")
    assert code == 0
    for line in out.splitlines():
        json.loads(line)


def test_subspace_from_json_validation():
    assert subspace_from_json([["1", "0"], ["2", "0"]], 2, QQ).dim == 1
    with pytest.raises(InputError):
        subspace_from_json([["1"]], 2, QQ)
    with pytest.raises(InputError):
        subspace_from_json({"v": 1}, 2, QQ)
