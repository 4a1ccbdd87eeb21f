import json
from fractions import Fraction

import pytest

from filiform.catalog import (
    SchemaError,
    UnknownAlgebra,
    default_catalog_path,
    derive_constants,
    eq5_residual,
    load_catalog,
    named_constants,
    parse_catalog,
)
from filiform.exact import ParseError, parse_expr

A = parse_expr("a")


def shipped():
    return json.loads(default_catalog_path().read_text())


def test_shape(cat):
    assert len(cat.rows) == 28
    assert len(cat.diag) == 10
    assert len(cat.cn_list) == 28
    assert len(cat.families) + len(cat.isolated) == 38
    assert list(cat.diag_entry("mu9_38").weights) == [1, 0, 1, 2, 3, 4, 5, 6, 7]


def test_case_assignment(cat):
    assert cat.cases_for("mu9_8") == ["7.3"]
    assert cat.cases_for("mu9_26") == ["6.1"]
    assert cat.cases_for("mu9_6") == ["6.6a"]
    for name in cat.cn_list:
        assert cat.cases_for(name), name


def test_unknown_algebra(cat):
    with pytest.raises(UnknownAlgebra):
        cat.row("mu9_99")


def test_row6_constants(cat):
    C = named_constants(cat.row("mu9_6"))
    assert C["C5_23"] == (-3) + 3 * (-4) + 2 * 8
    assert C["C8_23"] == C["C9_24"] == 0
    mu = derive_constants(cat.row("mu9_6"))
    assert mu.constant(4, 5, 9) == 8
    assert mu.constant(2, 3, 5) == 1


def test_row1_c5_23(cat):
    C = named_constants(cat.row("mu9_1"))
    assert C["C5_23"] == 1
    for a in (3, 5, 7):
        a = Fraction(a)
        hand = ((2 - 5 * a) + 3 * (2 * a - 2 * a * a) + 6 * a * a) / (a + 2)
        assert C["C5_23"].evaluate({"a": a}) == hand == 1


def test_eq5(cat):
    assert eq5_residual(cat.row("mu9_6")) == -3 * 16 + 2 * (-3) * 8 + (-4) * 8 + 2 * 64 == 0
    r1 = eq5_residual(cat.row("mu9_1"))
    assert r1.is_zero()
    c = {k: parse_expr(v) for k, v in
         {"45": "3*a^2/(a+2)", "36": "(2*a-2*a^2)/(a+2)", "27": "(2-5*a)/(a+2)"}.items()}
    for a in (3, 5, 7, Fraction(11, 2), Fraction(-5, 2)):
        v = {k: e.evaluate({"a": a}) for k, e in c.items()}
        assert -3 * v["36"] ** 2 + 2 * v["27"] * v["45"] + v["36"] * v["45"] + 2 * v["45"] ** 2 == 0


def test_zero_row_eq5(cat):
    row = cat.row("mu9_29")
    zero = type(row)("z", (), {k: parse_expr("0") for k in row.c9}, ())
    assert eq5_residual(zero) == 0


def test_tenth_key_rejected():
    data = shipped()
    data["algebras"][0]["c9"]["99"] = "1"
    with pytest.raises(SchemaError) as e:
        parse_catalog(data)
    assert e.value.pointer == "/algebras/0/c9/99"


def test_missing_slot_rejected():
    data = shipped()
    del data["algebras"][3]["c9"]["45"]
    with pytest.raises(SchemaError) as e:
        parse_catalog(data)
    assert e.value.pointer.startswith("/algebras/3")


def test_bad_expression():
    data = shipped()
    data["algebras"][0]["c9"]["45"] = "3*a^^2"
    with pytest.raises(ParseError):
        parse_catalog(data)


def test_undeclared_parameter():
    data = shipped()
    data["algebras"][0]["c9"]["45"] = "z"
    with pytest.raises(SchemaError):
        parse_catalog(data)


def test_env_var(tmp_path, monkeypatch):
    data = shipped()
    data["algebras"] = data["algebras"][:3]
    p = tmp_path / "small.json"
    p.write_text(json.dumps(data))
    monkeypatch.setenv("FILIFORM_CATALOG", str(p))
    assert default_catalog_path() == p
    with pytest.raises(SchemaError):
        # cases still name algebras that are no longer present
        load_catalog()


def test_exclusions(cat):
    ex = {(e.algebra, e.condition) for e in cat.exclusions}
    assert ("mu9_17", "b != 0") in ex
    assert {c for a, c in ex if a == "mu9_1"} == {"a = -1", "a = 0", "a = 1", "a = 1/2"}
    row = cat.row("mu9_1")
    assert any(e == A for e in row.excluded)
