import json

import pytest

import builders
from bgdkit.bialgebroid import coring_from_bialgebroid, validate_left_bialgebroid
from bgdkit.catalog import CATALOG_IDS, catalog
from bgdkit.coring import validate_coring
from bgdkit.entwining import check_left_entwining
from bgdkit.errors import MalformedInput, UnknownCatalogId
from bgdkit.exactfield import QQ
from bgdkit.serialize import CoringRecord, EntwiningRecord, ObjectFile, dumps, loads


@pytest.mark.parametrize("ident", CATALOG_IDS)
def test_catalog_round_trip_is_byte_identical(ident):
    text = dumps(catalog(ident))
    again = dumps(loads(text))
    assert again == text
    assert text.endswith("\n")


def test_unknown_catalog_id():
    with pytest.raises(UnknownCatalogId):
        catalog("C3")


def test_loaded_bialgebroid_keeps_its_verdict():
    for ident in ("C2", "BROKEN_PI"):
        of = loads(dumps(catalog(ident)))
        b = of.bialgebroids[ident]
        assert validate_left_bialgebroid(b).ok == validate_left_bialgebroid(catalog(ident).bialgebroids[ident]).ok


def test_rationals_are_strings_and_residues_are_ints():
    c2 = json.loads(dumps(catalog("C2")))
    f2 = json.loads(dumps(catalog("F2C2")))
    assert c2["field"] == "Q" and f2["field"] == {"Fp": 2}
    assert c2["bialgebroids"]["C2"]["pi"] == [["1", "1"]]
    assert f2["bialgebroids"]["F2C2"]["pi"] == [[1, 1]]


def entwining_file(name, e):
    of = ObjectFile(QQ)
    of.algebras["R"] = e.base
    of.bimodules["S"] = e.monoid.carrier
    of.bimodules["L"] = e.comonoid.carrier
    of.entwinings[name] = EntwiningRecord.from_structure(e)
    return of


@pytest.mark.parametrize("name,e,valid", [t for t in builders.triples() if t[1].base.field == QQ],
                         ids=[t[0] for t in builders.triples() if t[1].base.field == QQ])
def test_entwining_record_round_trip(name, e, valid):
    text = dumps(entwining_file(name, e))
    of = loads(text)
    assert dumps(of) == text
    assert check_left_entwining(of.entwinings[name].build()).ok == valid


def test_coring_record_round_trip():
    c = coring_from_bialgebroid(catalog("ENV2").bialgebroids["ENV2"])
    of = ObjectFile(QQ)
    of.algebras["A"] = c.over
    of.bimodules["C"] = c.carrier
    of.corings["ENV2-coring"] = CoringRecord.from_coring(c)
    text = dumps(of)
    back = loads(text).corings["ENV2-coring"].build()
    assert back.cmul == c.cmul and back.counit == c.counit
    assert validate_coring(back).ok


def mutate(ident, fn):
    data = json.loads(dumps(catalog(ident)))
    fn(data)
    return json.dumps(data)


BAD = {
    "not json": "{",
    "no field": json.dumps({"algebras": {}}),
    "bad field": json.dumps({"field": {"Fp": 4}}),
    "unit shape": mutate("C2", lambda d: d["algebras"]["A"].update(unit=[["1", "0"], ["0", "0"], ["0", "1"]])),
    "mul shape": mutate("C2", lambda d: d["algebras"]["A"]["mul"].pop()),
    "bad scalar": mutate("C2", lambda d: d["bialgebroids"]["C2"].update(pi=[["1", "x"]])),
    "dangling name": mutate("C2", lambda d: d["bialgebroids"]["C2"].update(R="Z")),
    "zero denominator": mutate("C2", lambda d: d["bialgebroids"]["C2"].update(pi=[["1", "1/0"]])),
    "not invertible mod p": mutate("F2C2", lambda d: d["bialgebroids"]["F2C2"].update(pi=[["1/2", 1]])),
    "unknown section": mutate("K1", lambda d: d.update(widgets={})),
}


@pytest.mark.parametrize("case", BAD)
def test_malformed_input(case):
    with pytest.raises(MalformedInput):
        loads(BAD[case])
