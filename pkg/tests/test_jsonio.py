from fractions import Fraction

import pytest

from homcount import (
    ArityMismatch,
    EmptyUniverse,
    ForeignElement,
    FormatError,
    UnknownSymbol,
    expand_surjhom,
)
from homcount.jsonio import (
    expansion_from_obj,
    expansion_to_obj,
    format_fraction,
    parse_fraction,
    signature_from_obj,
    structure_from_obj,
    structure_to_obj,
)

from oracles import ISO2

GOOD = {
    "signature": {"E": 2},
    "universe": ["a", "b"],
    "relations": {"E": [["a", "b"], ["b", "a"]]},
}


def test_structure_round_trip():
    parsed = structure_from_obj(GOOD)
    again = structure_from_obj(structure_to_obj(parsed))
    assert again == parsed
    assert structure_to_obj(again) == structure_to_obj(parsed)


def test_serialization_sorts_tuples():
    scrambled = dict(GOOD, relations={"E": [["b", "a"], ["a", "b"]]})
    assert structure_to_obj(structure_from_obj(scrambled)) == structure_to_obj(
        structure_from_obj(GOOD)
    )


def test_signature_parsing():
    sig = signature_from_obj({"E": 2, "U": 1})
    assert sig.symbols == (("E", 2), ("U", 1))
    with pytest.raises(FormatError):
        signature_from_obj({"E": 0})
    with pytest.raises(FormatError):
        signature_from_obj({"E": "two"})
    with pytest.raises(FormatError):
        signature_from_obj(["E"])


def test_structure_parsing_rejections():
    with pytest.raises(FormatError):
        structure_from_obj(dict(GOOD, extra=1))
    with pytest.raises(FormatError):
        structure_from_obj({"signature": {"E": 2}, "universe": ["a"]})
    with pytest.raises(FormatError):
        structure_from_obj(dict(GOOD, universe=["a", 2]))
    with pytest.raises(FormatError):  # duplicate tuple
        structure_from_obj(dict(GOOD, relations={"E": [["a", "b"], ["a", "b"]]}))
    with pytest.raises(EmptyUniverse):
        structure_from_obj(dict(GOOD, universe=[], relations={"E": []}))
    with pytest.raises(ForeignElement):
        structure_from_obj(dict(GOOD, relations={"E": [["a", "z"]]}))
    with pytest.raises(ArityMismatch):
        structure_from_obj(dict(GOOD, relations={"E": [["a"]]}))
    with pytest.raises(UnknownSymbol):
        structure_from_obj(dict(GOOD, relations={"E": [], "F": []}))


def test_fraction_formatting():
    assert format_fraction(Fraction(-2)) == "-2"
    assert format_fraction(Fraction(3, 4)) == "3/4"
    assert parse_fraction("-2") == -2
    assert parse_fraction("3/4") == Fraction(3, 4)
    with pytest.raises(FormatError):
        parse_fraction("three")


def test_expansion_round_trip():
    lc = expand_surjhom(ISO2)
    obj = expansion_to_obj("surjhom", ISO2, lc)
    kind, template, parsed = expansion_from_obj(obj)
    assert kind == "surjhom"
    assert [c for c, _ in parsed.terms] == [c for c, _ in lc.terms]
    assert [str(c) for c, _ in parsed.terms] == ["1", "-2"]
    assert expansion_to_obj(kind, template, parsed)["terms"] == obj["terms"]


def test_expansion_parsing_rejections():
    lc = expand_surjhom(ISO2)
    obj = expansion_to_obj("surjhom", ISO2, lc)
    with pytest.raises(FormatError):
        expansion_from_obj(dict(obj, kind="other"))
    broken = dict(obj, terms=[dict(obj["terms"][0], coefficient="x")])
    with pytest.raises(FormatError):
        expansion_from_obj(broken)
