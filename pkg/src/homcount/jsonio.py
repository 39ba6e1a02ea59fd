"""JSON interchange formats.

Structure files:
    {"signature": {"E": 2}, "universe": ["a", "b"],
     "relations": {"E": [["a", "b"], ["b", "a"]]}}
Signature files:
    {"E": 2, "U": 1}
Expansion files:
    {"kind": "surjhom" | "condens", "template": <structure>,
     "terms": [{"coefficient": "-2", "structure": <structure>}, ...]}

Tuple order inside a relation is irrelevant on input and sorted on output;
duplicate tuples are rejected.  Coefficients are exact decimal integers or
"p/q" strings.  Serialization is byte-deterministic for a fixed input.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .basis import LinearCombination
from .errors import FormatError
from .structures import Signature, Structure, validate


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"coefficient: cannot parse {text!r} as a rational") from exc


def signature_from_obj(obj) -> Signature:
    if not isinstance(obj, dict):
        raise FormatError("signature: expected an object of name -> arity")
    symbols = []
    for name, arity in obj.items():
        if not isinstance(name, str):
            raise FormatError(f"signature: symbol name {name!r} must be a string")
        if not isinstance(arity, int) or isinstance(arity, bool) or arity < 1:
            raise FormatError(f"signature.{name}: arity must be an integer >= 1")
        symbols.append((name, arity))
    return Signature(tuple(symbols))


def signature_to_obj(sig: Signature) -> dict:
    return {name: arity for name, arity in sig.symbols}


def structure_from_obj(obj) -> Structure:
    if not isinstance(obj, dict):
        raise FormatError("structure: expected an object")
    extra = set(obj) - {"signature", "universe", "relations"}
    if extra:
        raise FormatError(f"structure: unexpected keys {sorted(extra)}")
    for field in ("signature", "universe", "relations"):
        if field not in obj:
            raise FormatError(f"structure: missing key {field!r}")
    sig = signature_from_obj(obj["signature"])
    universe = obj["universe"]
    if not isinstance(universe, list) or not all(isinstance(e, str) for e in universe):
        raise FormatError("universe: expected a list of strings")
    relations = obj["relations"]
    if not isinstance(relations, dict):
        raise FormatError("relations: expected an object of symbol -> tuple list")
    rels = {}
    for name, tuples in relations.items():
        if not isinstance(tuples, list):
            raise FormatError(f"relations.{name}: expected a list of tuples")
        seen = set()
        parsed = []
        for t in tuples:
            if not isinstance(t, list) or not all(isinstance(e, str) for e in t):
                raise FormatError(f"relations.{name}: tuple {t!r} must be a list of strings")
            tup = tuple(t)
            if tup in seen:
                raise FormatError(f"relations.{name}: duplicate tuple {t!r}")
            seen.add(tup)
            parsed.append(tup)
        rels[name] = parsed
    s = Structure(sig, universe, rels)
    validate(s)
    return s


def structure_to_obj(s: Structure) -> dict:
    return {
        "signature": signature_to_obj(s.signature),
        "universe": [str(e) for e in s.universe],
        "relations": {
            name: sorted([str(e) for e in t] for t in s.relations[name])
            for name in s.signature.names
        },
    }


def expansion_to_obj(kind: str, template: Structure, lc: LinearCombination) -> dict:
    return {
        "kind": kind,
        "template": structure_to_obj(template),
        "terms": [
            {"coefficient": format_fraction(coef), "structure": structure_to_obj(struct)}
            for coef, struct in lc.terms
        ],
    }


def expansion_from_obj(obj) -> tuple[str, Structure, LinearCombination]:
    if not isinstance(obj, dict):
        raise FormatError("expansion: expected an object")
    kind = obj.get("kind")
    if kind not in ("surjhom", "condens"):
        raise FormatError(f"kind: expected 'surjhom' or 'condens', got {kind!r}")
    if "template" not in obj or "terms" not in obj:
        raise FormatError("expansion: missing 'template' or 'terms'")
    template = structure_from_obj(obj["template"])
    if not isinstance(obj["terms"], list):
        raise FormatError("terms: expected a list")
    pairs = []
    for i, term in enumerate(obj["terms"]):
        if not isinstance(term, dict) or set(term) != {"coefficient", "structure"}:
            raise FormatError(f"terms[{i}]: expected coefficient and structure keys")
        coef = parse_fraction(term["coefficient"])
        struct = structure_from_obj(term["structure"])
        if struct.signature != template.signature:
            raise FormatError(f"terms[{i}]: signature differs from the template's")
        pairs.append((coef, struct))
    return kind, template, LinearCombination.from_terms(pairs)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def load_structure(path: str) -> Structure:
    return structure_from_obj(load_json(path))


def load_signature(path: str) -> Signature:
    return signature_from_obj(load_json(path))


def load_expansion(path: str) -> tuple[str, Structure, LinearCombination]:
    return expansion_from_obj(load_json(path))
