import json

import numpy as np
import pytest

from sdchains.errors import InvariantViolation, NameNotFound, NotAssociative, ParseError
from sdchains.session import fixture_session, load_session, read_json


def test_fixture_file_is_current(tmp_path):
    from pathlib import Path

    stored = json.loads((Path(__file__).parents[1] / "fixtures" / "session.json").read_text())
    assert stored == json.loads(json.dumps(fixture_session()))


def test_load_fixture_session():
    s = load_session(fixture_session())
    assert {n: a.dim for n, a in s.algebras.items()} == {"F1": 2, "F2": 3, "F3": 9}
    assert s.chain("F3chain").n == 2 and s.module("C1").dim == 9
    assert s.options == {"N": 4, "W": 3, "seed": 0, "trials": 64}


def test_algebra_round_trip():
    doc = fixture_session()
    s = load_session(doc)
    again = load_session(json.loads(json.dumps(doc)))
    assert np.array_equal(s.algebra("F3").mult, again.algebra("F3").mult)


def test_empty_session():
    s = load_session({})
    assert not s.algebras and not s.problems


def test_empty_file_reads_as_empty(tmp_path):
    f = tmp_path / "empty.json"
    f.write_text("")
    assert read_json(f) == {}


def test_malformed_inputs(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        read_json(bad)
    with pytest.raises(ParseError):
        read_json(tmp_path / "missing.json")
    with pytest.raises(ParseError):
        load_session({"algebras": {"A": {"dim": 2, "mult": [[0, 0, 0]]}}})
    with pytest.raises(ParseError):
        load_session({"bogus": 1})
    with pytest.raises(ParseError):
        load_session({"options": {"N": "four"}})


def non_associative():
    # x^2 = 0, x y = y
    return {"p": 5, "algebras": {"A": {"dim": 3, "mult": [[0, j, j, 1] for j in range(3)] + [[j, 0, j, 1] for j in range(1, 3)] + [[1, 2, 2, 1], [2, 1, 2, 1]]}}}


def test_invalid_algebra_raises_or_is_collected():
    with pytest.raises(NotAssociative) as err:
        load_session(non_associative())
    assert isinstance(err.value, InvariantViolation) and "(e1 e1) e2" in str(err.value)
    s = load_session(non_associative(), validate=False)
    assert s.problems and s.problems[0][0] == "A"


def test_unknown_names():
    s = load_session(fixture_session())
    with pytest.raises(NameNotFound):
        s.module("nope")
    doc = fixture_session()
    doc["chains"]["broken"] = {"ring": "F3", "modules": ["C9"]}
    with pytest.raises(NameNotFound):
        load_session(doc)


def test_explicit_module_validated():
    doc = fixture_session()
    doc["modules"]["bad"] = {"ring": "F1", "dim": 1, "action": [[[1]], [[1]]]}
    with pytest.raises(InvariantViolation):
        load_session(doc)
