import json

import pytest

from chartensor.io import (
    InstanceError,
    corpus_names,
    instance_from_dict,
    load_corpus,
    parse_instance,
    parse_instance_text,
    serialize_instance,
)
from chartensor.exact import Matrix

MINIMAL = {"dimension": 2, "h_basis": [[[0, -1], [1, 0]]], "lambda": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]],
           "R0": [{"i": 0, "j": 1, "matrix": [[0, 1], [-1, 0]]}], "T0": []}


def _with(**kw):
    d = json.loads(json.dumps(MINIMAL))
    d.update(kw)
    return d


def test_bundled_flat_parses():
    inst = load_corpus("flat_e2")
    assert inst.n == 2 and len(inst.h_basis) == 1
    assert inst.h_basis[0] == Matrix([[0, -1], [1, 0]])


def test_parse_file(tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps(MINIMAL))
    inst = parse_instance(p)
    assert inst.R.pair(0, 1) == Matrix([[0, 1], [-1, 0]])


def test_i_less_than_j_required():
    with pytest.raises(InstanceError, match="i<j required") as exc:
        instance_from_dict(_with(R0=[{"i": 1, "j": 1, "matrix": [[0, 0], [0, 0]]}]))
    assert exc.value.location == "$.R0[0]"


def test_zero_denominator():
    with pytest.raises(InstanceError, match="zero denominator") as exc:
        instance_from_dict(_with(R0=[{"i": 0, "j": 1, "matrix": [["3/0", 0], [0, 0]]}]))
    assert exc.value.location == "$.R0[0].matrix[0][0]"


@pytest.mark.parametrize("bad,match", [
    (_with(dimension=0), "positive integer"),
    (_with(dimension=3), "3x3 matrix"),
    (_with(R0=[{"i": 0, "j": 1, "matrix": [[0.5, 0], [0, 0]]}]), "float"),
    (_with(R0=[{"i": 0, "j": 1, "matrix": [["a", 0], [0, 0]]}]), "malformed rational"),
    (_with(T0=[{"i": 0, "j": 2, "vector": [0, 0]}]), "out of range"),
    (_with(T0=[{"i": 0, "j": 1}]), "missing field 'vector'"),
    (_with(R0=[{"i": 0, "j": 1, "matrix": [[0, 0], [0, 0]]}, {"i": 0, "j": 1, "matrix": [[0, 0], [0, 0]]}]), "duplicate"),
    (_with(h_basis=[[[0, -1], [1, 0]], [[0, -2], [2, 0]]]), "linearly dependent"),
    (_with(group_generators=[[[1, 0], [0, 0]]]), "singular"),
    (_with(extra=1), "unknown field"),
    (_with(**{"lambda": [[[0, 0], [0, 0]]]}), "expected 2 matrices"),
])
def test_validation_errors(bad, match):
    with pytest.raises(InstanceError, match=match):
        instance_from_dict(bad)


def test_invalid_json_reports_line():
    with pytest.raises(InstanceError, match="line 2"):
        parse_instance_text('{"dimension": 2,\n  oops}')


@pytest.mark.parametrize("name", corpus_names())
def test_round_trip(name):
    inst = load_corpus(name)
    doc = serialize_instance(inst)
    again = instance_from_dict(json.loads(json.dumps(doc)))
    assert again == inst
    assert serialize_instance(again) == doc


def test_corpus_contents():
    names = set(corpus_names())
    for base in ("flat_e2", "sphere_s2", "hyperbolic_h2", "sphere_s3", "liegroup_so3_minus_connection"):
        assert base in names
        assert any(n != base and n.startswith(base.split("_")[0]) for n in names)
