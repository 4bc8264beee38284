import pytest

from conftest import build_stretched
from coupledsched.errors import ParseError
from coupledsched.generators import gen_3dm, gen_tightness, random_3dm2, random_tripartite
from coupledsched.model import CompatibilityGraph, CoupledTask, Instance, Schedule
from coupledsched.serialize import (
    dumps,
    instance_from_dict,
    instance_hash,
    instance_to_dict,
    parse_json,
    schedule_from_dict,
    schedule_to_dict,
    threedm_from_dict,
    threedm_to_dict,
    tripartite_from_dict,
    tripartite_to_dict,
)


def test_instance_round_trip():
    inst = gen_tightness()
    again = instance_from_dict(instance_to_dict(inst))
    assert again == inst


def test_instance_round_trip_with_scale_and_general_task():
    tasks = [CoupledTask("g", 2, 5, 3), CoupledTask("h", 1, 1, 1, 1)]
    inst = Instance(tasks, CompatibilityGraph(["g", "h"], [("g", "h")]), scale=4)
    payload = instance_to_dict(inst)
    assert payload["tasks"][0] == {"id": "g", "a": 2, "L": 5, "b": 3}
    assert payload["tasks"][1] == {"id": "h", "alpha": 1}
    assert instance_from_dict(payload) == inst


def test_serialize_is_canonical():
    inst, _ = gen_3dm(random_3dm2(2, 3))
    text = dumps(instance_to_dict(inst))
    reparsed = instance_from_dict(parse_json(text))
    assert dumps(instance_to_dict(reparsed)) == text


def test_hash_is_format_independent():
    inst = gen_tightness()
    sparse = dumps(instance_to_dict(inst))
    dense = str(instance_to_dict(inst))  # different formatting entirely
    assert dense != sparse
    assert instance_hash(instance_from_dict(parse_json(sparse))) == instance_hash(inst)
    other = build_stretched({"x": 1}, [])
    assert instance_hash(other) != instance_hash(inst)


def test_schedule_round_trip():
    inst = gen_tightness()
    schedule = Schedule({t.id: i * 30 for i, t in enumerate(inst.tasks)})
    payload = schedule_to_dict(inst, schedule)
    digest, again = schedule_from_dict(payload)
    assert digest == instance_hash(inst)
    assert again == schedule


def test_parse_json_reports_position():
    with pytest.raises(ParseError, match=r"line 1, column"):
        parse_json("{not json", "broken.json")
    with pytest.raises(ParseError, match="top level"):
        parse_json("[1, 2]")


def test_instance_parse_diagnostics():
    with pytest.raises(ParseError, match=r"tasks"):
        instance_from_dict({"scale": 1})
    with pytest.raises(ParseError, match=r"tasks\[0\]\.id"):
        instance_from_dict({"tasks": [{"alpha": 1}]})
    with pytest.raises(ParseError, match="not both"):
        instance_from_dict({"tasks": [{"id": "x", "alpha": 1, "a": 1}]})
    with pytest.raises(ParseError, match=r"missing fields \['L', 'b'\]"):
        instance_from_dict({"tasks": [{"id": "x", "a": 1}]})
    with pytest.raises(ParseError, match="alpha or a/L/b"):
        instance_from_dict({"tasks": [{"id": "x"}]})
    with pytest.raises(ParseError, match=r"edges\[0\]"):
        instance_from_dict({"tasks": [{"id": "x", "alpha": 1}], "edges": [["x"]]})
    with pytest.raises(ParseError, match=r"partition\.x"):
        instance_from_dict({"tasks": [{"id": "x", "alpha": 1}], "partition": {"y": []}})
    with pytest.raises(ParseError, match=r"scale.*integer"):
        instance_from_dict({"scale": "big", "tasks": []})
    with pytest.raises(ParseError, match=r"alpha.*integer"):
        instance_from_dict({"tasks": [{"id": "x", "alpha": True}]})


def test_schedule_parse_diagnostics():
    with pytest.raises(ParseError, match="starts"):
        schedule_from_dict({"instance_hash": ""})
    with pytest.raises(ParseError, match="integer"):
        schedule_from_dict({"instance_hash": "", "starts": {"x": "0"}})


def test_threedm_round_trip():
    src = random_3dm2(3, 5)
    payload = threedm_to_dict(src)
    again = threedm_from_dict(payload)
    assert again.triples == src.triples
    assert set(again.a_part) == set(src.a_part)


def test_threedm_parse_errors():
    with pytest.raises(ParseError, match="expected three"):
        threedm_from_dict({"n": 1, "triples": [["a", "b"]]})
    with pytest.raises(ParseError, match="distinct A-elements"):
        threedm_from_dict({"n": 2, "triples": [["a", "b", "c"], ["a", "b2", "c2"]]})


def test_tripartite_round_trip():
    src = random_tripartite(3, 0.5, 4)
    payload = tripartite_to_dict(src)
    again = tripartite_from_dict(payload)
    assert again == src


def test_tripartite_parse_errors():
    with pytest.raises(ParseError, match=r"parts\.C"):
        tripartite_from_dict({"parts": {"A": ["a"], "B": ["b"]}, "edges": []})
    with pytest.raises(ParseError, match=r"edges\[0\]"):
        tripartite_from_dict({"parts": {"A": ["a"], "B": ["b"], "C": ["c"]}, "edges": [["a"]]})
