import pytest
from fastapi.testclient import TestClient

from coupledsched.generators import gen_tightness
from coupledsched.serialize import instance_hash, instance_to_dict, threedm_to_dict
from coupledsched.generators import random_3dm2
from coupledsched.service import create_app


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


def test_health(client):
    data = client.get("/health").json()
    assert data["status"] == "ok"


def test_generate_tightness(client):
    response = client.post("/generate/tightness", json={})
    assert response.status_code == 200
    instance = response.json()["instance"]
    assert len(instance["tasks"]) == 9
    assert len(instance["edges"]) == 12
    assert set(instance["partition"]) == {"x", "y"}


def test_solve_exact_and_approx(client):
    instance = instance_to_dict(gen_tightness())
    exact = client.post("/solve", json={"algo": "exact", "instance": instance}).json()
    assert exact["makespan"] == 36
    assert exact["decomposition"]["p"] == 3
    assert exact["schedule"]["instance_hash"] == instance_hash(gen_tightness())

    approx = client.post("/solve", json={"algo": "approx", "instance": instance}).json()
    assert approx["makespan"] == 45
    assert approx["counts"] == {"f": 3, "m": 0, "s": 3}
    assert approx["bound_value"] == 45


def test_solve_reports_original_units(client):
    src = threedm_to_dict(random_3dm2(1, 2))
    generated = client.post("/generate/3dm", json={"source": src}).json()
    solved = client.post(
        "/solve", json={"algo": "exact", "instance": generated["instance"]}
    ).json()
    assert solved["scale"] == 3
    assert solved["makespan"] % 1 == 0
    # original units are scaled down by eps_den
    from fractions import Fraction

    assert Fraction(solved["makespan_original"]) == Fraction(solved["makespan"], 3)


def test_validate_roundtrip(client):
    instance = instance_to_dict(gen_tightness())
    solved = client.post("/solve", json={"algo": "approx", "instance": instance}).json()
    verdict = client.post(
        "/validate", json={"instance": instance, "schedule": solved["schedule"]}
    ).json()
    assert verdict["ok"] is True
    assert verdict["makespan"] == 45
    assert verdict["hash_matches"] is True
    assert verdict["violations"] == []


def test_validate_reports_violations_and_hash_mismatch(client):
    instance = instance_to_dict(gen_tightness())
    solved = client.post("/solve", json={"algo": "approx", "instance": instance}).json()
    mutated = dict(instance)
    mutated["edges"] = [e for e in instance["edges"] if set(e) != {"x3", "y1"}]
    verdict = client.post(
        "/validate", json={"instance": mutated, "schedule": solved["schedule"]}
    ).json()
    assert verdict["ok"] is False
    assert verdict["hash_matches"] is False
    assert any(v["kind"] == "incompatible-nesting" for v in verdict["violations"])


def test_classify_endpoint(client):
    instance = instance_to_dict(gen_tightness())
    report = client.post("/classify", json={"instance": instance}).json()
    assert report["kind"] == "general"
    assert report["x_connected"] is False
    assert report["y_independent"] is True


def test_generate_3dm_requires_one_source(client):
    response = client.post("/generate/3dm", json={})
    assert response.status_code == 400
    response = client.post(
        "/generate/3dm",
        json={"random_n": 2, "source": threedm_to_dict(random_3dm2(1, 0))},
    )
    assert response.status_code == 400


def test_generate_3dm_random(client):
    data = client.post("/generate/3dm", json={"random_n": 2, "seed": 5}).json()
    assert data["target"]["scale"] == 3
    assert data["target"]["value_at_zero"] == 63 * 2 * 3
    assert len(data["instance"]["tasks"]) == 6 + 4 + 4
    assert len(data["source"]["triples"]) == 4


def test_generate_pit_random(client):
    data = client.post("/generate/pit", json={"random_q": 2, "density": 0.8, "seed": 1}).json()
    assert data["target_makespan"] == 36
    assert len(data["instance"]["partition"]["y"]) == 3


def test_generate_random(client):
    data = client.post(
        "/generate/random",
        json={"nx": 4, "ny": 2, "alpha_y": 4, "density": 0.5, "seed": 7},
    ).json()
    report = client.post("/classify", json=data).json()
    assert report["kind"] == "quasi-split"


def test_domain_errors_are_400(client):
    response = client.post(
        "/generate/random",
        json={"nx": 2, "ny": 1, "alpha_y": 4, "density": 0.5, "seed": 7},
    )
    assert response.status_code == 400
    assert "complete" in response.json()["detail"]

    bad_instance = {"tasks": [{"id": "x", "alpha": 1}, {"id": "y", "alpha": 2}], "edges": [["x", "y"]]}
    response = client.post("/solve", json={"algo": "exact", "instance": bad_instance})
    assert response.status_code == 400


def test_schema_errors_are_422(client):
    response = client.post("/solve", json={"algo": "wrong", "instance": {"tasks": []}})
    assert response.status_code == 422


def test_experiment_endpoint(client):
    data = client.post("/experiment", json={"corpus_size": 5, "seed": 2, "max_x": 6}).json()
    assert len(data["rows"]) == 5
    assert data["summary"]["max_ratio"] <= 1.25


def test_gantt_endpoint(client):
    instance = instance_to_dict(gen_tightness())
    solved = client.post("/solve", json={"algo": "exact", "instance": instance}).json()
    text = client.post(
        "/render/gantt",
        json={"instance": instance, "schedule": solved["schedule"], "format": "text"},
    ).json()
    assert "makespan 36" in text["content"]
    svg = client.post(
        "/render/gantt",
        json={"instance": instance, "schedule": solved["schedule"], "format": "svg"},
    ).json()
    assert svg["content"].startswith("<svg")
