import pytest
from fastapi.testclient import TestClient

from sdchains.service import app
from sdchains.session import fixture_session


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    assert client.get("/health").json()["status"] == "ok"


def test_validate(client):
    r = client.post("/validate", json={"session": fixture_session()})
    assert r.status_code == 200 and r.json()["exit_code"] == 0


def test_semidual(client):
    doc = fixture_session()
    ok = client.post("/semidual", json={"session": doc, "module": "D2"}).json()
    bad = client.post("/semidual", json={"session": doc, "module": "k2", "bound": 3}).json()
    assert ok["exit_code"] == 0 and bad["exit_code"] == 1 and bad["bounds"] == {"N": 3}


def test_input_errors_are_422(client):
    r = client.post("/semidual", json={"session": fixture_session(), "module": "nope"})
    assert r.status_code == 422 and "NameNotFound" in r.json()["detail"]
    assert client.post("/semidual", json={"session": {}, "module": "x", "bound": 0}).status_code == 422


def test_length_one_pipeline(client):
    doc = fixture_session()
    r = client.post("/present", json={"session": doc, "chain": "F2chain"}).json()
    assert r["report"]["exit_code"] == 0 and r["presentation"]["Q"]["dim"] == 6
    q = {"presentation": r["presentation"]}
    for path in ("/verify-theorem", "/converse", "/tensor-lemmas"):
        assert client.post(path, json=q).json()["exit_code"] == 0, path


def test_present_hypothesis_failure(client):
    doc = fixture_session()
    doc["chains"]["short"] = {"ring": "F3", "modules": ["C1"]}
    r = client.post("/present", json={"session": doc, "chain": "short"}).json()
    assert r["report"]["exit_code"] == 1 and r["presentation"] is None
