"""
Tests for the HTTP API
"""

import pytest
from fastapi.testclient import TestClient

from src.api.routes import create_app

from tests.conftest import REPORT_KEYS


@pytest.fixture
def client(service):
    return TestClient(create_app(service))


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_verify(client):
    response = client.post("/api/verify", json={"spec": "so(3) x gl(2) x gl(1) : chain"})
    assert response.status_code == 200
    data = response.json()
    assert REPORT_KEYS <= set(data)
    assert data["verdict"] == "etale"


def test_verify_bad_spec(client):
    response = client.post("/api/verify", json={"spec": "gl(2) x : std(1)"})
    assert response.status_code == 400
    assert response.json()["error"] == "SpecSyntaxError"


def test_verify_needs_a_spec(client):
    assert client.post("/api/verify", json={}).status_code == 422


def test_family(client):
    response = client.get("/api/family/so-chain", params={"n": 3, "chain_report": True})
    assert response.status_code == 200
    data = response.json()
    assert data["report"]["verdict"] == "etale"
    assert data["chain_report"]["passed"] is True


def test_unknown_family(client):
    assert client.get("/api/family/e8-chain", params={"n": 2}).status_code == 400


def test_dims(client):
    response = client.get("/api/dims", params={"n_max": 4})
    assert response.status_code == 200
    assert response.json()["all_hold"] is True
    assert client.get("/api/dims", params={"n_max": 0}).status_code == 422


def test_castle(client):
    response = client.post("/api/castle", json={"spec": "sl(3) x gl(1) : std(1) * std(2)", "twice": True})
    assert response.status_code == 200
    assert response.json()["preserved"] is True


def test_stabilizer(client):
    response = client.post("/api/stabilizer", json={"spec": "gl(2) : std(1)", "point": "1,0", "line": True})
    assert response.status_code == 200
    assert response.json()["line_stabilizer_dim"] == 3


def test_negative_seed_is_rejected(client):
    response = client.post("/api/verify", json={"spec": "gl(2) : std(1)", "point": "random", "seed": -1})
    assert response.status_code == 422
    assert client.get("/api/family/so-chain", params={"n": 3, "seed": -1}).status_code == 422
