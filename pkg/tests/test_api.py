"""
HTTP surface, exercised through the FastAPI test client.
"""
import pytest
from fastapi.testclient import TestClient

from app.main import app
from tests.helpers import E1_JSON, E3_JSON, T_EVEN_SCENARIO

API = "/api/v1"


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_root_and_health(client):
    assert client.get("/health").json() == {"status": "healthy"}
    info = client.get("/").json()
    assert info["api"] == API
    assert info["status"] == "running"


def test_openapi_schema(client):
    response = client.get("/openapi.json")
    assert response.status_code == 200
    assert f"{API}/experiments" in response.json()["paths"]


def test_build(client):
    response = client.post(f"{API}/pencils/build", json={"spec": E3_JSON})
    assert response.status_code == 200
    assert response.json()["A"] == [["0", "1"], ["1", "1"]]


def test_decompose(client):
    response = client.post(f"{API}/pencils/decompose", json={"spec": E1_JSON, "minimal": True})
    assert response.status_code == 200
    payload = response.json()
    assert payload["ell"] == 2
    assert len(payload["scalar_terms"]) == 2


def test_signsum(client):
    response = client.post(f"{API}/pencils/signsum", json={"spec": E1_JSON, "eig": "1"})
    assert response.json() == {"signsum": 2}


def test_multiplicities(client):
    by_spec = client.post(f"{API}/pencils/multiplicities", json={"spec": E1_JSON, "eig": "1"})
    assert by_spec.json() == {"eigenvalue": "1", "multiplicities": [3, 1]}

    pencil = {"structure": "hermitian", "A": [["0", "-1"], ["-1", "0"]], "B": [["0", "1"], ["1", "0"]]}
    by_pencil = client.post(f"{API}/pencils/multiplicities", json={"pencil": pencil, "eig": "1"})
    assert by_pencil.json()["multiplicities"] == [1, 1]

    neither = client.post(f"{API}/pencils/multiplicities", json={"eig": "1"})
    assert neither.status_code == 422


def test_sample_perturbation(client):
    response = client.post(f"{API}/perturbations/sample", json={"structure": "t-even", "n": 3, "rank": 2, "seed": 4})
    assert response.status_code == 200
    payload = response.json()
    assert payload["s"] == 1
    assert payload["pencil"]["structure"] == "t-even"
    assert len(payload["params"]["complexes"]) == 9


def test_predictions(client):
    response = client.post(f"{API}/predictions",
                           json={"structure": "t-odd", "eig_class": "zero", "sizes": [2, 2], "rank": 1})
    assert response.status_code == 200
    assert response.json()["expected"] == [3, 1]

    rejected = client.post(f"{API}/predictions",
                           json={"structure": "t-odd", "eig_class": "plus_one", "sizes": [1], "rank": 1})
    assert rejected.status_code == 422


def test_experiment(client):
    response = client.post(f"{API}/experiments", json=T_EVEN_SCENARIO)
    assert response.status_code == 200
    payload = response.json()
    assert payload["ok"] is True
    assert len(payload["trials"]) == 2


def test_appendix(client):
    response = client.post(f"{API}/appendix/verify", json={"k_max": 1, "gammas": ["1"]})
    assert response.status_code == 200
    assert response.json()["passed"] is True


def test_input_errors(client):
    illegal = {"structure": "t-even", "blocks": [{"kind": "hermitian-real", "eig": "1", "size": 1, "sign": 1}]}
    assert client.post(f"{API}/pencils/build", json={"spec": illegal}).status_code == 422

    unsigned = {"structure": "hermitian", "blocks": [{"kind": "hermitian-real", "eig": "1", "size": 1}]}
    assert client.post(f"{API}/pencils/build", json={"spec": unsigned}).status_code == 422

    singular = {"spec": {"structure": "hermitian", "blocks": [{"kind": "singular-pair", "size": 1}]}, "rank": 1}
    assert client.post(f"{API}/experiments", json=singular).status_code == 422
