"""Test the HTTP API."""
import inspect

import pytest
from fastapi.testclient import TestClient

from api import code_api
from main import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestCodeApi:
    """Code, encode, verify and cost endpoints."""

    def test_health(self, client):
        response = client.get("/api/health")
        assert response.status_code == 200
        assert response.json()["status"] == "ok"

    def test_build_code(self, client):
        response = client.post("/api/codes", json={"t": 4, "delta": 7, "prim_poly": "x^4+x+1"})
        assert response.status_code == 200
        body = response.json()
        assert body["g"] == "0x537"
        assert body["K"] == 5

    def test_invalid_delta(self, client):
        response = client.post("/api/codes", json={"t": 4, "delta": 16})
        assert response.status_code == 400

    def test_t_out_of_range(self, client):
        response = client.post("/api/codes", json={"t": 20, "delta": 3})
        assert response.status_code == 422

    @pytest.mark.parametrize("backend", ["naive", "lfsr_direct", "crt"])
    def test_encode(self, client, backend):
        response = client.post("/api/encode", json={"t": 4, "delta": 7, "message_hex": "01", "backend": backend})
        assert response.status_code == 200
        assert response.json() == {"codeword_hex": "0537", "backend": backend}

    def test_encode_unknown_backend(self, client):
        response = client.post("/api/encode", json={"t": 4, "delta": 7, "message_hex": "01", "backend": "fast"})
        assert response.status_code == 400

    def test_encode_wrong_length(self, client):
        response = client.post("/api/encode", json={"t": 4, "delta": 7, "message_hex": "0102"})
        assert response.status_code == 400

    def test_verify(self, client):
        ok = client.post("/api/verify", json={"t": 4, "delta": 7, "codeword_hex": "0537"}).json()
        bad = client.post("/api/verify", json={"t": 4, "delta": 7, "codeword_hex": "0536"}).json()
        assert ok == {"valid": True, "failing_root": None}
        assert bad == {"valid": False, "failing_root": 1}

    def test_cost(self, client):
        response = client.post("/api/cost", json={"t": 5, "delta": 7})
        assert response.status_code == 200
        body = response.json()
        assert body["r"] == 3
        assert body["total_actual"] <= body["total_bound"]


@pytest.mark.parametrize("handler", ["build_code", "encode", "verify", "cost"])
def test_computing_handlers_run_in_threadpool(handler):
    # plain def handlers are dispatched off the event loop
    assert not inspect.iscoroutinefunction(getattr(code_api, handler))
