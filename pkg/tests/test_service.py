"""HTTP service endpoints exercised through the ASGI test client."""

from __future__ import annotations

import base64

import pytest
from fastapi.testclient import TestClient

from pdfseal import make_baseline, write
from pdfseal.service import app
from pdfseal.tamperlab import TamperKind, TamperSpec, apply_tamper_bytes


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


@pytest.fixture(scope="module")
def baseline_b64():
    return base64.b64encode(write(make_baseline(3, 4))).decode()


def _protect(client, payload_b64, filename="Demo.pdf"):
    response = client.post(
        "/protect", json={"pdf_base64": payload_b64, "filename": filename}
    )
    assert response.status_code == 200, response.text
    return response.json()


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "ok"
    assert body["version"]


def test_protect_endpoint(client, baseline_b64):
    body = _protect(client, baseline_b64)
    assert body["filename"] == "Demo_hash.pdf"
    assert body["pages_protected"] == 3
    assert len(body["page_hashes"]) == 3
    for entry in body["page_hashes"]:
        assert len(entry["object"]) == 64
        assert len(entry["root"]) == 64
        assert entry["leaves"]
    assert len(body["root_hashes"]["root"]) == 64
    assert len(body["root_hashes"]["info"]) == 64
    assert base64.b64decode(body["pdf_base64"]).startswith(b"%PDF-")


def test_protect_then_assess_roundtrip(client, baseline_b64):
    protected_b64 = _protect(client, baseline_b64)["pdf_base64"]
    response = client.post("/assess", json={"pdf_base64": protected_b64})
    assert response.status_code == 200
    body = response.json()
    assert body["verdict"] == "clean"
    assert body["messages"] == ["Hashes are equal, no tampering detected"]
    assert body["pages"] == []


def test_assess_unprotected(client, baseline_b64):
    response = client.post("/assess", json={"pdf_base64": baseline_b64})
    assert response.status_code == 200
    assert response.json()["verdict"] == "unprotected"


def test_assess_tampered(client, baseline_b64):
    protected = base64.b64decode(_protect(client, baseline_b64)["pdf_base64"])
    tampered = apply_tamper_bytes(protected, TamperSpec(TamperKind.TEXT_ADD, [2]))
    response = client.post(
        "/assess", json={"pdf_base64": base64.b64encode(tampered).decode()}
    )
    body = response.json()
    assert body["verdict"] == "tampered"
    assert body["pages"][0]["page"] == 2
    assert body["pages"][0]["altered_chunks"]


def test_bad_base64_rejected(client):
    response = client.post("/assess", json={"pdf_base64": "@@not-base64@@"})
    assert response.status_code == 400


def test_malformed_pdf_rejected(client):
    payload = base64.b64encode(b"junk bytes, not a pdf").decode()
    for endpoint in ("/protect", "/assess"):
        response = client.post(endpoint, json={"pdf_base64": payload})
        assert response.status_code == 400


def test_empty_document_rejected(client):
    response = client.post("/protect", json={"pdf_base64": ""})
    assert response.status_code == 400
