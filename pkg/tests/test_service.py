"""HTTP layer: endpoints, envelopes, and input-error mapping."""

import pytest
from fastapi.testclient import TestClient

from fracsusy.scalar import get_config, parse_scalar
from fracsusy.service import create_app

cfg3 = get_config(3)


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


SECTIONED_SPEC = """
# full sectioned form
[algebra]
builtin = sl2

[representation]
builtin = spinor

[grading]
n = 3
pin = b1_122=1
"""


def test_health(client):
    resp = client.get("/v1/health")
    assert resp.status_code == 200
    body = resp.json()
    assert body["status"] == "ok"
    assert body["version"]


def test_solve_alias_form(client):
    resp = client.post("/v1/solve", json={"spec": "sl2 spinor n=3"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["schema"] == "report_v1"
    assert body["kind"] == "solve"
    assert body["pass"] is True
    assert body["dimension"] == 0
    assert body["unknowns"] == 12
    assert body["rows"] == {"snj1": 36, "snj2": 10}


def test_solve_sectioned_spec_reports_ignored_pin(client):
    resp = client.post("/v1/solve", json={"spec": SECTIONED_SPEC})
    assert resp.status_code == 200
    body = resp.json()
    assert body["dimension"] == 0
    assert body["normalized"] is None
    assert any("ignored" in note for note in body["notes"])


def test_solve_request_pin_normalizes(client):
    resp = client.post("/v1/solve", json={"spec": "sl2 vector n=3",
                                          "pin": "b3_222=6"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["dimension"] == 1
    got = {lab: parse_scalar(cfg3, v)
           for lab, v in body["normalized"].items()}
    want = {"b1_113": "-4*r2", "b1_122": "2*r2", "b2_133": "4*r2",
            "b2_223": "-2*r2", "b3_123": "-2", "b3_222": "6"}
    assert got == {lab: parse_scalar(cfg3, v) for lab, v in want.items()}
    assert any("X1" in line for line in body["bracket_lines"])


def test_solve_staged_include(client):
    resp = client.post("/v1/solve", json={"spec": "sl2 spinor n=3",
                                          "include": ["snj2"]})
    assert resp.status_code == 200
    body = resp.json()
    assert body["dimension"] == 2
    assert body["rows"] == {"snj2": 10}


def test_solve_bad_spec_gives_diagnostics(client):
    resp = client.post("/v1/solve", json={"spec": "[algebra]\nwhat\n"})
    assert resp.status_code == 422
    detail = resp.json()["detail"]
    assert detail["diagnostics"]


def test_solve_bad_include(client):
    resp = client.post("/v1/solve", json={"spec": "sl2 spinor n=3",
                                          "include": ["snj3"]})
    assert resp.status_code == 422


def test_solve_bad_pin(client):
    resp = client.post("/v1/solve", json={"spec": "sl2 spinor n=3",
                                          "pin": "zzz"})
    assert resp.status_code == 422

    resp = client.post("/v1/solve", json={"spec": "sl2 spinor n=3",
                                          "pin": "b9_111=1"})
    assert resp.status_code == 422


def test_identities_endpoint(client):
    resp = client.post("/v1/verify/identities", json={"samples": 5})
    assert resp.status_code == 200
    body = resp.json()
    assert body["kind"] == "identities"
    assert body["pass"] is True
    assert [c["name"] for c in body["checks"]] == ["j1", "j2", "j3"]


def test_hopf_endpoint(client):
    resp = client.post("/v1/verify/hopf", json={"n": 2})
    assert resp.status_code == 200
    body = resp.json()
    assert body["pass"] is True
    assert "classical_degeneration" in body


def test_dual_endpoint(client):
    resp = client.post("/v1/verify/dual",
                       json={"name": "translation", "u_max_len": 2,
                             "dual_max_len": 2})
    assert resp.status_code == 200
    body = resp.json()
    assert body["name"] == "translation"
    assert body["n"] == 2
    assert body["pass"] is True


def test_dual_endpoint_rejects_unknown(client):
    resp = client.post("/v1/verify/dual", json={"name": "mystery"})
    assert resp.status_code == 422
    resp = client.post("/v1/verify/dual", json={"name": "sl2_spinor",
                                                "N": 3})
    assert resp.status_code == 422
    resp = client.post("/v1/verify/dual", json={"name": "sl2_spinor",
                                                "n": 2})
    assert resp.status_code == 422


def test_realization_endpoint(client):
    resp = client.post("/v1/verify/realization", json={})
    assert resp.status_code == 200
    body = resp.json()
    assert body["pass"] is True
    assert body["M"] == 8 and body["dim"] == 27

    resp = client.post("/v1/verify/realization", json={"n": 2})
    assert resp.status_code == 422
    resp = client.post("/v1/verify/realization", json={"M": 3})
    assert resp.status_code == 422


def test_report_all_endpoint(client):
    resp = client.post("/v1/report-all", json={"samples": 2})
    assert resp.status_code == 200
    body = resp.json()
    assert body["kind"] == "all"
    assert body["pass"] is True
    sections = body["sections"]
    assert set(sections) == {"identities", "hopf", "dual", "realization",
                             "solve"}
    assert set(sections["dual"]) == {"translation", "single_generator",
                                     "sl2_spinor"}
    assert sections["solve"]["vector_full"]["matches_expected"] is True
    assert sections["solve"]["classical_spinor_n2"]["dimension"] == 1
