"""HTTP surface: endpoints, wire formats, and error translation."""

import numpy as np
import pytest
from fastapi.testclient import TestClient

from blockrange import gen, schemas
from blockrange.service import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


@pytest.fixture(scope="module")
def alpha4_json():
    return schemas.block_to_json(gen.alpha_example(4.0))


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok"}


class TestMatrixCodec:
    def test_round_trip(self):
        rng = np.random.default_rng(0)
        M = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        back = schemas.decode_matrix(schemas.encode_matrix(M), "M")
        assert np.max(np.abs(back - M)) < 1e-15

    def test_bad_shape_names_field(self):
        with pytest.raises(Exception) as err:
            schemas.decode_matrix([[1.0, 2.0]], "X")
        assert "X" in str(err.value)


class TestRangeEndpoint:
    def test_identity(self, client):
        r = client.post(
            "/range", json={"X": schemas.encode_matrix(np.eye(2)), "m": 720}
        )
        assert r.status_code == 200
        s = r.json()["summary"]
        assert abs(s["d_lower"] - 1.0) < 1e-9
        assert abs(s["d_upper"] - 1.0) < 1e-9
        assert s["contains_zero"] == "no"
        assert s["width_upper"] < 1e-9

    def test_boundary_witnesses(self, client):
        X = np.array([[0.0, 1.0], [0.0, 0.0]])
        r = client.post(
            "/range",
            json={"X": schemas.encode_matrix(X), "m": 64, "boundary": True},
        )
        assert r.status_code == 200
        pts = r.json()["boundary"]
        assert len(pts) == 64
        radii = [abs(complex(p["re"], p["im"])) for p in pts]
        assert max(abs(r_ - 0.5) for r_ in radii) < 1e-9

    def test_malformed_matrix(self, client):
        r = client.post("/range", json={"X": [[1.0, 2.0]], "m": 720})
        assert r.status_code in (400, 422)

    def test_odd_m_rejected(self, client):
        r = client.post(
            "/range", json={"X": schemas.encode_matrix(np.eye(2)), "m": 9}
        )
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "parse"


class TestVerifyEndpoint:
    def test_alpha_all_hold(self, client, alpha4_json):
        r = client.post("/verify", json={"block": alpha4_json, "m": 720})
        assert r.status_code == 200
        body = r.json()
        assert body["all_hold"] is True
        claims = {rep["claim"] for rep in body["reports"]}
        assert "main-majorization" in claims
        assert "proof-trace" in claims

    def test_non_psd_rejected_with_witness(self, client):
        bad = {
            "n": 1,
            "A": [[[1.0, 0.0]]],
            "X": [[[5.0, 0.0]]],
            "B": [[[1.0, 0.0]]],
        }
        r = client.post("/verify", json={"block": bad})
        assert r.status_code == 400
        detail = r.json()["detail"]
        assert detail["code"] == "psd-validation"
        assert detail["lambda_min"] < -3.9

    def test_shape_mismatch_is_parse_error(self, client):
        bad = {
            "n": 2,
            "A": [[[1.0, 0.0]]],
            "X": [[[0.0, 0.0]]],
            "B": [[[1.0, 0.0]]],
        }
        r = client.post("/verify", json={"block": bad})
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "parse"


class TestTraceEndpoint:
    def test_alpha_trace(self, client, alpha4_json):
        r = client.post("/trace", json={"block": alpha4_json})
        assert r.status_code == 200
        rep = r.json()["report"]
        assert rep["verdict"] == "holds"
        assert rep["details"]["branch"] == "d>0"
        assert all(s["verdict"] == "holds" for s in rep["details"]["steps"])


class TestSweepEndpoint:
    def test_small_sweep(self, client):
        r = client.post(
            "/sweep",
            json={"family": "hermitian-offdiag", "n": 2, "count": 4, "seed": 3},
        )
        assert r.status_code == 200
        body = r.json()
        assert body["all_hold"] is True
        assert body["count"] == 4
        assert "main-majorization" in body["min_slack_per_claim"]
        # reproducer-complete config
        cfg = body["config"]
        for key in ("family", "n", "seed", "count", "m", "seed_rule"):
            assert key in cfg

    def test_empty_sweep_rejected(self, client):
        r = client.post("/sweep", json={"family": "random-full-rank", "count": 0})
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "parse"

    def test_unknown_family(self, client):
        r = client.post("/sweep", json={"family": "bogus", "count": 2})
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "parse"


class TestDemoAlphaEndpoint:
    def test_rows_and_verification(self, client):
        r = client.post("/demo-alpha", json={"alphas": [2.0, 4.0, 10.0, 100.0]})
        assert r.status_code == 200
        body = r.json()
        assert body["config"]["verified"] is True
        diffs = [row["difference"] for row in body["rows"]]
        assert np.allclose(diffs, [1.0, 0.5, 0.2, 0.02], atol=1e-9)
        rhos = [row["rho"] for row in body["rows"]]
        assert all(a > b for a, b in zip(rhos, rhos[1:]))

    def test_alpha_at_most_one_rejected(self, client):
        r = client.post("/demo-alpha", json={"alphas": [0.5]})
        assert r.status_code == 400
        assert r.json()["detail"]["code"] == "parse"
