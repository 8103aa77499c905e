from fastapi.testclient import TestClient

from prover_api import app

client = TestClient(app)

PROVABLE = "list(sos).\np(c).\n-p(x) | $ans(x).\nend_of_list.\n"


class TestProverApi:
    def test_health(self):
        assert client.get("/").json() == {"status": "ok"}

    def test_prove(self):
        response = client.post("/prove", json={"text": PROVABLE})
        assert response.status_code == 200
        body = response.json()
        assert body["outcome"] == "ProofFound"
        assert body["exit_status"] == 0
        assert body["success"] == "$ans(c)"
        assert body["proof"][-1].startswith("3 [binary,")

    def test_prove_with_override(self):
        body = client.post("/prove", json={"text": PROVABLE, "overrides": {"max_weight": 0}}).json()
        assert body["outcome"] == "LimitReached"
        assert body["limit"] == "max_weight"

    def test_parse_error(self):
        response = client.post("/prove", json={"text": "set(nope).\n"})
        assert response.status_code == 400

    def test_bad_override(self):
        response = client.post("/prove", json={"text": PROVABLE, "overrides": {"pick_given_ratio": 0}})
        assert response.status_code == 422

    def test_normalize(self):
        body = client.post("/normalize", json={"term": "abst abst k c1 c2"}).json()
        assert body == {"normal_form": "c1 c1", "steps": body["steps"]}

    def test_normalize_cap(self):
        body = client.post("/normalize", json={"term": "abst abst k c1 c2", "cap": 1}).json()
        assert body["cap_exceeded"] is True

    def test_normalize_unknown_system(self):
        response = client.post("/normalize", json={"term": "k c1 c2", "system": "ski"})
        assert response.status_code == 400
