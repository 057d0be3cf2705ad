import threading

import pytest
from fastapi.testclient import TestClient

from termtools.corpus import load_tagged
from termtools.engine import AnaEngine, PrometheeEngine, load_engine
from termtools.promethee import load_seed_pairs
from termtools.service import create_app
from termtools.valstore import Candidate, Store


@pytest.fixture()
def promethee_engine(fixtures):
    corpus = load_tagged(fixtures / "medical.tsv")
    seeds = load_seed_pairs(fixtures / "seeds_medical.tsv", "hypernym")
    return PrometheeEngine(corpus, seeds)


@pytest.fixture()
def client(tmp_path, promethee_engine):
    store = Store(tmp_path / "store")
    app = create_app(store, promethee_engine)
    return TestClient(app)


class TestItemsApi:
    def test_empty_store(self, client):
        assert client.get("/api/items").json() == []

    def test_first_iteration_yields_one_pending_pattern(self, client):
        summary = client.post("/api/iterate").json()
        assert summary == {"new_candidates": 1, "iteration": 1}
        items = client.get("/api/items", params={"status": "pending"}).json()
        assert len(items) == 1
        assert items[0]["kind"] == "pattern"
        assert items[0]["payload"]["display"] == "NP such as LIST"
        assert len(items[0]["payload"]["support"]) == 2

    def test_filter_by_kind(self, client):
        client.post("/api/iterate")
        assert client.get("/api/items", params={"kind": "pair"}).json() == []

    def test_invalid_filter_value(self, client):
        assert client.get("/api/items", params={"kind": "bogus"}).status_code == 422


class TestDecisionApi:
    def test_accept_then_conflict(self, client):
        client.post("/api/iterate")
        item = client.get("/api/items").json()[0]
        first = client.post(f"/api/items/{item['id']}/decision",
                            json={"verdict": "accepted", "who": "expert"})
        assert first.status_code == 200
        assert first.json()["status"] == "accepted"
        second = client.post(f"/api/items/{item['id']}/decision",
                             json={"verdict": "rejected", "who": "expert"})
        assert second.status_code == 409

    def test_unknown_item_404(self, client):
        resp = client.post("/api/items/feedfeedfeedfeed/decision",
                           json={"verdict": "accepted", "who": "x"})
        assert resp.status_code == 404

    def test_bad_verdict_422(self, client):
        client.post("/api/iterate")
        item = client.get("/api/items").json()[0]
        resp = client.post(f"/api/items/{item['id']}/decision",
                           json={"verdict": "maybe", "who": "x"})
        assert resp.status_code == 422


class TestIterateApi:
    def test_accepted_pattern_fans_out_to_four_pairs(self, client):
        client.post("/api/iterate")
        pattern = client.get("/api/items").json()[0]
        client.post(f"/api/items/{pattern['id']}/decision",
                    json={"verdict": "accepted", "who": "expert"})
        summary = client.post("/api/iterate").json()
        assert summary["new_candidates"] == 4
        pairs = client.get("/api/items", params={"kind": "pair"}).json()
        assert {(p["payload"]["term1"], p["payload"]["term2"])
                for p in pairs} == {
            ("neocortex", "vulnerable area"), ("striatum", "vulnerable area"),
            ("hippocampus", "vulnerable area"), ("thalamus", "vulnerable area")}

    def test_rerun_without_new_acceptance_is_fixpoint(self, client):
        client.post("/api/iterate")
        pattern = client.get("/api/items").json()[0]
        client.post(f"/api/items/{pattern['id']}/decision",
                    json={"verdict": "accepted", "who": "expert"})
        client.post("/api/iterate")
        summary = client.post("/api/iterate").json()
        assert summary["new_candidates"] == 0

    def test_rejected_pattern_is_never_applied(self, client):
        client.post("/api/iterate")
        pattern = client.get("/api/items").json()[0]
        client.post(f"/api/items/{pattern['id']}/decision",
                    json={"verdict": "rejected", "who": "expert"})
        summary = client.post("/api/iterate").json()
        assert summary["new_candidates"] == 0
        assert client.get("/api/items", params={"kind": "pair"}).json() == []

    def test_unconfigured_engine_400(self, tmp_path):
        client = TestClient(create_app(Store(tmp_path / "s"), engine=None))
        assert client.post("/api/iterate").status_code == 400

    def test_busy_409(self, tmp_path):
        store = Store(tmp_path / "s")
        release = threading.Event()
        started = threading.Event()

        class SlowEngine:
            name = "slow"

            def turn(self, s):
                started.set()
                release.wait(timeout=5)
                return []

        client = TestClient(create_app(store, SlowEngine()))
        worker = threading.Thread(target=client.post, args=("/api/iterate",))
        worker.start()
        try:
            assert started.wait(timeout=5)
            busy = client.post("/api/iterate")
            assert busy.status_code == 409
        finally:
            release.set()
            worker.join(timeout=5)


class TestStatusApi:
    def test_counts_and_iteration(self, client):
        client.post("/api/iterate")
        status = client.get("/api/status").json()
        assert status["iteration"] == 1
        assert status["items"]["pending"] == 1
        assert status["engine"] == "promethee"


class TestAnaEngineTurn:
    def test_first_turn_inserts_three_terms(self, fixtures, tmp_path):
        engine = load_engine("ana", self._write_config(fixtures, tmp_path))
        store = Store(tmp_path / "store")
        summary = store.run_iteration(engine)
        assert summary["new_candidates"] == 3
        surfaces = {i.payload["surface"] for i in store.items(kind="term")}
        assert surfaces == {"DIESEL ENGINE", "SHADE", "SOFT WOODS"}

    def test_accepted_terms_join_the_bootstrap(self, fixtures, tmp_path):
        engine = load_engine("ana", self._write_config(fixtures, tmp_path))
        store = Store(tmp_path / "store")
        store.run_iteration(engine)
        for item in store.items(kind="term"):
            store.decide(item.id, "accepted", "expert")
        summary = store.run_iteration(engine)
        assert summary["new_candidates"] == 0

    @staticmethod
    def _write_config(fixtures, tmp_path):
        import json
        config = tmp_path / "ana.json"
        config.write_text(json.dumps({
            "corpus": str(fixtures / "ana_corpus"),
            "bootstrap": str(fixtures / "bootstrap_en.txt"),
            "schemes": str(fixtures / "schemes_en.txt"),
            "stopwords": str(fixtures / "functional_en.txt"),
        }), encoding="utf-8")
        return config


class TestStaticConsole:
    def test_missing_ui_dir_rejected(self, tmp_path):
        from termtools.errors import ConfigError
        with pytest.raises(ConfigError):
            create_app(Store(tmp_path / "s"), ui_dir=tmp_path / "nope")

    def test_ui_served_when_present(self, tmp_path):
        ui = tmp_path / "ui"
        ui.mkdir()
        (ui / "index.html").write_text("<html>console</html>", encoding="utf-8")
        client = TestClient(create_app(Store(tmp_path / "s"), ui_dir=ui))
        resp = client.get("/")
        assert resp.status_code == 200
        assert "console" in resp.text
