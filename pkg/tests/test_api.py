from fastapi.testclient import TestClient

from app.main import app

client = TestClient(app)

SPEC = "chain S3deg3 = [ (0 1 2), (0 1) ] > [ (0 1 2) ] > [ ]\ngroup W = wreath(powinf(Z2))"


def test_health():
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_rank():
    response = client.post("/rank", json={"spec": SPEC, "name": "S3deg3"})
    assert response.status_code == 200
    assert response.json()["rho"] == "2"
    response = client.post("/rank", json={"spec": SPEC, "name": "W", "alpha": "1"})
    assert response.json()["verdicts"]["summary"] == "L-1-CLI, not 1-CLI"


def test_tree():
    response = client.post("/tree", json={"spec": SPEC, "name": "S3deg3", "k": 2})
    assert response.status_code == 200
    assert response.json()["nodes"] == 3
    response = client.post("/tree", json={"spec": SPEC, "name": "S3deg3", "k": 1, "format": "dot"})
    assert response.json()["output"].startswith("digraph")
    assert client.post("/tree", json={"spec": SPEC, "name": "S3deg3", "k": -1}).status_code == 422


def test_classify():
    response = client.post("/classify", json={"expr": "powinf(W)", "spec": SPEC})
    assert response.status_code == 200
    assert response.json()["rank"] == "2"
    assert response.json()["tight"]
    response = client.post("/classify", json={"expr": "wreath(trivial)"})
    assert response.status_code == 400
    assert response.json()["detail"].startswith("ValidationError")


def test_examples():
    response = client.get("/examples", params={"alpha": "w*2", "kind": "G"})
    assert response.status_code == 200
    assert response.json()["examples"][0]["rank"] == "w*2"
    assert client.get("/examples", params={"alpha": "x"}).status_code == 400
