import json
import threading
import urllib.error
import urllib.request

import pytest

from watchscreen.cli import main
from watchscreen.engine import Screener
from watchscreen.service import LATENCY_HEADER, ScreenService, make_server


def _request(url, body=None):
    req = urllib.request.Request(url, data=body, method="POST" if body is not None else "GET")
    try:
        with urllib.request.urlopen(req, timeout=10) as resp:
            return resp.status, resp.read(), dict(resp.headers)
    except urllib.error.HTTPError as err:
        return err.code, err.read(), dict(err.headers)


@pytest.fixture
def server():
    service = ScreenService()
    srv = make_server(service, "127.0.0.1", 0)
    thread = threading.Thread(target=srv.serve_forever, kwargs={"poll_interval": 0.02}, daemon=True)
    thread.start()
    yield service, f"http://127.0.0.1:{srv.server_address[1]}"
    srv.shutdown()
    srv.server_close()


def test_not_ready_until_loaded(server, sample_docs):
    service, url = server
    status, body, _ = _request(url + "/health")
    assert status == 503 and json.loads(body)["status"] == "loading"
    status, _, _ = _request(url + "/screen", json.dumps({"text": "oya"}).encode())
    assert status == 503

    gate = threading.Event()

    def factory():
        gate.wait(5)
        return Screener.from_documents(sample_docs)

    loader = service.load_async(factory)
    assert _request(url + "/health")[0] == 503
    gate.set()
    loader.join(10)
    status, body, _ = _request(url + "/health")
    assert status == 200 and json.loads(body) == {"status": "ready", "docs": 6, "shards": 1}


@pytest.mark.parametrize(
    "body",
    [
        b"not json",
        b"[1, 2]",
        b'{"format": "text"}',
        b'{"text": "x", "k": 0}',
        b'{"text": "x", "sigma": 101}',
        b'{"text": "x", "format": "xml"}',
        b'{"text": "x", "weighted": "yes"}',
        b'{"text": "x", "extra": 1}',
        b'{"text": "no block four", "format": "mt"}',
    ],
)
def test_malformed_requests_get_400(server, sample_docs, body):
    service, url = server
    service.swap(Screener.from_documents(sample_docs))
    status, payload, _ = _request(url + "/screen", body)
    assert status == 400
    assert "error" in json.loads(payload)


def test_unknown_route(server):
    _, url = server
    assert _request(url + "/nope")[0] == 404


def test_http_and_cli_bytes_identical(server, sample_docs, reference_file, capsys):
    service, url = server
    service.swap(Screener.from_documents(sample_docs))
    for query in ["AHMET EMRE BUDUR", "hussain budak", "nobody here"]:
        status, body, headers = _request(url + "/screen", json.dumps({"text": query, "sigma": 0}).encode())
        assert status == 200
        assert float(headers[LATENCY_HEADER]) >= 0
        assert main(["search", "-r", str(reference_file), "--sigma", "0", query]) == 0
        assert capsys.readouterr().out.rstrip("\n").encode("utf-8") == body


def test_concurrent_requests(server, sample_docs):
    service, url = server
    service.swap(Screener.from_documents(sample_docs, n_shards=2))
    expected = _request(url + "/screen", b'{"text": "OYA CIMEN BUDUR"}')[1]
    results = []

    def hit():
        results.append(_request(url + "/screen", b'{"text": "OYA CIMEN BUDUR"}')[1])

    threads = [threading.Thread(target=hit) for _ in range(16)]
    for t in threads:
        t.start()
    for t in threads:
        t.join(10)
    assert results == [expected] * 16


def test_swap_replaces_index(server, sample_docs, record_docs):
    service, url = server
    service.swap(Screener.from_documents(sample_docs))
    before = json.loads(_request(url + "/screen", b'{"text": "AHMET MIYESE"}')[1])
    service.swap(Screener.from_documents(record_docs))
    after = json.loads(_request(url + "/screen", b'{"text": "AHMET MIYESE"}')[1])
    assert before["results"] == []
    assert after["results"][0]["name"] == "AHMET MIYESE"
