"""Tests for run manifests."""

import hashlib
import json

from adsb_sentinel import __version__
from adsb_sentinel.manifest import RunManifest, hash_path, manifest_path


def test_hash_of_a_file(tmp_path):
    path = tmp_path / "flights.csv"
    path.write_bytes(b"time,icao24\n")
    assert hash_path(path) == hashlib.sha256(b"time,icao24\n").hexdigest()


def test_hash_of_a_directory_covers_names_and_contents(tmp_path):
    (tmp_path / "a.csv").write_bytes(b"1")
    (tmp_path / "b.csv").write_bytes(b"2")
    before = hash_path(tmp_path)
    (tmp_path / "b.csv").rename(tmp_path / "c.csv")
    renamed = hash_path(tmp_path)
    (tmp_path / "c.csv").write_bytes(b"3")
    assert len({before, renamed, hash_path(tmp_path)}) == 3


def test_manifest_location(tmp_path):
    assert manifest_path(tmp_path) == tmp_path / "manifest.json"
    assert manifest_path(tmp_path / "alt.json") == tmp_path / "alt.json.manifest.json"


def test_written_manifest(tmp_path):
    source = tmp_path / "flights.csv"
    source.write_text("time\n", encoding="utf-8")
    run = RunManifest("pretrain", {"epochs": 20}, 7, inputs={"data": str(source)})
    run.outputs.append(str(tmp_path / "out.json"))
    path = run.write(tmp_path / "out.json")

    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["command"] == "pretrain"
    assert data["seed"] == 7
    assert data["config"] == {"epochs": 20}
    assert data["inputs"] == [{"path": str(source), "sha256": hash_path(source)}]
    assert data["input_roles"] == {"data": str(source)}
    assert data["version"] == __version__
    assert data["finished_at"] is not None
    assert data["started_at"] <= data["finished_at"]
