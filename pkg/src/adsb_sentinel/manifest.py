"""
Run manifests.

Every command writes a manifest beside its outputs: the command, its full
configuration and seed, input and output paths, SHA-256 hashes of the inputs,
the tool version and start/finish timestamps.
"""

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional, Union

from adsb_sentinel import __version__


def hash_path(path: Union[str, Path]) -> str:
    """SHA-256 of a file, or of every file below a directory in sorted order."""
    path = Path(path)
    digest = hashlib.sha256()
    files = sorted(p for p in path.rglob("*") if p.is_file()) if path.is_dir() else [path]
    for file in files:
        if path.is_dir():
            digest.update(file.relative_to(path).as_posix().encode("utf-8"))
        with open(file, "rb") as handle:
            for chunk in iter(lambda: handle.read(1 << 20), b""):
                digest.update(chunk)
    return digest.hexdigest()


def manifest_path(out: Union[str, Path]) -> Path:
    """``<dir>/manifest.json`` for a directory output, ``<file>.manifest.json`` otherwise."""
    out = Path(out)
    if out.is_dir():
        return out / "manifest.json"
    return out.with_name(out.name + ".manifest.json")


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class RunManifest:
    command: str
    config: dict[str, Any]
    seed: Optional[int]
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)
    started_at: str = field(default_factory=utc_now)
    finished_at: Optional[str] = None
    version: str = __version__

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "config": self.config,
            "seed": self.seed,
            "inputs": [
                {"path": path, "sha256": hash_path(path)} for path in sorted(self.inputs.values())
            ],
            "input_roles": dict(sorted(self.inputs.items())),
            "outputs": sorted(self.outputs),
            "version": self.version,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
        }

    def write(self, out: Union[str, Path]) -> Path:
        self.finished_at = utc_now()
        path = manifest_path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n", "utf-8")
        return path
