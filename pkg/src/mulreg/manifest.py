"""Run manifest: everything needed to re-run a command and check its outputs."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import TYPE_CHECKING, Any

from mulreg.__about__ import __version__
from mulreg.model import RNG_NAME, RNG_VERSION
from mulreg.storage import sha256_hex

UTC = timezone.utc

if TYPE_CHECKING:
    from mulreg.storage import StorageBackend

MANIFEST_NAME = "manifest.json"


def _canonical(obj: Any) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode("utf-8")


@dataclass
class RunManifest:
    command: str
    config: dict[str, Any]
    seed: int
    outputs: dict[str, str] = field(default_factory=dict)
    rng_name: str = RNG_NAME
    rng_version: int = RNG_VERSION
    package_version: str = __version__
    created_at: str = field(default_factory=lambda: datetime.now(UTC).isoformat())
    content_hash: str = ""

    def compute_hash(self) -> str:
        """SHA-256 over command, config, RNG identity and output hashes."""
        return sha256_hex(
            _canonical(
                {
                    "command": self.command,
                    "config": self.config,
                    "rng": [self.rng_name, self.rng_version],
                    "outputs": self.outputs,
                }
            )
        )

    def seal(self) -> RunManifest:
        self.content_hash = self.compute_hash()
        return self

    def to_json(self) -> bytes:
        return json.dumps(asdict(self), indent=2, sort_keys=True).encode("utf-8")

    @classmethod
    def from_json(cls, data: bytes) -> RunManifest:
        return cls(**json.loads(data))


class ManifestManager:
    def __init__(self, storage: StorageBackend, manifest_path: str = MANIFEST_NAME) -> None:
        self._storage = storage
        self._manifest_path = manifest_path

    @property
    def path(self) -> str:
        return self._manifest_path

    def exists(self) -> bool:
        return self._storage.exists(self._manifest_path)

    def load(self) -> RunManifest:
        return RunManifest.from_json(self._storage.read_bytes(self._manifest_path))

    def save(self, manifest: RunManifest) -> None:
        self._storage.write_bytes(self._manifest_path, manifest.seal().to_json())

    def verify(self, manifest: RunManifest) -> dict[str, bool]:
        """Per output: does the stored file still hash to the recorded value."""
        result = {}
        for path, digest in manifest.outputs.items():
            result[path] = (
                self._storage.exists(path) and sha256_hex(self._storage.read_bytes(path)) == digest
            )
        return result
