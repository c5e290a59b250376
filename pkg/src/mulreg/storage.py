"""Output storage wrapping fsspec.

All artifacts of a run are written relative to one root (``--out-dir``), which
may be a local directory, ``s3://bucket/prefix`` or ``gs://bucket/prefix``.
Local writes go through a temporary file and a move, so a reader never sees a
half-written table.
"""

from __future__ import annotations

import contextlib
import hashlib
import posixpath
import uuid

import fsspec

from mulreg.config import StorageBackendType, backend_for
from mulreg.errors import InputError

_CREDENTIAL_HINTS = {
    StorageBackendType.S3: (
        "set AWS_ACCESS_KEY_ID and AWS_SECRET_ACCESS_KEY, or run `aws configure`"
    ),
    StorageBackendType.GCS: (
        "set GOOGLE_APPLICATION_CREDENTIALS, or run `gcloud auth application-default login`"
    ),
}


class CredentialError(InputError):
    """The output root is remote and cannot be listed with the current credentials."""


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class StorageBackend:
    """Byte-level reads and writes relative to an output root."""

    def __init__(
        self, fs: fsspec.AbstractFileSystem, base: str, backend: StorageBackendType
    ) -> None:
        self._fs = fs
        self._base = base
        self._backend = backend

    @classmethod
    def from_root(cls, root: str) -> StorageBackend:
        # url_to_fs strips the scheme; joins below work on the bare path.
        fs, base = fsspec.core.url_to_fs(root.rstrip("/") or ".")
        return cls(fs, base, backend_for(root))

    @property
    def is_local(self) -> bool:
        return self._backend == StorageBackendType.LOCAL

    def _resolve(self, path: str) -> str:
        return posixpath.join(self._base, path)

    def check_credentials(self) -> None:
        """Create a local root, or check a remote one before any estimation runs."""
        if self.is_local:
            self._fs.mkdirs(self._base, exist_ok=True)
            return
        try:
            self._fs.ls(self._base)
        except FileNotFoundError:
            pass
        except Exception as exc:
            hint = _CREDENTIAL_HINTS[self._backend]
            raise CredentialError(f"cannot list {self._base}: {exc}; {hint}") from exc

    def write_bytes(self, path: str, data: bytes) -> str:
        """Write ``data`` at ``path`` under the root and return its SHA-256."""
        target = self._resolve(path)
        if not self.is_local:
            self._fs.pipe_file(target, data)
            return sha256_hex(data)
        self._fs.mkdirs(posixpath.dirname(target), exist_ok=True)
        staging = f"{target}.{uuid.uuid4().hex[:8]}.part"
        self._fs.pipe_file(staging, data)
        self._fs.mv(staging, target)
        return sha256_hex(data)

    def read_bytes(self, path: str) -> bytes:
        target = self._resolve(path)
        if not self._fs.exists(target):
            raise FileNotFoundError(f"no such output: {path}")
        return bytes(self._fs.cat_file(target))

    def exists(self, path: str) -> bool:
        return bool(self._fs.exists(self._resolve(path)))

    def delete(self, path: str) -> None:
        with contextlib.suppress(FileNotFoundError):
            self._fs.rm(self._resolve(path))
