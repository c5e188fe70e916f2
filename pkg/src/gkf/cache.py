"""Content-keyed result cache for heavy intermediates.

Every artifact lives in one file under the cache directory; the name is a
readable slug plus a short digest of the full key, and the key embeds a
format version, so format changes can never reuse stale bytes (invalidation
is by key, never by mutation).  Values are JSON documents or matrices in
the binary interchange format of gkf.linalg.
"""

import hashlib
import json
import os
import re

from .linalg import SparseRationalMatrix

ENV_VAR = "GKF_CACHE_DIR"


def default_cache_dir():
    env = os.environ.get(ENV_VAR)
    if env:
        return env
    base = os.environ.get("XDG_CACHE_HOME", os.path.expanduser("~/.cache"))
    return os.path.join(base, "gkf")


class ResultCache:
    def __init__(self, directory=None):
        self.directory = directory or default_cache_dir()

    def _path(self, key: str, ext: str) -> str:
        slug = re.sub(r"[^A-Za-z0-9_.-]+", "_", key)[:80]
        digest = hashlib.sha256(key.encode()).hexdigest()[:12]
        return os.path.join(self.directory, f"{slug}-{digest}{ext}")

    def get_json(self, key: str):
        path = self._path(key, ".json")
        if not os.path.exists(path):
            return None
        with open(path) as fh:
            return json.load(fh)

    def put_json(self, key: str, payload):
        os.makedirs(self.directory, exist_ok=True)
        path = self._path(key, ".json")
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, path)

    def get_matrix(self, key: str):
        path = self._path(key, ".mtx")
        if not os.path.exists(path):
            return None
        return SparseRationalMatrix.load_binary(path)

    def put_matrix(self, key: str, matrix: SparseRationalMatrix):
        os.makedirs(self.directory, exist_ok=True)
        path = self._path(key, ".mtx")
        tmp = path + ".tmp"
        matrix.save_binary(tmp)
        os.replace(tmp, path)
