"""On-disk cache of complex differentials.

Entries are keyed by (algebra digest, operator, degree, normalized) and
written atomically: temp file in the same directory, then ``os.replace``.
"""
from __future__ import annotations

import os
import pickle
import tempfile
from pathlib import Path

from .linalg import RationalMatrix

CACHE_ENV = "CYCLIC_WORKBENCH_CACHE"


class DiffCache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

    @classmethod
    def from_env(cls) -> "DiffCache | None":
        path = os.environ.get(CACHE_ENV)
        return cls(path) if path else None

    def _path(self, digest: str, op: str, degree: int, normalized: bool) -> Path:
        return self.directory / f"{digest[:32]}-{op}-{degree}-{'n' if normalized else 'u'}.pkl"

    def get(self, digest: str, op: str, degree: int, normalized: bool) -> RationalMatrix | None:
        path = self._path(digest, op, degree, normalized)
        try:
            with open(path, "rb") as fh:
                rows, cols, items = pickle.load(fh)
        except (FileNotFoundError, EOFError, pickle.UnpicklingError):
            self.misses += 1
            return None
        self.hits += 1
        data: dict = {}
        for r, c, v in items:
            data.setdefault(r, {})[c] = v
        return RationalMatrix(rows, cols, data)

    def put(self, digest: str, op: str, degree: int, normalized: bool, m: RationalMatrix) -> None:
        path = self._path(digest, op, degree, normalized)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                pickle.dump((m.rows, m.cols, list(m.items())), fh, protocol=pickle.HIGHEST_PROTOCOL)
            os.replace(tmp, path)
        except BaseException:
            with _suppress():
                os.unlink(tmp)
            raise


class _suppress:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return exc[0] is not None and issubclass(exc[0], OSError)
