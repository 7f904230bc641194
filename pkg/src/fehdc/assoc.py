"""Associative memory: labeled class vectors, nearest-class Hamming queries."""

from __future__ import annotations

import struct
from typing import Iterable

import numpy as np

from .hv import DimensionMismatchError, Hypervector, hamming, packed_size

_MAGIC = b"FHAM"
_VERSION = 1


class AssociativeMemory:
    """Ordered store of (label, class vector) queried by minimum distance.

    Insertion order is preserved and breaks distance ties, so queries are
    fully deterministic.  Read-only after training; queries are thread-safe.
    """

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError(f"dim must be >= 1, got {dim}")
        self.dim = dim
        self._labels: list[str] = []
        self._vectors: list[Hypervector] = []

    def __len__(self) -> int:
        return len(self._labels)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self._labels)

    def entries(self) -> Iterable[tuple[str, Hypervector]]:
        return zip(self._labels, self._vectors)

    def vector(self, label: str) -> Hypervector:
        return self._vectors[self._labels.index(label)]

    def insert(self, label: str, class_hv: Hypervector) -> None:
        if label in self._labels:
            raise ValueError(f"duplicate label {label!r}")
        if class_hv.dim != self.dim:
            raise DimensionMismatchError(
                f"class vector dim {class_hv.dim} != memory dim {self.dim}"
            )
        self._labels.append(label)
        self._vectors.append(class_hv)

    def query(self, q: Hypervector) -> tuple[str, int, list[int]]:
        """Nearest label by Hamming distance.

        Returns ``(label, distance, all_distances)`` with distances listed
        in insertion order; ties go to the earliest-inserted label.
        """
        if not self._labels:
            raise ValueError("query against an empty associative memory")
        if q.dim != self.dim:
            raise DimensionMismatchError(f"query dim {q.dim} != memory dim {self.dim}")
        distances = [hamming(q, v) for v in self._vectors]
        best = int(np.argmin(distances))  # argmin keeps the first minimum
        return self._labels[best], distances[best], distances

    def save(self, path) -> None:
        """Versioned little-endian model file: header, then per-entry records."""
        with open(path, "wb") as fh:
            fh.write(_MAGIC)
            fh.write(struct.pack("<HQQ", _VERSION, self.dim, len(self._labels)))
            for label, vec in self.entries():
                blob = label.encode("utf-8")
                fh.write(struct.pack("<I", len(blob)))
                fh.write(blob)
                fh.write(vec.words.tobytes())

    @classmethod
    def load(cls, path) -> "AssociativeMemory":
        with open(path, "rb") as fh:
            magic = fh.read(4)
            if magic != _MAGIC:
                raise ValueError(f"not an associative-memory file (magic {magic!r})")
            version, dim, count = struct.unpack("<HQQ", fh.read(18))
            if version != _VERSION:
                raise ValueError(f"unsupported model version {version}")
            am = cls(dim)
            nbytes = packed_size(dim)
            for _ in range(count):
                (llen,) = struct.unpack("<I", fh.read(4))
                label = fh.read(llen).decode("utf-8")
                words = np.frombuffer(fh.read(nbytes), dtype=np.uint8)
                if words.size != nbytes:
                    raise ValueError("truncated associative-memory file")
                am.insert(label, Hypervector(dim, words))
        return am
