"""Binary hypervector algebra on bit-packed arrays.

Hypervectors are fixed-dimension binary vectors stored packed, 8 components
per byte, little-endian bit order within each byte (component ``8*w + i`` is
bit ``i`` of byte ``w``).  Values are immutable; every operation returns a
fresh vector.  Unused padding bits in the last byte are always zero, which
lets Hamming distances run on the raw bytes without masking.
"""

from __future__ import annotations

import struct
from typing import Sequence

import numpy as np

Rng = np.random.Generator


class DimensionMismatchError(ValueError):
    """Raised when two hypervectors of different dimension are combined."""


class InvalidDimensionError(ValueError):
    """Raised for dimensions < 1."""


def make_rng(seed) -> Rng:
    """Seeded generator; identical seeds give identical streams."""
    return np.random.default_rng(seed)


def derive_rng(*keys) -> Rng:
    """Generator for a derived stream, e.g. per-message tie-breaking.

    The stream depends only on the key tuple, not on how many other
    streams were derived before it, so parallel work stays reproducible.
    """
    return np.random.default_rng(np.random.SeedSequence([int(k) for k in keys]))


class Hypervector:
    """Immutable bit-packed binary vector of fixed dimension."""

    __slots__ = ("dim", "words")

    def __init__(self, dim: int, words: np.ndarray):
        if dim < 1:
            raise InvalidDimensionError(f"dimension must be >= 1, got {dim}")
        words = np.ascontiguousarray(words, dtype=np.uint8)
        if words.shape != (packed_size(dim),):
            raise ValueError(
                f"expected {packed_size(dim)} packed bytes for dim={dim}, "
                f"got shape {words.shape}"
            )
        # Force padding bits to zero so byte-level equality and XOR are exact.
        pad = dim % 8
        if pad:
            words = words.copy()
            words[-1] &= (1 << pad) - 1
        words.setflags(write=False)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "words", words)

    def __setattr__(self, name, value):
        raise AttributeError("Hypervector is immutable")

    @classmethod
    def from_bits(cls, bits: np.ndarray | Sequence[int]) -> "Hypervector":
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.ndim != 1 or bits.size < 1:
            raise InvalidDimensionError("bits must be a non-empty 1-D sequence")
        return cls(bits.size, np.packbits(bits, bitorder="little"))

    @classmethod
    def from_bitstring(cls, s: str) -> "Hypervector":
        """Parse a '0'/'1' string (test-fixture form)."""
        if not s or set(s) - {"0", "1"}:
            raise ValueError("bitstring must be non-empty and contain only 0/1")
        return cls.from_bits(np.frombuffer(s.encode("ascii"), dtype=np.uint8) - ord("0"))

    def to_bits(self) -> np.ndarray:
        return np.unpackbits(self.words, count=self.dim, bitorder="little")

    def to_bitstring(self) -> str:
        return "".join("01"[b] for b in self.to_bits())

    def to_bytes(self) -> bytes:
        """Binary form: u64 little-endian dim header, then packed bytes."""
        return struct.pack("<Q", self.dim) + self.words.tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "Hypervector":
        if len(data) < 8:
            raise ValueError("truncated hypervector blob")
        (dim,) = struct.unpack_from("<Q", data)
        body = np.frombuffer(data[8:], dtype=np.uint8)
        if body.size != packed_size(dim):
            raise ValueError("hypervector blob length does not match its dim header")
        return cls(dim, body)

    def is_canonical(self) -> bool:
        """True iff all padding bits are zero (class invariant)."""
        pad = self.dim % 8
        return pad == 0 or int(self.words[-1]) < (1 << pad)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hypervector)
            and self.dim == other.dim
            and bool(np.array_equal(self.words, other.words))
        )

    def __hash__(self):
        return hash((self.dim, self.words.tobytes()))

    def __repr__(self):
        head = self.to_bitstring() if self.dim <= 32 else self.to_bitstring()[:32] + "..."
        return f"Hypervector(dim={self.dim}, bits={head})"


def packed_size(dim: int) -> int:
    return (dim + 7) // 8


def _check_same_dim(a: Hypervector, b: Hypervector) -> None:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimension mismatch: {a.dim} vs {b.dim}")


def random_hv(dim: int, rng: Rng) -> Hypervector:
    """Fresh vector with i.i.d. fair bits drawn from ``rng``."""
    if dim < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {dim}")
    return Hypervector.from_bits(rng.integers(0, 2, size=dim, dtype=np.uint8))


def bind(a: Hypervector, b: Hypervector) -> Hypervector:
    """Component-wise XOR.  Commutative and self-inverse."""
    _check_same_dim(a, b)
    return Hypervector(a.dim, np.bitwise_xor(a.words, b.words))


def complement(a: Hypervector) -> Hypervector:
    """Flip every component."""
    return Hypervector(a.dim, np.bitwise_not(a.words))


def permute(a: Hypervector, k: int) -> Hypervector:
    """Rotate right by ``k``: component i moves to (i + k) mod dim."""
    k = int(k) % a.dim
    if k == 0:
        return a
    return Hypervector.from_bits(np.roll(a.to_bits(), k))


def bundle(inputs: Sequence[Hypervector], tiebreak: Rng | None = None) -> Hypervector:
    """Component-wise majority vote over the inputs.

    An even input count can tie; ties are broken by voting in one extra
    random vector drawn from ``tiebreak``, so results stay deterministic
    under a fixed seed.  Odd counts never consult ``tiebreak``.
    """
    if len(inputs) == 0:
        raise ValueError("bundle of an empty list")
    dim = inputs[0].dim
    for hv in inputs[1:]:
        if hv.dim != dim:
            raise DimensionMismatchError(f"dimension mismatch: {dim} vs {hv.dim}")
    stacked = np.stack([hv.words for hv in inputs])
    counts = np.unpackbits(stacked, axis=1, count=dim, bitorder="little").sum(
        axis=0, dtype=np.int64
    )
    return majority_from_counts(counts, len(inputs), tiebreak)


def majority_from_counts(
    ones: np.ndarray, n: int, tiebreak: Rng | None = None
) -> Hypervector:
    """Majority vote given per-component counts of one-bits.

    Shared by :func:`bundle` and the batch encoders so both paths break
    even-count ties with an identical extra draw from ``tiebreak``.
    """
    dim = ones.shape[0]
    if n % 2 == 0:
        if tiebreak is None:
            raise ValueError("even input count requires a tiebreak rng")
        extra = tiebreak.integers(0, 2, size=dim, dtype=np.uint8)
        ones = ones + extra
        n += 1
    bits = (2 * ones.astype(np.int64) > n).astype(np.uint8)
    return Hypervector.from_bits(bits)


def hamming(a: Hypervector, b: Hypervector) -> int:
    """Number of differing components."""
    _check_same_dim(a, b)
    return int(np.bitwise_count(np.bitwise_xor(a.words, b.words)).sum())


def normalized_hamming(a: Hypervector, b: Hypervector) -> float:
    return hamming(a, b) / a.dim
