"""Associative memory: queries, tie-breaking, persistence."""

import numpy as np
import pytest

from fehdc.assoc import AssociativeMemory
from fehdc.hv import (
    DimensionMismatchError,
    Hypervector,
    complement,
    hamming,
    make_rng,
    permute,
    random_hv,
)

DIM = 10_000


def flip_bits(hv, k, rng):
    bits = hv.to_bits().copy()
    idx = rng.choice(hv.dim, size=k, replace=False)
    bits[idx] ^= 1
    return Hypervector.from_bits(bits)


class TestInsert:
    def test_insert_grows(self):
        am = AssociativeMemory(64)
        am.insert("ham", random_hv(64, make_rng(0)))
        assert len(am) == 1 and am.labels == ("ham",)

    def test_duplicate_label_rejected(self):
        am = AssociativeMemory(64)
        am.insert("ham", random_hv(64, make_rng(0)))
        with pytest.raises(ValueError):
            am.insert("ham", random_hv(64, make_rng(1)))

    def test_dim_mismatch_rejected(self):
        am = AssociativeMemory(64)
        with pytest.raises(DimensionMismatchError):
            am.insert("ham", random_hv(65, make_rng(0)))


class TestQuery:
    def test_exact_match(self):
        rng = make_rng(2)
        am = AssociativeMemory(DIM)
        a, b = random_hv(DIM, rng), random_hv(DIM, rng)
        am.insert("ham", a)
        am.insert("spam", b)
        label, dist, all_d = am.query(b)
        assert (label, dist) == ("spam", 0)
        assert all_d == [hamming(b, a), 0]

    def test_single_entry_complement(self):
        am = AssociativeMemory(512)
        a = random_hv(512, make_rng(3))
        am.insert("only", a)
        label, dist, _ = am.query(complement(a))
        assert (label, dist) == ("only", 512)

    def test_noisy_query_recovers_class(self):
        rng = make_rng(4)
        am = AssociativeMemory(DIM)
        a, b = random_hv(DIM, rng), random_hv(DIM, rng)
        am.insert("first", a)
        am.insert("second", b)
        q = flip_bits(a, 100, rng)
        label, dist, all_d = am.query(q)
        assert (label, dist) == ("first", 100)
        assert 4850 <= all_d[1] <= 5150

    def test_empty_memory_rejected(self):
        with pytest.raises(ValueError):
            AssociativeMemory(64).query(random_hv(64, make_rng(0)))

    def test_query_dim_mismatch(self):
        am = AssociativeMemory(64)
        am.insert("x", random_hv(64, make_rng(0)))
        with pytest.raises(DimensionMismatchError):
            am.query(random_hv(32, make_rng(0)))

    def test_tie_goes_to_first_inserted(self):
        am = AssociativeMemory(8)
        v = Hypervector.from_bitstring("00000000")
        a = Hypervector.from_bitstring("00000011")
        b = Hypervector.from_bitstring("00001100")
        am.insert("later_is_b", a)
        am.insert("b", b)
        label, dist, all_d = am.query(v)
        assert label == "later_is_b" and dist == 2 and all_d == [2, 2]

    def test_result_is_argmin_of_reported_distances(self):
        rng = make_rng(5)
        am = AssociativeMemory(256)
        for i in range(5):
            am.insert(f"c{i}", random_hv(256, rng))
        for _ in range(20):
            q = random_hv(256, rng)
            label, dist, all_d = am.query(q)
            assert dist == min(all_d)
            assert label == am.labels[all_d.index(min(all_d))]

    def test_rotation_isometry_preserves_winner(self):
        rng = make_rng(6)
        am = AssociativeMemory(256)
        vecs = [random_hv(256, rng) for _ in range(4)]
        for i, v in enumerate(vecs):
            am.insert(f"c{i}", v)
        q = random_hv(256, rng)
        label, dist, _ = am.query(q)
        rotated = AssociativeMemory(256)
        for i, v in enumerate(vecs):
            rotated.insert(f"c{i}", permute(v, 37))
        label_r, dist_r, _ = rotated.query(permute(q, 37))
        assert (label, dist) == (label_r, dist_r)


class TestPersistence:
    def test_roundtrip(self, tmp_path):
        rng = make_rng(7)
        am = AssociativeMemory(100)
        am.insert("ham", random_hv(100, rng))
        am.insert("spam", random_hv(100, rng))
        path = tmp_path / "model.am"
        am.save(path)
        back = AssociativeMemory.load(path)
        assert back.dim == 100 and back.labels == ("ham", "spam")
        for label in back.labels:
            assert back.vector(label) == am.vector(label)

    def test_unicode_labels(self, tmp_path):
        am = AssociativeMemory(16)
        am.insert("späm", random_hv(16, make_rng(8)))
        path = tmp_path / "u.am"
        am.save(path)
        assert AssociativeMemory.load(path).labels == ("späm",)

    def test_rejects_wrong_magic(self, tmp_path):
        path = tmp_path / "bad.am"
        path.write_bytes(b"XXXX" + b"\x00" * 20)
        with pytest.raises(ValueError):
            AssociativeMemory.load(path)

    def test_rejects_truncation(self, tmp_path):
        am = AssociativeMemory(64)
        am.insert("ham", random_hv(64, make_rng(9)))
        path = tmp_path / "t.am"
        am.save(path)
        path.write_bytes(path.read_bytes()[:-3])
        with pytest.raises(ValueError):
            AssociativeMemory.load(path)
