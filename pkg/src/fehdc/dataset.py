"""SMS Spam Collection ingestion and seeded stratified splitting.

The published corpus format is one record per line, ``label<TAB>text``,
UTF-8, with labels ``ham`` or ``spam``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .hv import make_rng

log = logging.getLogger(__name__)

LABELS = ("ham", "spam")


class DataError(ValueError):
    """Unusable dataset: unreadable file, empty result, missing class."""


@dataclass
class Dataset:
    records: list[tuple[str, str]]  # (label, text)
    source: str = ""
    n_malformed: int = 0

    def __len__(self) -> int:
        return len(self.records)

    @property
    def texts(self) -> list[str]:
        return [t for _, t in self.records]

    @property
    def labels(self) -> list[str]:
        return [l for l, _ in self.records]

    def count(self, label: str) -> int:
        return sum(1 for l, _ in self.records if l == label)

    def mean_length(self) -> float:
        return float(np.mean([len(t) for _, t in self.records]))


def load_dataset(path) -> Dataset:
    """Parse a label<TAB>text file.

    Malformed lines (no TAB, unknown label, empty text) are skipped but
    counted and logged, never silently dropped.
    """
    try:
        with open(path, "r", encoding="utf-8", errors="replace") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise DataError(f"cannot read dataset {path}: {exc}") from exc

    records: list[tuple[str, str]] = []
    malformed = 0
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        if "\t" not in line:
            malformed += 1
            log.warning("%s:%d: no TAB separator, skipped", path, lineno)
            continue
        label, text = line.split("\t", 1)
        label = label.strip().lower()
        if label not in LABELS:
            malformed += 1
            log.warning("%s:%d: unknown label %r, skipped", path, lineno, label)
            continue
        if not text.strip():
            malformed += 1
            log.warning("%s:%d: empty message, skipped", path, lineno)
            continue
        records.append((label, text))
    if not records:
        raise DataError(f"no valid records in {path}")
    return Dataset(records, source=str(path), n_malformed=malformed)


def split(ds: Dataset, ratio: float, seed: int) -> tuple[Dataset, Dataset]:
    """Deterministic stratified shuffle split into (train, test).

    Per-class train quotas use largest-remainder rounding so the overall
    train size is ``floor(ratio * n)`` and each class's prevalence in the
    train partition stays within one record of the full dataset's.
    """
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"split ratio must be in (0, 1), got {ratio}")
    n = len(ds)
    target = int(np.floor(ratio * n))
    if target == 0 or target == n:
        raise DataError(f"split ratio {ratio} leaves an empty partition for n={n}")

    by_class: dict[str, list[int]] = {}
    for i, (label, _) in enumerate(ds.records):
        by_class.setdefault(label, []).append(i)

    classes = sorted(by_class)
    quotas = [ratio * len(by_class[c]) for c in classes]
    take = [int(np.floor(q)) for q in quotas]
    remainders = sorted(
        range(len(classes)), key=lambda i: quotas[i] - take[i], reverse=True
    )
    for i in remainders:
        if sum(take) >= target:
            break
        take[i] += 1

    rng = make_rng(seed)
    train_idx: list[int] = []
    test_idx: list[int] = []
    for c, k in zip(classes, take):
        order = rng.permutation(len(by_class[c]))
        idx = [by_class[c][j] for j in order]
        train_idx.extend(idx[:k])
        test_idx.extend(idx[k:])
    train_idx.sort()
    test_idx.sort()
    if not train_idx or not test_idx:
        raise DataError("split produced an empty partition")

    mk = lambda idx: Dataset([ds.records[i] for i in idx], source=ds.source)
    return mk(train_idx), mk(test_idx)
