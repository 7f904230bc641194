"""End-to-end spam-filtering benchmark: train, evaluate, N and D sweeps."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .assoc import AssociativeMemory
from .classifier import HDCTextClassifier
from .dataset import DataError, Dataset, load_dataset, split
from .encoding import DEFAULT_ALPHABET, IdMemory, ItemMemory, Scheme

SPAM = "spam"
HAM = "ham"


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines one benchmark run."""

    data_path: str = ""
    ratio: float = 0.8
    ngram: int = 4
    dim: int = 10_000
    scheme: Scheme = Scheme.NGRAM
    split_seed: int = 0
    im_seed: int = 0
    tiebreak_seed: int = 0
    case_fold: bool = True

    def __post_init__(self):
        if not 0.0 < self.ratio < 1.0:
            raise ValueError(f"ratio must be in (0, 1), got {self.ratio}")
        object.__setattr__(self, "scheme", Scheme(self.scheme))

    @classmethod
    def from_seed(cls, seed: int, **kwargs) -> "RunConfig":
        """Derive the three per-run seeds from one master seed."""
        s = np.random.SeedSequence(seed).generate_state(3, dtype=np.uint64)
        return cls(
            split_seed=int(s[0]), im_seed=int(s[1]), tiebreak_seed=int(s[2]), **kwargs
        )


@dataclass
class EvalReport:
    """Accuracy plus the 2x2 confusion counts (spam is the positive class)."""

    accuracy: float
    tp: int  # spam classified spam
    tn: int  # ham classified ham
    fp: int  # ham classified spam
    fn: int  # spam classified ham
    n_test: int
    config: RunConfig

    @property
    def confusion(self) -> list[list[int]]:
        return [[self.tn, self.fp], [self.fn, self.tp]]


def _make_classifier(cfg: RunConfig) -> HDCTextClassifier:
    return HDCTextClassifier(
        dim=cfg.dim,
        ngram=cfg.ngram,
        scheme=cfg.scheme.value,
        im_seed=cfg.im_seed,
        tiebreak_seed=cfg.tiebreak_seed,
        case_fold=cfg.case_fold,
        alphabet=DEFAULT_ALPHABET,
    )


def train(train_ds: Dataset, cfg: RunConfig) -> AssociativeMemory:
    """Fit class vectors on the training partition.

    Both classes must be present; the returned memory holds one entry per
    class (ham first, by sorted label order).
    """
    present = set(train_ds.labels)
    if present != {HAM, SPAM}:
        raise DataError(f"training data must contain both classes, found {sorted(present)}")
    clf = _make_classifier(cfg).fit(train_ds.texts, train_ds.labels)
    return clf.memory_


def evaluate(test_ds: Dataset, am: AssociativeMemory, cfg: RunConfig) -> EvalReport:
    """Classify the test partition against trained class vectors."""
    if am.dim != cfg.dim:
        raise ValueError(f"memory dim {am.dim} != config dim {cfg.dim}")
    clf = _make_classifier(cfg)
    clf.classes_ = np.asarray(sorted(am.labels))
    # Rebuild the encoder state exactly as fit() would; the item memory is a
    # pure function of (alphabet, dim, seed) so train and query paths agree.
    clf.item_memory_ = ItemMemory(clf.alphabet, cfg.dim, cfg.im_seed)
    clf.id_memory_ = (
        IdMemory(cfg.dim, cfg.im_seed + 1) if cfg.scheme is Scheme.RECORD else None
    )
    clf.memory_ = am

    predicted = clf.predict(test_ds.texts)
    tp = tn = fp = fn = 0
    for truth, pred in zip(test_ds.labels, predicted):
        if truth == SPAM:
            if pred == SPAM:
                tp += 1
            else:
                fn += 1
        else:
            if pred == HAM:
                tn += 1
            else:
                fp += 1
    n = len(test_ds)
    return EvalReport((tp + tn) / n, tp, tn, fp, fn, n, cfg)


def run_once(ds: Dataset, cfg: RunConfig) -> EvalReport:
    """Split, train and evaluate one configuration."""
    train_ds, test_ds = split(ds, cfg.ratio, cfg.split_seed)
    am = train(train_ds, cfg)
    return evaluate(test_ds, am, cfg)


def _seeded_configs(cfg: RunConfig, seeds: list[int]) -> list[RunConfig]:
    return [
        replace(
            RunConfig.from_seed(s),
            data_path=cfg.data_path,
            ratio=cfg.ratio,
            ngram=cfg.ngram,
            dim=cfg.dim,
            scheme=cfg.scheme,
            case_fold=cfg.case_fold,
        )
        for s in seeds
    ]


def sweep_n(ds: Dataset, cfg: RunConfig, n_values: list[int], seeds: list[int]):
    """Accuracy per window width at fixed dimension.

    Returns rows of (n, seed, accuracy), one per (n, seed) pair.
    """
    if any(n < 1 for n in n_values):
        raise ValueError("all n values must be >= 1")
    rows = []
    for n in n_values:
        for seed, scfg in zip(seeds, _seeded_configs(cfg, seeds)):
            rep = run_once(ds, replace(scfg, ngram=n))
            rows.append((n, seed, rep.accuracy))
    return rows


def sweep_d(ds: Dataset, cfg: RunConfig, d_values: list[int], seeds: list[int]):
    """Accuracy per dimensionality at fixed window width.

    Returns rows of (d, seed, accuracy).
    """
    if any(d < 1 for d in d_values):
        raise ValueError("all d values must be >= 1")
    rows = []
    for d in d_values:
        for seed, scfg in zip(seeds, _seeded_configs(cfg, seeds)):
            rep = run_once(ds, replace(scfg, dim=d))
            rows.append((d, seed, rep.accuracy))
    return rows


def mean_by_x(rows) -> dict:
    """Collapse (x, seed, accuracy) rows to x -> (mean, std)."""
    acc: dict = {}
    for x, _, a in rows:
        acc.setdefault(x, []).append(a)
    return {x: (float(np.mean(v)), float(np.std(v))) for x, v in acc.items()}
