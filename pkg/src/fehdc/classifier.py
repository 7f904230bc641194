"""Scikit-learn estimator wrapping the hyperdimensional text classifier."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from .assoc import AssociativeMemory
from .encoding import (
    DEFAULT_ALPHABET,
    EncoderConfig,
    IdMemory,
    ItemMemory,
    Scheme,
    class_tiebreak_rng,
    encode_messages,
    train_class,
)


class HDCTextClassifier(BaseEstimator, ClassifierMixin):
    """Character-level hyperdimensional text classifier.

    ``fit`` assigns a seeded random hypervector to every alphabet symbol,
    encodes each training string (n-gram or record scheme), and majority-
    bundles the encodings of each class into one class vector.  ``predict``
    encodes queries the same way and returns the nearest class by Hamming
    distance.

    Parameters
    ----------
    dim : hypervector dimensionality.
    ngram : window width for the n-gram scheme.
    scheme : "ngram" or "record".
    im_seed : seed for the symbol item memory (and position ids).
    tiebreak_seed : seed for majority tie-breaking streams.
    case_fold : lowercase input text before encoding.
    alphabet : symbol set; text outside it maps to the OOV entry.
    """

    def __init__(
        self,
        dim: int = 10_000,
        ngram: int = 4,
        scheme: str = "ngram",
        im_seed: int = 0,
        tiebreak_seed: int = 1,
        case_fold: bool = True,
        alphabet: str = DEFAULT_ALPHABET,
    ):
        self.dim = dim
        self.ngram = ngram
        self.scheme = scheme
        self.im_seed = im_seed
        self.tiebreak_seed = tiebreak_seed
        self.case_fold = case_fold
        self.alphabet = alphabet

    def _config(self) -> EncoderConfig:
        return EncoderConfig(
            dim=self.dim,
            ngram=self.ngram,
            scheme=Scheme(self.scheme),
            seed=self.im_seed,
            case_fold=self.case_fold,
        )

    def _validate_texts(self, X) -> list[str]:
        texts = list(X)
        if not texts:
            raise ValueError("expected at least one text")
        for t in texts:
            if not isinstance(t, str):
                raise TypeError(f"expected str inputs, got {type(t).__name__}")
        return texts

    def fit(self, X, y):
        texts = self._validate_texts(X)
        y = np.asarray(y)
        if y.shape[0] != len(texts):
            raise ValueError(f"X has {len(texts)} texts but y has {y.shape[0]} labels")
        cfg = self._config()
        self.classes_ = np.unique(y)
        if self.classes_.size < 1:
            raise ValueError("no classes in y")
        self.item_memory_ = ItemMemory(self.alphabet, cfg.dim, cfg.seed)
        self.id_memory_ = (
            IdMemory(cfg.dim, cfg.seed + 1) if cfg.scheme is Scheme.RECORD else None
        )
        encoded = encode_messages(
            texts, cfg, self.item_memory_, self.tiebreak_seed, self.id_memory_
        )
        self.memory_ = AssociativeMemory(cfg.dim)
        for ci, label in enumerate(self.classes_):
            members = [hv for hv, yl in zip(encoded, y) if yl == label]
            if not members:
                raise ValueError(f"class {label!r} has no training messages")
            self.memory_.insert(
                str(label), train_class(members, class_tiebreak_rng(self.tiebreak_seed, ci))
            )
        return self

    def _encode(self, X) -> list:
        check_is_fitted(self, "memory_")
        texts = self._validate_texts(X)
        return encode_messages(
            texts, self._config(), self.item_memory_, self.tiebreak_seed, self.id_memory_
        )

    def predict(self, X):
        labels = [self.memory_.query(hv)[0] for hv in self._encode(X)]
        # Map back through classes_ so the returned dtype matches y's.
        lookup = {str(c): c for c in self.classes_}
        return np.asarray([lookup[lbl] for lbl in labels])

    def decision_distances(self, X) -> np.ndarray:
        """Hamming distance from each text to every class vector."""
        return np.asarray([self.memory_.query(hv)[2] for hv in self._encode(X)])
