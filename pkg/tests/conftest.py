"""Shared fixtures: synthetic corpus plus optional real-corpus resolution.

The SMS Spam Collection itself is not redistributable inside this repo; the
tests that reproduce published accuracy figures look for it at
``$FEHDC_SMS_DATA``, ``data/SMSSpamCollection`` or ``./SMSSpamCollection``
and skip with instructions when it is absent.  Everything else runs on a
deterministic synthetic corpus.
"""

import os
from pathlib import Path

import numpy as np
import pytest

from fehdc.dataset import Dataset

REPO_ROOT = Path(__file__).resolve().parent.parent

SMS_CANDIDATES = (
    os.environ.get("FEHDC_SMS_DATA"),
    REPO_ROOT / "data" / "SMSSpamCollection",
    REPO_ROOT / "SMSSpamCollection",
)

SPAM_WORDS = [
    "win", "free", "cash", "prize", "claim", "urgent", "call", "now", "txt",
    "offer", "won", "150", "guaranteed", "mobile", "www.award.com", "entry",
    "ringtone", "subscribe", "winner", "reply",
]
HAM_WORDS = [
    "ok", "see", "you", "later", "home", "dinner", "love", "tomorrow",
    "meeting", "thanks", "lol", "going", "good", "night", "sorry", "miss",
    "when", "where", "coming", "today",
]


def sms_path():
    for cand in SMS_CANDIDATES:
        if cand and Path(cand).is_file():
            return Path(cand)
    return None


def require_sms():
    path = sms_path()
    if path is None:
        pytest.skip(
            "SMS Spam Collection not found (UCI download is unreachable from "
            "this sandbox). Place the raw SMSSpamCollection file at "
            "data/SMSSpamCollection or set FEHDC_SMS_DATA to run this test."
        )
    return path


def make_synthetic_records(n=600, seed=0, spam_fraction=0.2):
    rng = np.random.default_rng(seed)
    records = []
    for i in range(n):
        spam = rng.random() < spam_fraction
        words = SPAM_WORDS if spam else HAM_WORDS
        k = int(rng.integers(6, 14))
        msg = " ".join(rng.choice(words) for _ in range(k)) + f" #{i}"
        records.append(("spam" if spam else "ham", msg))
    return records


@pytest.fixture(scope="session")
def synthetic_dataset():
    return Dataset(make_synthetic_records(), source="synthetic")


@pytest.fixture(scope="session")
def synthetic_tsv(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "synthetic.tsv"
    lines = [f"{label}\t{text}" for label, text in make_synthetic_records()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
