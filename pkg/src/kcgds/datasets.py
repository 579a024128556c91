"""Named datasets: three small graphs ship with the package, the rest are fetched.

Fetching is done by ``scripts/fetch_datasets.py`` into the data directory
(``$KCGDS_DATA`` or ``~/.cache/kcgds``); nothing is downloaded at run time.
"""
from __future__ import annotations

import hashlib
import json
import os
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import InputError
from .graph import Graph, load_edge_list

BUNDLED_SHA256 = {
    "karate": "a52ef094dac999c733b3ca63f5a97e32be625355b819a86071f1a6e33a6f2e8d",
    "lesmis": "aa931fab8fe05341fdd816748ad6a6811f992f62178d557f9b7f38d8016bfde7",
    "football": "698618375379ebc0f3e356122a0ba3d8026f6b7c9b23f0cd7dd1037fb3e9e19f",
}

SMALL = ("karate", "dolphins", "lesmis", "adjnoun", "football", "polbooks")
LARGE = (
    "celegansneural", "polblogs", "power", "wiki-vote", "ca-condmat", "p2p-gnutella31",
    "soc-slashdot0902", "email-euall", "web-notredame", "amazon", "youtube", "roadnet-ca",
)
ALL = SMALL + LARGE


class DatasetUnavailable(InputError):
    pass


def data_dir() -> Path:
    return Path(os.environ.get("KCGDS_DATA") or Path.home() / ".cache" / "kcgds")


def _bundled(name: str):
    return resources.files("kcgds").joinpath(f"data/{name}.txt")


def resolve(name_or_path) -> Path:
    """Path of a dataset given its registry name or a file path."""
    p = Path(name_or_path)
    if p.is_file():
        return p
    key = str(name_or_path).lower()
    if key in BUNDLED_SHA256:
        return Path(str(_bundled(key)))
    fetched = data_dir() / f"{key}.txt"
    if fetched.is_file():
        return fetched
    raise DatasetUnavailable(
        f"dataset {name_or_path!r} not found; run scripts/fetch_datasets.py "
        f"or place an edge list at {fetched}"
    )


def available(name: str) -> bool:
    try:
        resolve(name)
    except DatasetUnavailable:
        return False
    return True


def sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def recorded_checksums() -> dict:
    """Checksums written by the fetch script on first download."""
    path = data_dir() / "checksums.json"
    return json.loads(path.read_text()) if path.is_file() else {}


def load_dataset(name_or_path) -> Graph:
    path = resolve(name_or_path)
    key = str(name_or_path).lower()
    expected = BUNDLED_SHA256.get(key)
    if expected is None and path == data_dir() / f"{key}.txt":
        expected = recorded_checksums().get(key)
    if expected is not None and sha256(path) != expected:
        raise InputError(f"checksum mismatch for dataset {key!r} at {path}")
    return load_edge_list(path)


@lru_cache(maxsize=None)
def published() -> dict:
    """Reference values for the small- and large-graph comparison tables."""
    text = resources.files("kcgds").joinpath("data/published.json").read_text(encoding="utf-8")
    return json.loads(text)
