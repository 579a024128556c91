#!/usr/bin/env python3
"""Download the benchmark graphs into the kcgds data directory.

Small graphs come from Mark Newman's network data page (zipped GML), large
ones from SNAP (gzipped edge lists). Every file is converted to a plain
``u v`` edge list named ``<dataset>.txt``.

Checksums are trust-on-first-use: the sha256 of each converted file is
recorded in ``checksums.json`` the first time it is fetched, and later
fetches (or ``--verify``) fail if the content changes.

    python scripts/fetch_datasets.py                 # small graphs
    python scripts/fetch_datasets.py --large         # plus the SNAP graphs
    python scripts/fetch_datasets.py ca-condmat      # selected graphs
"""
from __future__ import annotations

import argparse
import gzip
import io
import json
import re
import sys
import urllib.request
import zipfile

from kcgds import datasets

NEWMAN = "http://www-personal.umich.edu/~mejn/netdata/{}.zip"
SNAP = "https://snap.stanford.edu/data/{}.txt.gz"

SOURCES = {
    "karate": NEWMAN.format("karate"),
    "dolphins": NEWMAN.format("dolphins"),
    "lesmis": NEWMAN.format("lesmis"),
    "adjnoun": NEWMAN.format("adjnoun"),
    "football": NEWMAN.format("football"),
    "polbooks": NEWMAN.format("polbooks"),
    "celegansneural": NEWMAN.format("celegansneural"),
    "polblogs": NEWMAN.format("polblogs"),
    "power": NEWMAN.format("power"),
    "wiki-vote": SNAP.format("wiki-Vote"),
    "ca-condmat": SNAP.format("ca-CondMat"),
    "p2p-gnutella31": SNAP.format("p2p-Gnutella31"),
    "soc-slashdot0902": SNAP.format("soc-Slashdot0902"),
    "email-euall": SNAP.format("email-EuAll"),
    "web-notredame": SNAP.format("web-NotreDame"),
    "amazon": SNAP.format("bigdata/communities/com-amazon.ungraph"),
    "youtube": SNAP.format("bigdata/communities/com-youtube.ungraph"),
    "roadnet-ca": SNAP.format("roadNet-CA"),
}

_GML_EDGE = re.compile(r"edge\s*\[(.*?)\]", re.S)
_GML_FIELD = re.compile(r"\b(source|target)\s+(-?\d+)")


def gml_edges(text: str) -> list[tuple[int, int]]:
    """``(source, target)`` pairs of a GML file, using the GML node ids."""
    out = []
    for body in _GML_EDGE.findall(text):
        fields = dict(_GML_FIELD.findall(body))
        if "source" not in fields or "target" not in fields:
            raise ValueError(f"GML edge without endpoints: {body.strip()!r}")
        out.append((int(fields["source"]), int(fields["target"])))
    return out


def convert(name: str, payload: bytes) -> bytes:
    if SOURCES[name].endswith(".zip"):
        with zipfile.ZipFile(io.BytesIO(payload)) as zf:
            gml = next(n for n in zf.namelist() if n.endswith(".gml"))
            text = zf.read(gml).decode("utf-8", errors="replace")
        return "".join(f"{u} {v}\n" for u, v in gml_edges(text)).encode()
    return gzip.decompress(payload)  # SNAP files already are edge lists with # comments


def _load_sums(path) -> dict:
    return json.loads(path.read_text()) if path.is_file() else {}


def fetch(name: str, sums: dict, force: bool = False) -> str:
    dest = datasets.data_dir() / f"{name}.txt"
    if dest.is_file() and not force:
        digest = datasets.sha256(dest)
        if sums.get(name, digest) != digest:
            raise SystemExit(f"{name}: checksum mismatch for existing {dest}")
        sums[name] = digest
        return "present"
    with urllib.request.urlopen(SOURCES[name], timeout=120) as resp:
        data = convert(name, resp.read())
    tmp = dest.with_suffix(".part")
    tmp.write_bytes(data)
    digest = datasets.sha256(tmp)
    if name in sums and sums[name] != digest:
        tmp.unlink()
        raise SystemExit(f"{name}: downloaded content does not match the recorded checksum")
    tmp.replace(dest)
    sums[name] = digest
    return "fetched"


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("names", nargs="*", help="datasets to fetch (default: small graphs)")
    p.add_argument("--large", action="store_true", help="also fetch the SNAP graphs")
    p.add_argument("--force", action="store_true", help="re-download existing files")
    args = p.parse_args(argv)

    names = args.names or [n for n in datasets.SMALL if n not in datasets.BUNDLED_SHA256]
    if args.large and not args.names:
        names += list(datasets.LARGE)
    unknown = [n for n in names if n not in SOURCES]
    if unknown:
        p.error(f"unknown datasets: {', '.join(unknown)}")

    datasets.data_dir().mkdir(parents=True, exist_ok=True)
    sums_path = datasets.data_dir() / "checksums.json"
    sums = _load_sums(sums_path)
    failed = 0
    for name in names:
        try:
            status = fetch(name, sums, args.force)
        except OSError as exc:
            status, failed = f"failed ({exc})", failed + 1
        print(f"{name}: {status}")
    sums_path.write_text(json.dumps(sums, indent=1, sort_keys=True) + "\n")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
