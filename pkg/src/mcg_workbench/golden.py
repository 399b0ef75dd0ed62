"""The printed permutation tables, kept as JSON data files.

Points are 1-based in the files, as printed; PermRep stores them 0-based.
Each file is checked against ``SHA256SUMS`` on load unless the data
directory is overridden with ``MCG_WORKBENCH_DATA`` and the override has
no checksum file.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from pathlib import Path

from .permgrp import PermRep

__all__ = ["DATA_ENV", "NAMES", "ChecksumMismatch", "GoldenData", "data_dir", "load", "load_all"]

DATA_ENV = "MCG_WORKBENCH_DATA"

# name -> (genus, kind); kind is the form type, or "alpha" for the twisted table
NAMES = {
    "phi2_minus": (2, "-"),
    "phi2_alpha": (2, "alpha"),
    "phi2_plus": (2, "+"),
    "phi3_minus": (3, "-"),
    "phi3_plus": (3, "+"),
}
ALPHA = "alpha"


class ChecksumMismatch(ValueError):
    """A data file does not match its recorded sha256."""


def data_dir() -> Path:
    override = os.environ.get(DATA_ENV)
    return Path(override) if override else Path(__file__).with_name("data")


def _checksums(directory: Path) -> dict[str, str] | None:
    sums = directory / "SHA256SUMS"
    if not sums.exists():
        return None
    out = {}
    for line in sums.read_text().splitlines():
        if line.strip():
            digest, name = line.split(maxsplit=1)
            out[name.strip()] = digest
    return out


def load(name: str, directory: Path | str | None = None, *, check: bool = True) -> PermRep:
    """One table by name: a key of NAMES or ``"alpha"``."""
    if name not in NAMES and name != ALPHA:
        raise KeyError(f"unknown golden table {name!r}")
    directory = Path(directory) if directory is not None else data_dir()
    path = directory / f"{name}.json"
    raw = path.read_bytes()
    sums = _checksums(directory) if check else None
    if sums is not None:
        want = sums.get(path.name)
        got = hashlib.sha256(raw).hexdigest()
        if want != got:
            raise ChecksumMismatch(f"{path}: sha256 {got} does not match recorded {want}")
    return PermRep.from_json(raw.decode())


@dataclass(frozen=True)
class GoldenData:
    tables: dict[str, PermRep]
    alpha: PermRep

    def genus(self, name: str) -> int:
        return NAMES[name][0]


def load_all(directory: Path | str | None = None, *, check: bool = True) -> GoldenData:
    tables = {n: load(n, directory, check=check) for n in NAMES}
    return GoldenData(tables, load(ALPHA, directory, check=check))
