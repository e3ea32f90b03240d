"""Locating shipped data files and user resources."""

from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path

from msort.codes import MarkerTable, RemapTable, load_marker_table, load_remap_table

DATA_DIR = Path(__file__).parent / "data"
DEFAULT_REMAP = "bgh_remap.tsv"
DEFAULT_MARKERS = "markers.tsv"


def find_file(name: str | os.PathLike) -> Path | None:
    """Resolve ``name`` as given, then under $MSORT_DATA_DIR, then shipped data."""
    path = Path(name)
    if path.is_file():
        return path
    if path.is_absolute():
        return None
    env = os.environ.get("MSORT_DATA_DIR")
    search = [Path(d) for d in env.split(os.pathsep) if d] if env else []
    for base in [*search, DATA_DIR]:
        candidate = base / path
        if candidate.is_file():
            return candidate
    return None


def open_text(path: str | os.PathLike):
    return open(path, encoding="utf-8", newline=None)


@lru_cache(maxsize=None)
def default_remap_table() -> RemapTable:
    path = DATA_DIR / DEFAULT_REMAP
    with open_text(path) as fh:
        return load_remap_table(fh, str(path.name))


@lru_cache(maxsize=None)
def default_markers() -> MarkerTable:
    return load_markers(DEFAULT_MARKERS)


def load_markers(name: str) -> MarkerTable:
    path = find_file(name)
    if path is None:
        raise FileNotFoundError(name)
    with open_text(path) as fh:
        return load_marker_table(fh, str(path))
