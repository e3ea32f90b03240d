import csv
import sys

import pytest

from msort.features import load_feature_dictionary
from msort.lexicon import load_lexicon
from msort.paths import load_thesaurus
from msort.resources import DATA_DIR, default_remap_table, load_markers


def data_file(name):
    return DATA_DIR / name


def read_words(name):
    with open(data_file(name), encoding="utf-8") as fh:
        return [line.rstrip("\n") for line in fh if line.strip()]


def read_lexicon(name, remap=True):
    with open(data_file(name), encoding="utf-8") as fh:
        return load_lexicon(fh, default_remap_table() if remap else None, name)


@pytest.fixture(scope="session")
def remap_table():
    return default_remap_table()


@pytest.fixture(scope="session")
def markers():
    return load_markers("markers.tsv")


@pytest.fixture(scope="session")
def short_markers():
    return load_markers("markers_short.tsv")


@pytest.fixture(scope="session")
def event_lexicon():
    return read_lexicon("events_lexicon.tsv")


@pytest.fixture(scope="session")
def event_words():
    return read_words("events.txt")


@pytest.fixture(scope="session")
def thesaurus():
    with open(data_file("edr_mini.tsv"), encoding="utf-8") as fh:
        return load_thesaurus(fh, "edr_mini.tsv")


@pytest.fixture(scope="session")
def containers():
    with open(data_file("containers.tsv"), encoding="utf-8") as fh:
        return load_feature_dictionary(fh, "containers.tsv")


@pytest.fixture(scope="session")
def pair_rows():
    with open(data_file("pairs.tsv"), encoding="utf-8") as fh:
        return list(csv.DictReader(fh, delimiter="\t"))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, title = results[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}")
