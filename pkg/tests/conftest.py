from pathlib import Path

import pytest

from watchscreen.index import Document, build_index

DATA = Path(__file__).parent / "data"

SAMPLE_NAMES = {
    1: "CANBERK BERKIN OZDEMIR",
    2: "AHMET EMRE BUDUR",
    3: "OYA CIMEN BUDUR",
    4: "EMRAH BUDUR",
    5: "HUSSAIN BERK BUDAK",
    6: "HUSSEIN OZDEN CAN",
}

# record side of the labeled sample queries
SAMPLE_RECORDS = {
    1: "MARIAN OYA CELTIK",
    2: "AHMET MIYESE",
    3: "CITY BANK",
    4: "HERMANN",
    5: "DURAN MAKIN",
    6: "Muhammad SALAH",
    7: "ATC LTD",
    8: "KWANGSON BANKING CO.",
    9: "KBC FINANCIAL INC",
    10: "ODESSA AIR",
}


def docs_from(names):
    return [Document.from_name(i, n) for i, n in names.items()]


@pytest.fixture(scope="session")
def sample_docs():
    return docs_from(SAMPLE_NAMES)


@pytest.fixture(scope="session")
def sample_index(sample_docs):
    return build_index(sample_docs)


@pytest.fixture(scope="session")
def record_docs():
    return docs_from(SAMPLE_RECORDS)


@pytest.fixture(scope="session")
def mt103_message():
    return (DATA / "mt103_sample.txt").read_text(encoding="utf-8")


@pytest.fixture
def reference_file(tmp_path):
    path = tmp_path / "reference.tsv"
    path.write_text("".join(f"{i}\t{n}\n" for i, n in SAMPLE_NAMES.items()), encoding="utf-8")
    return path


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
