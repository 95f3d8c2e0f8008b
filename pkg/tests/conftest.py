import pytest

from ellimage.cli import _bundled_records, _special_records


@pytest.fixture(scope="session")
def records():
    return _bundled_records()


@pytest.fixture(scope="session")
def record_map(records):
    return {r.rszb_label: r for r in records}


@pytest.fixture(scope="session")
def special_records():
    return _special_records()


@pytest.fixture(scope="session")
def image49(record_map):
    return record_map["49.196.9.1"].group()


@pytest.fixture(scope="session")
def printed_index49(special_records):
    return special_records[0].group()
