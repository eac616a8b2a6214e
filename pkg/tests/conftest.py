"""Session-shared fixtures: the worked composition-algebra table, the free
grafting preLie instance, and its dualized coproduct table."""

import pytest

from hopfforest.hopfspec import faa_di_bruno_spec, save_spec
from hopfforest.prelie import dualize, grafting_instance, save_prelie


@pytest.fixture(scope="session")
def fdb6():
    return faa_di_bruno_spec(6)


@pytest.fixture(scope="session")
def graft4():
    return grafting_instance(4)


@pytest.fixture(scope="session")
def dual4(graft4):
    return dualize(graft4, 4)


@pytest.fixture(scope="session")
def fdb6_file(fdb6, tmp_path_factory):
    path = tmp_path_factory.mktemp("specs") / "fdb6.json"
    path.write_text(save_spec(fdb6))
    return str(path)


@pytest.fixture(scope="session")
def graft4_file(graft4, tmp_path_factory):
    path = tmp_path_factory.mktemp("prelie") / "graft4.json"
    path.write_text(save_prelie(graft4))
    return str(path)
