import sys
from pathlib import Path

import pytest
from hypothesis import settings

from conelab.builtins import build_dual_vinberg_clan, build_sym_clan
from conelab.quadratic import subclan_square_rep, sym_column_rep

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("exact", deadline=None, max_examples=40)
settings.load_profile("exact")


@pytest.fixture(scope="session")
def sym2():
    return build_sym_clan(2)


@pytest.fixture(scope="session")
def sym3():
    return build_sym_clan(3)


@pytest.fixture(scope="session")
def dual_vinberg():
    return build_dual_vinberg_clan()


@pytest.fixture(scope="session")
def col2():
    return sym_column_rep(2)


@pytest.fixture(scope="session")
def col3():
    return sym_column_rep(3)


@pytest.fixture(scope="session")
def twocol3():
    return sym_column_rep(3, 2)


@pytest.fixture(scope="session")
def dv_square():
    return subclan_square_rep(build_dual_vinberg_clan())
