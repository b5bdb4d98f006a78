import pytest

from zetabounds import zeta_numerics


@pytest.fixture(scope="session")
def zeros():
    return zeta_numerics.default_zero_table()
