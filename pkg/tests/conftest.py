import pytest

from emergelab import eca


@pytest.fixture(scope="session")
def rule30_column():
    """First 2**14 centre-column bits of rule 30 (computed once)."""
    return eca.center_column(eca.parse_rule(30), 2 ** 14 - 1)
