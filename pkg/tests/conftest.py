import pytest

from qc1d import fibonacci_kp_params, fibonacci_word, golden_basis, unit_basis


@pytest.fixture(scope="session")
def unit():
    return unit_basis()


@pytest.fixture(scope="session")
def golden():
    return golden_basis()


@pytest.fixture(scope="session")
def fib_word_8():
    return fibonacci_word(8)


@pytest.fixture(scope="session")
def kp_params_unit():
    # weight 1 Kronig-Penney profile set over the golden basis
    return fibonacci_kp_params(1)
