import numpy as np
import pytest

from entgeo.matcore import DimSplit

TWO_QUBITS = DimSplit(2, 2)


@pytest.fixture
def two_qubits():
    return TWO_QUBITS


def random_hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(20260824)
