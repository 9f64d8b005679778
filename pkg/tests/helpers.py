"""Small named states shared by the tests."""

import numpy as np

from symsep.state import ProductState, PureState

S2 = 1 / np.sqrt(2)
KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
PLUS = np.array([S2, S2], dtype=complex)
MINUS = np.array([S2, -S2], dtype=complex)


def qubits(*digits):
    return PureState.basis((2,) * len(digits), digits)


def pure(dims, amps):
    return PureState.normalized_from(dims, amps)


def product(*factors):
    return ProductState(tuple(factors))


def bell():
    return pure((2, 2), [1, 0, 0, 1])


def ghz(n):
    amps = np.zeros(2**n)
    amps[0] = amps[-1] = 1
    return pure((2,) * n, amps)


def w3():
    return pure((2, 2, 2), [0, 1, 1, 0, 1, 0, 0, 0])


def singlet():
    return pure((2, 2), [0, 1, -1, 0])
