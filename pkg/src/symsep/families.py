"""Seeded generators for the state families used in tests and ``symsep generate``.

All randomness flows through :func:`make_rng` (numpy's PCG64 generator), and
single-party states are Haar random: normalized complex Gaussian vectors.
"""

from itertools import combinations
from math import comb, pi, sqrt

import numpy as np

from .errors import StateError
from .state import ProductState, PureState, apply_party_permutation
from .symmetry import antisymmetrize, cyclic_shift, project_symmetric, symmetrize

FAMILIES = (
    "ghz",
    "w",
    "dicke",
    "random-symmetric",
    "random-product",
    "slater",
    "translation-eigenstate",
)


def make_rng(seed):
    return np.random.default_rng(seed)


def haar_vector(rng, d):
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_product(rng, n, d):
    return ProductState(tuple(haar_vector(rng, d) for _ in range(n)))


def identical_product(rng, n, d):
    """``phi^(x)n`` with each copy carrying its own random global phase."""
    phi = haar_vector(rng, d)
    return ProductState(tuple(phi * np.exp(2j * pi * rng.random()) for _ in range(n)))


def _check_nd(n, d):
    if n < 1 or d < 2:
        raise StateError(f"need n >= 1 and d >= 2, got n={n}, d={d}")


def ghz(n, d=2):
    """``sum_k |k k ... k> / sqrt(d)``."""
    _check_nd(n, d)
    amps = np.zeros(d**n, dtype=complex)
    for k in range(d):
        amps[np.ravel_multi_index((k,) * n, (d,) * n)] = 1.0
    return PureState((d,) * n, amps / sqrt(d))


def dicke(n, k, d=2):
    """Equal superposition of all basis states with ``k`` parties in level 1."""
    _check_nd(n, d)
    if not 0 <= k <= n:
        raise StateError(f"Dicke excitation count must satisfy 0 <= k <= n, got k={k}, n={n}")
    amps = np.zeros(d**n, dtype=complex)
    for ones in combinations(range(n), k):
        digits = [1 if i in ones else 0 for i in range(n)]
        amps[np.ravel_multi_index(digits, (d,) * n)] = 1.0
    return PureState((d,) * n, amps / sqrt(comb(n, k)))


def w_state(n, d=2):
    return dicke(n, 1, d)


def random_symmetric(rng, n, d=2):
    """Random vector of the symmetric subspace.

    For qubits this is a random complex superposition of the Dicke states.
    """
    _check_nd(n, d)
    v = rng.standard_normal(d**n) + 1j * rng.standard_normal(d**n)
    return PureState.normalized_from((d,) * n, project_symmetric(v, n, d))


def symmetrized_product(rng, n, d=2, identical=False):
    phi = identical_product(rng, n, d) if identical else random_product(rng, n, d)
    return symmetrize(phi).state.normalized()


def slater(rng, n, d):
    """Antisymmetrized product of ``n`` random single-party states."""
    _check_nd(n, d)
    if d < n:
        raise StateError(f"a Slater state of {n} parties needs d >= n, got d={d}")
    out = antisymmetrize(random_product(rng, n, d))
    return out.state.normalized()


def basis_slater(levels, d):
    """Slater determinant of the basis states ``|levels[0]>, |levels[1]>, ...``."""
    factors = []
    for lv in levels:
        e = np.zeros(d, dtype=complex)
        e[lv] = 1.0
        factors.append(e)
    return antisymmetrize(ProductState(tuple(factors))).state.normalized()


def translation_eigenstate(rng, n, d=2, k=1):
    """Eigenvector of the cyclic party shift with phase ``2 pi k / n``.

    Built by averaging a random state over its cyclic shifts with phases
    ``exp(-i theta j)``.
    """
    _check_nd(n, d)
    if n < 2:
        raise StateError("translation eigenstates need at least two parties")
    theta = 2 * pi * k / n
    shift = cyclic_shift(n)
    for _ in range(100):
        current = PureState.normalized_from((d,) * n, rng.standard_normal(d**n) + 1j * rng.standard_normal(d**n))
        acc = np.zeros(d**n, dtype=complex)
        for j in range(n):
            acc += np.exp(-1j * theta * j) * current.amplitudes
            current = apply_party_permutation(current, shift)
        if np.linalg.norm(acc) > 1e-6:
            return PureState.normalized_from((d,) * n, acc)
    raise StateError("failed to build a translation eigenstate")


def generate(family, n, d=2, k=None, seed=0):
    """Dispatch for the CLI family names."""
    rng = make_rng(seed)
    if family == "ghz":
        return ghz(n, d)
    if family == "w":
        return w_state(n, d)
    if family == "dicke":
        if k is None:
            raise StateError("dicke needs an excitation count k")
        return dicke(n, k, d)
    if family == "random-symmetric":
        return random_symmetric(rng, n, d)
    if family == "random-product":
        _check_nd(n, d)
        return random_product(rng, n, d)
    if family == "slater":
        return slater(rng, n, d)
    if family == "translation-eigenstate":
        return translation_eigenstate(rng, n, d, 1 if k is None else k)
    raise StateError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
