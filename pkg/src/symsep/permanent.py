"""Matrix permanents and Gram matrices of product-state factors.

For unit factors the Gram matrix ``a_ij = <phi_i|phi_j>`` is Hermitian,
positive semidefinite and has unit diagonal, and its permanent lies in
``[1, n!]``: it equals 1 for orthonormal factors and ``n!`` when all
factors coincide up to phase.
"""

from dataclasses import dataclass
from itertools import permutations
from math import factorial

import numpy as np

from .errors import GuardError, StateError

RYSER_MAX_N = 24
NAIVE_MAX_N = 9
IMAG_TOL = 1e-9


@dataclass(frozen=True)
class GramMatrix:
    entries: np.ndarray

    def __post_init__(self):
        g = np.array(self.entries, dtype=complex, copy=True)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise StateError(f"Gram matrix must be square, got shape {g.shape}")
        if np.max(np.abs(g - g.conj().T), initial=0.0) > 1e-12:
            raise StateError("Gram matrix is not Hermitian")
        if np.max(np.abs(np.diag(g) - 1.0), initial=0.0) > 1e-9:
            raise StateError("Gram matrix must have unit diagonal")
        if g.size and np.linalg.eigvalsh(g)[0] < -1e-9:
            raise StateError("Gram matrix is not positive semidefinite")
        g.setflags(write=False)
        object.__setattr__(self, "entries", g)

    @property
    def n(self):
        return self.entries.shape[0]


@dataclass(frozen=True)
class MarcusReport:
    perm: float
    lower_ok: bool
    upper_ok: bool
    imag_residue: float


def _square(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise StateError(f"permanent needs a square matrix, got shape {m.shape}")
    return m


def permanent_ryser(m):
    """Permanent by Ryser's inclusion-exclusion formula.

    Column subsets are visited in binary-reflected Gray code order so each
    step adds or removes a single column from the running row sums; the
    cost is ``O(2^n n)``.
    """
    m = _square(m)
    n = m.shape[0]
    if n > RYSER_MAX_N:
        raise GuardError(f"Ryser permanent limited to n <= {RYSER_MAX_N}, got {n}")
    if n == 0:
        return 1.0 + 0j
    row_sums = np.zeros(n, dtype=complex)
    total = 0j
    gray = 0
    size = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        gray ^= 1 << j
        if gray >> j & 1:
            row_sums += m[:, j]
            size += 1
        else:
            row_sums -= m[:, j]
            size -= 1
        term = complex(np.prod(row_sums))
        total += -term if size & 1 else term
    return -total if n & 1 else total


def permanent_naive(m):
    """Permanent as a plain sum over all ``n!`` permutations (test oracle)."""
    m = _square(m)
    n = m.shape[0]
    if n > NAIVE_MAX_N:
        raise GuardError(f"naive permanent limited to n <= {NAIVE_MAX_N}, got {n}")
    if n == 0:
        return 1.0 + 0j
    perms = np.array(list(permutations(range(n))))
    return complex(m[np.arange(n), perms].prod(axis=1).sum())


def gram_from_factors(phi):
    """Gram matrix of overlaps ``<phi_i|phi_j>`` of a product state's factors."""
    if not phi.is_homogeneous():
        raise StateError(f"Gram matrix needs equal local dims, got {phi.dims}")
    f = np.stack(phi.factors)
    g = f.conj() @ f.T
    return GramMatrix((g + g.conj().T) / 2)


def marcus_bounds_check(g):
    """Permanent of a Gram matrix checked against ``1 <= perm <= n!``."""
    if not isinstance(g, GramMatrix):
        g = GramMatrix(g)
    value = permanent_ryser(g.entries)
    residue = abs(value.imag)
    if residue > IMAG_TOL:
        raise StateError(f"Gram permanent has imaginary residue {residue:.3g}")
    perm = value.real
    nfact = factorial(g.n)
    return MarcusReport(
        perm=perm,
        lower_ok=perm >= 1.0 - 1e-9,
        upper_ok=perm <= nfact + 1e-6 * nfact,
        imag_residue=residue,
    )
