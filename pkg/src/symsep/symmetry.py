"""Permutation and cyclic-translation symmetry of multipartite states."""

from dataclasses import dataclass
from math import comb, factorial, log2, pi

import numpy as np

from .errors import GuardError, StateError, SymsepError, max_qubits
from .state import PureState, apply_party_permutation, inner_product

SYMMETRIZE_MAX_N = 10
PROJECTOR_MAX_LOG2 = 14
EIGEN_TOL = 1e-8
IDENTICAL_TOL = 1e-9


@dataclass(frozen=True)
class TranslationReport:
    is_eigenstate: bool
    theta: float | None
    residual: float


@dataclass(frozen=True)
class SymmetrizedState:
    """Unnormalized ``(1/n!) sum_sigma sigma|Phi>`` and its squared norm."""

    state: PureState
    norm_squared: float


def _require_homogeneous(dims, what):
    if len(set(dims)) != 1:
        raise StateError(f"{what} needs equal local dims, got {tuple(dims)}")


def transposition(n, i):
    """Swap of neighbouring parties ``i`` and ``i + 1``."""
    sigma = list(range(n))
    sigma[i], sigma[i + 1] = i + 1, i
    return tuple(sigma)


def cyclic_shift(n):
    """The translation ``0 -> 1 -> ... -> n-1 -> 0`` on party labels."""
    return tuple((i + 1) % n for i in range(n))


def _swap_deviations(psi, sign):
    _require_homogeneous(psi.dims, "symmetry test")
    v = psi.amplitudes
    return [
        float(np.linalg.norm(apply_party_permutation(psi, transposition(psi.n, i)).amplitudes - sign * v))
        for i in range(psi.n - 1)
    ]


def is_permutation_invariant(psi, tol=EIGEN_TOL):
    """True if every neighbour swap leaves ``psi`` unchanged to within ``tol``.

    Neighbour swaps generate the full symmetric group, so this is
    equivalent to invariance under all ``n!`` permutations.
    """
    return all(dev <= tol for dev in _swap_deviations(psi, 1.0))


def is_antisymmetric(psi, tol=EIGEN_TOL):
    """True if every neighbour swap flips the sign of ``psi`` to within ``tol``."""
    if psi.norm() < tol:
        return False
    return all(dev <= tol for dev in _swap_deviations(psi, -1.0))


def translation_analyze(psi):
    """Test whether ``psi`` is an eigenvector of the cyclic party shift.

    The phase is read off as ``arg <psi|T psi>``; overlaps of modulus
    below ``1 - 1e-8`` are reported as non-eigenstates.
    """
    _require_homogeneous(psi.dims, "translation analysis")
    if psi.n < 2:
        raise StateError("translation analysis needs at least two parties")
    psi.require_normalized()
    shifted = apply_party_permutation(psi, cyclic_shift(psi.n))
    overlap = inner_product(psi, shifted)
    theta = float(np.angle(overlap))
    if theta <= -pi:
        theta = pi
    residual = float(np.linalg.norm(shifted.amplitudes - np.exp(1j * theta) * psi.amplitudes))
    if abs(overlap) < 1.0 - EIGEN_TOL or residual > EIGEN_TOL:
        return TranslationReport(False, None, residual)
    return TranslationReport(True, theta, residual)


def _check_symmetrize_size(phi):
    _require_homogeneous(phi.dims, "symmetrization")
    n, d = phi.n, phi.dims[0]
    if n > SYMMETRIZE_MAX_N:
        raise GuardError(f"symmetrization limited to n <= {SYMMETRIZE_MAX_N}, got {n}")
    if n * log2(d) > max_qubits():
        raise GuardError(f"{d}^{n} amplitudes exceed the {max_qubits()}-qubit guard")


def _permutation_sum(factors, signed):
    # Sum over all orderings of the factors, built subset by subset: the
    # entry for subset S sums the placements of S's factors into the first
    # |S| slots, with slot 0 taking each member of S in ascending order.
    n = len(factors)
    layer = {0: np.ones(1, dtype=complex)}
    for size in range(1, n + 1):
        nxt = {}
        for mask in range(1 << n):
            if bin(mask).count("1") != size:
                continue
            acc = None
            rank = 0
            for i in range(n):
                if not mask >> i & 1:
                    continue
                term = np.kron(factors[i], layer[mask ^ (1 << i)])
                if signed and rank & 1:
                    term = -term
                acc = term if acc is None else acc + term
                rank += 1
            nxt[mask] = acc
        layer = nxt
    return layer[(1 << n) - 1]


def _symmetrized(phi, signed):
    _check_symmetrize_size(phi)
    total = _permutation_sum(phi.factors, signed)
    state = PureState(phi.dims, total / factorial(phi.n))
    return SymmetrizedState(state, float(np.vdot(state.amplitudes, state.amplitudes).real))


def symmetrize(phi):
    """Average of a product state over all party permutations.

    The result is never the zero vector: its squared norm is
    ``Perm(Gram) / n!`` and the permanent of a unit-diagonal PSD Gram matrix
    is at least one.
    """
    out = _symmetrized(phi, signed=False)
    if not out.norm_squared > 0.0:
        raise SymsepError("symmetrized product state vanished")
    return out


def antisymmetrize(phi):
    """Sign-weighted average over permutations (a Slater determinant).

    Linearly dependent factors give the zero vector, reported through
    ``norm_squared < 1e-12``.
    """
    return _symmetrized(phi, signed=True)


def _occupation_keys(n, d):
    digits = np.indices((d,) * n).reshape(n, -1).T
    counts = np.stack([(digits == v).sum(axis=1) for v in range(d)], axis=1)
    _, keys = np.unique(counts, axis=0, return_inverse=True)
    return keys.reshape(-1)


def _check_projector_size(n, d):
    if n < 1 or d < 1:
        raise StateError(f"invalid party count or local dimension: n={n}, d={d}")
    if n * log2(max(d, 1)) > PROJECTOR_MAX_LOG2:
        raise GuardError(f"{d}^{n} exceeds the symmetric projector size guard")


def symmetric_subspace_projector(n, d):
    """Dense projector ``(1/n!) sum_sigma U_sigma`` onto the symmetric subspace.

    Averaging a basis state over permutations spreads it uniformly over its
    orbit, so the projector is block diagonal with one ``J / |orbit|`` block
    per occupation pattern; that is how it is assembled here.
    """
    _check_projector_size(n, d)
    keys = _occupation_keys(n, d)
    sizes = np.bincount(keys)
    same = keys[:, None] == keys[None, :]
    return same / sizes[keys][:, None]


def project_symmetric(vec, n, d):
    """Apply the symmetric projector to a vector without forming the matrix."""
    _check_projector_size(n, d)
    keys = _occupation_keys(n, d)
    vec = np.asarray(vec, dtype=complex)
    sizes = np.bincount(keys)
    means = (np.bincount(keys, vec.real) + 1j * np.bincount(keys, vec.imag)) / sizes
    return means[keys]


def symmetric_dimension(n, d):
    return comb(n + d - 1, n)
