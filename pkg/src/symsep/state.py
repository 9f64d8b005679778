"""Dense multipartite pure states, product states and density matrices.

Amplitude ordering
------------------
Amplitudes are stored flat in row-major order with party 0 as the
slowest-varying index: the basis state ``|p_0 p_1 ... p_{n-1}>`` sits at
flat index ``((p_0 * d_1 + p_1) * d_2 + ...) + p_{n-1}``.  This is exactly
``numpy.ravel_multi_index(p, dims)`` and is what ``amplitudes.reshape(dims)``
undoes.  For two qubits the order is ``|00>, |01>, |10>, |11>``.

Party permutations
------------------
A permutation ``sigma`` is a sequence of length ``n`` with ``sigma[i]`` the
slot that party ``i``'s local state is moved to.  Applied to a product
state this sends ``phi_0 (x) ... (x) phi_{n-1}`` to the product whose slot
``sigma[i]`` holds ``phi_i``; the cyclic shift ``(1, 2, ..., n-1, 0)`` maps
``|001>`` to ``|100>``.
"""

from dataclasses import dataclass
from math import prod
import string

import numpy as np

from .errors import GuardError, StateError

NORM_TOL = 1e-9
ZERO_NORM = 1e-12
HERMITIAN_TOL = 1e-9
PSD_TOL = 1e-9
DENSITY_MAX_DIM = 1024


def _frozen(array, dtype=complex):
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


def _check_dims(dims):
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise StateError("at least one party is required")
    if len(dims) == 1:
        if dims[0] < 1:
            raise StateError(f"local dimension must be positive, got {dims[0]}")
    elif any(d < 2 for d in dims):
        raise StateError(f"local dimensions must be >= 2 for n > 1, got {dims}")
    return dims


@dataclass(frozen=True)
class PureState:
    """Pure state vector over ``len(dims)`` parties.

    The vector need not be normalized; operations that need a unit vector
    call :meth:`require_normalized`.
    """

    dims: tuple
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = _check_dims(self.dims)
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != prod(dims):
            raise StateError(
                f"amplitude length {amps.size} does not match prod(dims)={prod(dims)}"
            )
        if not np.all(np.isfinite(amps)):
            raise StateError("amplitudes must be finite")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def normalized_from(cls, dims, amplitudes):
        """Build a unit vector from arbitrary nonzero amplitudes."""
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm < ZERO_NORM:
            raise StateError("cannot normalize the zero vector")
        return cls(dims, amps / norm)

    @classmethod
    def basis(cls, dims, digits):
        """Computational basis state ``|digits>``."""
        dims = _check_dims(dims)
        if len(digits) != len(dims):
            raise StateError("one digit per party is required")
        if any(not 0 <= p < d for p, d in zip(digits, dims)):
            raise StateError(f"basis digits {tuple(digits)} out of range for dims {dims}")
        amps = np.zeros(prod(dims), dtype=complex)
        amps[np.ravel_multi_index(tuple(digits), dims)] = 1.0
        return cls(dims, amps)

    @property
    def n(self):
        return len(self.dims)

    @property
    def dim(self):
        return self.amplitudes.size

    def tensor(self):
        """Amplitudes as an ``n``-axis array, one axis per party."""
        return self.amplitudes.reshape(self.dims)

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol=NORM_TOL):
        return abs(self.norm() ** 2 - 1.0) <= tol

    def require_normalized(self):
        if self.norm() < ZERO_NORM:
            raise StateError("zero vector is not a valid state")
        if not self.is_normalized():
            raise StateError(f"state is not normalized (norm^2 = {self.norm() ** 2:.12g})")
        return self

    def normalized(self):
        return PureState.normalized_from(self.dims, self.amplitudes)

    def is_homogeneous(self):
        return len(set(self.dims)) == 1


@dataclass(frozen=True)
class ProductState:
    """Completely product state, stored as its unit-norm single-party factors."""

    factors: tuple

    def __post_init__(self):
        if len(self.factors) < 1:
            raise StateError("a product state needs at least one factor")
        factors = []
        for i, f in enumerate(self.factors):
            v = np.asarray(f, dtype=complex).reshape(-1)
            if v.size < 1 or not np.all(np.isfinite(v)):
                raise StateError(f"factor {i} is empty or not finite")
            if abs(np.linalg.norm(v) - 1.0) > NORM_TOL:
                raise StateError(f"factor {i} is not unit norm (norm = {np.linalg.norm(v):.12g})")
            factors.append(_frozen(v))
        object.__setattr__(self, "factors", tuple(factors))
        _check_dims(self.dims)

    @classmethod
    def from_vectors(cls, vectors):
        """Normalize each vector and wrap them as a product state."""
        out = []
        for i, v in enumerate(vectors):
            v = np.asarray(v, dtype=complex).reshape(-1)
            norm = np.linalg.norm(v)
            if norm < ZERO_NORM:
                raise StateError(f"factor {i} is the zero vector")
            out.append(v / norm)
        return cls(tuple(out))

    @property
    def n(self):
        return len(self.factors)

    @property
    def dims(self):
        return tuple(f.size for f in self.factors)

    def is_homogeneous(self):
        return len(set(self.dims)) == 1


def _validate_operator(matrix, dims, what):
    dims = _check_dims(dims)
    m = np.asarray(matrix, dtype=complex)
    side = prod(dims)
    if m.shape != (side, side):
        raise StateError(f"{what} must be {side}x{side} for dims {dims}, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise StateError(f"{what} must be finite")
    dev = np.max(np.abs(m - m.conj().T)) if side else 0.0
    if dev > HERMITIAN_TOL:
        raise StateError(f"{what} is not Hermitian (max deviation {dev:.3g})")
    return dims, m


@dataclass(frozen=True)
class DensityMatrix:
    """Unit-trace positive semidefinite operator on the composite space."""

    dims: tuple
    matrix: np.ndarray

    def __post_init__(self):
        dims, m = _validate_operator(self.matrix, self.dims, "density matrix")
        if m.shape[0] > DENSITY_MAX_DIM:
            raise GuardError(
                f"density matrices are limited to dimension {DENSITY_MAX_DIM}, got {m.shape[0]}"
            )
        tr = np.trace(m)
        if abs(tr - 1.0) > NORM_TOL:
            raise StateError(f"density matrix trace is {tr:.12g}, expected 1")
        lam_min = np.linalg.eigvalsh((m + m.conj().T) / 2)[0]
        if lam_min < -PSD_TOL:
            raise StateError(f"density matrix is not PSD (min eigenvalue {lam_min:.3g})")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", _frozen(m))

    @classmethod
    def from_pure(cls, psi):
        psi.require_normalized()
        v = psi.amplitudes
        return cls(psi.dims, np.outer(v, v.conj()))

    @property
    def n(self):
        return len(self.dims)

    def is_homogeneous(self):
        return len(set(self.dims)) == 1


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in descending order and the matching eigenvector columns."""

    eigenvalues: np.ndarray
    unitary: np.ndarray

    def reconstruct(self):
        u = self.unitary
        return (u * self.eigenvalues) @ u.conj().T


def tensor_product(factors, dims=None):
    """Tensor product of the factors of a :class:`ProductState`."""
    if dims is not None and tuple(dims) != factors.dims:
        raise StateError(f"declared dims {tuple(dims)} do not match factor lengths {factors.dims}")
    amps = np.ones(1, dtype=complex)
    for f in factors.factors:
        amps = np.kron(amps, f)
    return PureState(factors.dims, amps)


def inner_product(a, b):
    """``<a|b>``, antilinear in ``a``."""
    if a.dims != b.dims:
        raise StateError(f"dims mismatch: {a.dims} vs {b.dims}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def check_permutation(sigma, n):
    sigma = tuple(int(s) for s in sigma)
    if len(sigma) != n or sorted(sigma) != list(range(n)):
        raise StateError(f"{sigma} is not a permutation of {n} parties")
    return sigma


def inverse_permutation(sigma):
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(inv)


def permute_tensor(tensor, sigma):
    """Move axis ``i`` of ``tensor`` to position ``sigma[i]``."""
    return np.transpose(tensor, inverse_permutation(sigma))


def apply_party_permutation(psi, sigma):
    """Relabel parties: party ``i``'s content ends up in slot ``sigma[i]``."""
    if not psi.is_homogeneous():
        raise StateError(f"party permutations need equal local dims, got {psi.dims}")
    sigma = check_permutation(sigma, psi.n)
    return PureState(psi.dims, permute_tensor(psi.tensor(), sigma).reshape(-1))


def permute_operator(matrix, dims, sigma):
    """``U_sigma M U_sigma^dagger`` for an operator on homogeneous parties."""
    n = len(dims)
    inv = inverse_permutation(sigma)
    t = np.asarray(matrix).reshape(tuple(dims) * 2)
    axes = list(inv) + [n + k for k in inv]
    return np.transpose(t, axes).reshape(matrix.shape)


def _partial_trace_operator(matrix, dims, keep):
    n = len(dims)
    if n > len(string.ascii_letters) // 2:
        raise GuardError("too many parties for partial trace")
    rows = string.ascii_letters[:n]
    cols = string.ascii_letters[n : 2 * n]
    col_labels = [rows[i] if i not in keep else cols[i] for i in range(n)]
    out_rows = "".join(rows[i] for i in keep)
    out_cols = "".join(col_labels[i] for i in keep)
    spec = f"{rows}{''.join(col_labels)}->{out_rows}{out_cols}"
    t = np.asarray(matrix).reshape(tuple(dims) * 2)
    side = prod(dims[i] for i in keep)
    return np.einsum(spec, t).reshape(side, side)


def _check_keep(keep, n):
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise StateError("keep must name at least one party")
    if keep[0] < 0 or keep[-1] >= n:
        raise StateError(f"party index out of range 0..{n - 1}: {keep}")
    return tuple(keep)


def partial_trace(rho, keep):
    """Reduced density matrix on the parties in ``keep`` (0-based)."""
    keep = _check_keep(keep, rho.n)
    if len(keep) == rho.n:
        return rho
    reduced = _partial_trace_operator(rho.matrix, rho.dims, keep)
    return DensityMatrix(tuple(rho.dims[i] for i in keep), reduced)


def spectral_decompose(h):
    """Eigen-decomposition of a Hermitian (PSD) matrix, eigenvalues descending.

    Eigenvalues in ``[-1e-9, 0)`` are clipped to zero.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise StateError(f"expected a square matrix, got shape {h.shape}")
    dev = np.max(np.abs(h - h.conj().T)) if h.size else 0.0
    if dev > HERMITIAN_TOL:
        raise StateError(f"matrix is not Hermitian (max deviation {dev:.3g})")
    lam, u = np.linalg.eigh((h + h.conj().T) / 2)
    order = np.argsort(lam, kind="stable")[::-1]
    lam = lam[order]
    u = u[:, order]
    lam = np.where((lam < 0) & (lam >= -PSD_TOL), 0.0, lam)
    return SpectralDecomposition(_frozen(lam, float), _frozen(u))
