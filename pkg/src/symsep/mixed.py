"""Mixed states: ensembles, Hilbert-Schmidt overlaps and symmetrization of densities.

Separability of a general density matrix is not decided here.  A mixed state
counts as fully separable only when it comes with a certificate, an
:class:`Ensemble` whose members are all product states.
"""

from dataclasses import dataclass
from itertools import permutations
from math import factorial

import numpy as np

from .errors import GuardError, StateError
from .state import (
    NORM_TOL,
    DensityMatrix,
    ProductState,
    PureState,
    permute_operator,
    tensor_product,
)
from .symmetry import SYMMETRIZE_MAX_N, symmetric_subspace_projector, symmetrize

SUPPORT_TOL = 1e-8


@dataclass(frozen=True)
class Ensemble:
    """Weighted list of pure or product states with a common shape."""

    weights: tuple
    states: tuple

    def __post_init__(self):
        weights = tuple(float(p) for p in self.weights)
        states = tuple(self.states)
        if not states or len(weights) != len(states):
            raise StateError("an ensemble needs one positive weight per member")
        if any(not p > 0.0 for p in weights):
            raise StateError(f"ensemble weights must be positive, got {weights}")
        if abs(sum(weights) - 1.0) > NORM_TOL:
            raise StateError(f"ensemble weights sum to {sum(weights):.12g}, expected 1")
        dims = states[0].dims
        for s in states:
            if not isinstance(s, (PureState, ProductState)):
                raise StateError(f"unsupported ensemble member {type(s).__name__}")
            if s.dims != dims:
                raise StateError(f"ensemble members disagree on dims: {dims} vs {s.dims}")
            if isinstance(s, PureState):
                s.require_normalized()
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "states", states)

    @property
    def dims(self):
        return self.states[0].dims

    @property
    def n(self):
        return len(self.dims)

    def is_certificate(self):
        return all(isinstance(s, ProductState) for s in self.states)


@dataclass(frozen=True)
class SupportReport:
    in_subspace: bool
    overlap: float


@dataclass(frozen=True)
class NonOrthogonalityReport:
    overlap: float
    member_sum: float
    floor: float
    holds: bool


@dataclass(frozen=True)
class SymmetrizedDensity:
    density: DensityMatrix
    certificate: Ensemble | None
    certificate_deviation: float | None


def _vector(member):
    if isinstance(member, ProductState):
        return tensor_product(member).amplitudes
    return member.amplitudes


def ensemble_to_density(e):
    """``rho = sum_i p_i |member_i><member_i|``."""
    side = len(_vector(e.states[0]))
    rho = np.zeros((side, side), dtype=complex)
    for p, s in zip(e.weights, e.states):
        v = _vector(s)
        rho += p * np.outer(v, v.conj())
    return DensityMatrix(e.dims, rho)


def hs_inner(a, b):
    """Hilbert-Schmidt inner product ``Tr(a^dagger b)``, real for Hermitian inputs."""
    if a.dims != b.dims:
        raise StateError(f"dims mismatch: {a.dims} vs {b.dims}")
    return float(np.vdot(a.matrix, b.matrix).real)


def _projector_for(rho):
    if not rho.is_homogeneous():
        raise StateError(f"symmetric subspace needs equal local dims, got {rho.dims}")
    return symmetric_subspace_projector(rho.n, rho.dims[0])


def symmetric_support_check(rho):
    """Overlap ``Tr(rho P_sym)`` and whether ``rho`` lives inside the symmetric subspace."""
    p = _projector_for(rho)
    overlap = float(np.trace(p @ rho.matrix).real)
    deviation = np.max(np.abs(p @ rho.matrix @ p - rho.matrix))
    return SupportReport(in_subspace=bool(deviation <= SUPPORT_TOL), overlap=overlap)


def verify_mixed_nonorthogonality(e):
    """Lower-bound the overlap of a certified fully separable state with the
    symmetric subspace.

    Each product member contributes ``p_i Perm(Gram_i) / n!``, and every Gram
    permanent is at least one, so the overlap cannot fall below
    ``min_i p_i / n!``.
    """
    if not e.is_certificate():
        raise StateError("non-orthogonality needs a certificate ensemble of product states")
    rho = ensemble_to_density(e)
    overlap = symmetric_support_check(rho).overlap
    member_sum = sum(p * symmetrize(s).norm_squared for p, s in zip(e.weights, e.states))
    floor = min(e.weights) / factorial(e.n)
    return NonOrthogonalityReport(
        overlap=overlap,
        member_sum=float(member_sum),
        floor=floor,
        holds=overlap >= floor - 1e-9 and floor > 0.0,
    )


def _permuted_product(member, sigma):
    slots = [None] * len(sigma)
    for i, s in enumerate(sigma):
        slots[s] = member.factors[i]
    return ProductState(tuple(slots))


def symmetrize_density(state):
    """Average ``U_sigma rho U_sigma^dagger`` over all party permutations.

    ``state`` is a :class:`DensityMatrix` or an :class:`Ensemble`.  When it is
    a certificate ensemble, every member is permuted in turn and the result
    carries a certificate for the symmetrized state as well, with weights
    ``p_i / n!``.
    """
    ensemble = state if isinstance(state, Ensemble) else None
    rho = ensemble_to_density(ensemble) if ensemble is not None else state
    if not rho.is_homogeneous():
        raise StateError(f"party permutations need equal local dims, got {rho.dims}")
    n = rho.n
    if n > SYMMETRIZE_MAX_N:
        raise GuardError(f"density symmetrization limited to n <= {SYMMETRIZE_MAX_N}, got {n}")
    sigmas = list(permutations(range(n)))
    acc = np.zeros_like(rho.matrix)
    for sigma in sigmas:
        acc += permute_operator(rho.matrix, rho.dims, sigma)
    out = DensityMatrix(rho.dims, acc / len(sigmas))

    if ensemble is None or not ensemble.is_certificate():
        return SymmetrizedDensity(out, None, None)
    weights, members = [], []
    for p, member in zip(ensemble.weights, ensemble.states):
        for sigma in sigmas:
            weights.append(p / len(sigmas))
            members.append(_permuted_product(member, sigma))
    certificate = Ensemble(tuple(weights), tuple(members))
    rebuilt = ensemble_to_density(certificate)
    deviation = float(np.max(np.abs(rebuilt.matrix - out.matrix)))
    return SymmetrizedDensity(out, certificate, deviation)
