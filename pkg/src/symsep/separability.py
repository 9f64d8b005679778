"""Bipartition sweeps, Schmidt ranks and the three-way pure-state verdict.

Parties are 0-based in the API.  Human-readable labels (``Bipartition.label``)
are 1-based, e.g. ``{1}:{2,3}``.
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from math import factorial, log2

import numpy as np

from .errors import GuardError, StateError, SymmetryError, SymsepError, max_qubits
from .state import (
    DensityMatrix,
    ProductState,
    _partial_trace_operator,
    spectral_decompose,
    tensor_product,
)
from .symmetry import (
    IDENTICAL_TOL,
    _permutation_sum,
    is_antisymmetric,
    is_permutation_invariant,
    symmetrize,
    translation_analyze,
)

DEFAULT_REL_TOL = 1e-10
FIDELITY_TOL = 1e-8
CROSSCHECK_TOL = 1e-8


class Verdict(str, Enum):
    FULLY_SEPARABLE = "FullySeparable"
    GLOBALLY_ENTANGLED = "GloballyEntangled"
    PARTIALLY_SEPARABLE = "PartiallySeparable"


@dataclass(frozen=True)
class Bipartition:
    """Split of the parties into two nonempty groups; ``side_a`` holds party 0."""

    side_a: tuple
    side_b: tuple

    @classmethod
    def of(cls, group, n):
        group = frozenset(int(p) for p in group)
        if any(not 0 <= p < n for p in group):
            raise StateError(f"party index out of range 0..{n - 1}: {sorted(group)}")
        rest = frozenset(range(n)) - group
        if not group or not rest:
            raise StateError("both sides of a bipartition must be nonempty")
        a, b = (group, rest) if 0 in group else (rest, group)
        return cls(tuple(sorted(a)), tuple(sorted(b)))

    @property
    def n(self):
        return len(self.side_a) + len(self.side_b)

    def label(self):
        a = ",".join(str(p + 1) for p in self.side_a)
        b = ",".join(str(p + 1) for p in self.side_b)
        return f"{{{a}}}:{{{b}}}"


@dataclass(frozen=True)
class SchmidtResult:
    rank: int
    singular_values: tuple


@dataclass(frozen=True)
class CutEvidence:
    cut: Bipartition
    rank: int


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    witness: Bipartition | None
    factors: ProductState | None
    evidence: tuple
    fidelity: float | None = None

    def ranks(self):
        return {e.cut.label(): e.rank for e in self.evidence}


@dataclass(frozen=True)
class Result1Check:
    holds: bool
    detail: Classification
    symmetry: str
    theta: float | None
    factors_identical: bool | None


@dataclass(frozen=True)
class Result2Check:
    holds: bool
    nonzero: bool
    norm_squared: float
    verdict: Classification
    factors_identical: bool


@dataclass(frozen=True)
class CrossCheckReport:
    direct_rdm: DensityMatrix
    gram_rdm: DensityMatrix
    spectral: object
    alpha_vectors: tuple
    max_deviation: float
    psi_gram: np.ndarray = field(repr=False)


def enumerate_bipartitions(n):
    """All ``2^(n-1) - 1`` bipartitions, by size of party 0's side then lexically."""
    if n < 2:
        raise StateError(f"bipartitions need at least two parties, got {n}")
    cuts = []
    for size in range(1, n):
        for rest in combinations(range(1, n), size - 1):
            cuts.append(Bipartition((0,) + rest, tuple(p for p in range(1, n) if p not in rest)))
    return cuts


def _cut_matrix(psi, side_a, side_b):
    t = np.transpose(psi.tensor(), tuple(side_a) + tuple(side_b))
    rows = int(np.prod([psi.dims[i] for i in side_a]))
    return t.reshape(rows, -1)


def _rank(s, rel_tol):
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s >= rel_tol * s[0]))


def schmidt_rank(psi, cut, rel_tol=DEFAULT_REL_TOL):
    """Schmidt rank of ``psi`` across ``cut``.

    Singular values below ``rel_tol`` times the largest one count as zero.
    """
    psi.require_normalized()
    if cut.n != psi.n or sorted(cut.side_a + cut.side_b) != list(range(psi.n)):
        raise StateError(f"cut {cut.label()} does not partition {psi.n} parties")
    s = np.linalg.svd(_cut_matrix(psi, cut.side_a, cut.side_b), compute_uv=False)
    return SchmidtResult(_rank(s, rel_tol), tuple(float(x) for x in s))


def _phase_fixed(v):
    k = int(np.argmax(np.abs(v)))
    return v * (abs(v[k]) / v[k])


def _recover_factors(psi):
    factors = []
    for i in range(psi.n):
        rest = tuple(p for p in range(psi.n) if p != i)
        u, _, _ = np.linalg.svd(_cut_matrix(psi, (i,), rest), full_matrices=False)
        factors.append(_phase_fixed(u[:, 0]))
    return ProductState.from_vectors(factors)


def _check_classify_size(psi):
    if psi.n < 2:
        raise StateError("classification needs at least two parties")
    if log2(psi.dim) > max_qubits():
        raise GuardError(
            f"state dimension {psi.dim} exceeds the {max_qubits()}-qubit guard"
        )


def classify(psi, rel_tol=DEFAULT_REL_TOL):
    """Fully separable, globally entangled or partially separable.

    Every bipartition is swept so the evidence always lists all Schmidt
    ranks; fully separable states also get their factors back, each with its
    largest component made real and positive.
    """
    _check_classify_size(psi)
    psi.require_normalized()
    evidence = tuple(
        CutEvidence(cut, schmidt_rank(psi, cut, rel_tol).rank) for cut in enumerate_bipartitions(psi.n)
    )
    ranks = [e.rank for e in evidence]
    if all(r == 1 for r in ranks):
        factors = _recover_factors(psi)
        fidelity = abs(np.vdot(tensor_product(factors).amplitudes, psi.amplitudes)) ** 2
        if fidelity < 1.0 - FIDELITY_TOL:
            raise SymsepError(f"recovered product factors reach fidelity {fidelity:.12g} only")
        return Classification(Verdict.FULLY_SEPARABLE, None, factors, evidence, float(fidelity))
    if all(r >= 2 for r in ranks):
        return Classification(Verdict.GLOBALLY_ENTANGLED, None, None, evidence)
    witness = next(e.cut for e in evidence if e.rank == 1)
    return Classification(Verdict.PARTIALLY_SEPARABLE, witness, None, evidence)


def factors_identical(factors, tol=IDENTICAL_TOL):
    """True if all factors agree up to a phase: ``|<phi_i|phi_j>| >= 1 - tol``."""
    vs = factors.factors
    if len(set(factors.dims)) != 1:
        return False
    return all(abs(np.vdot(vs[i], vs[j])) >= 1.0 - tol for i in range(len(vs)) for j in range(i + 1, len(vs)))


def verify_result1(psi, rel_tol=DEFAULT_REL_TOL):
    """Check the symmetric-state dichotomy on one input.

    ``psi`` must be permutation invariant or an eigenvector of the cyclic
    shift; anything else is rejected with :class:`SymmetryError` rather than
    passing vacuously.
    """
    psi.require_normalized()
    if not psi.is_homogeneous():
        raise SymmetryError(f"symmetric states need equal local dims, got {psi.dims}")
    permutation = is_permutation_invariant(psi)
    report = translation_analyze(psi)
    if not permutation and not report.is_eigenstate:
        raise SymmetryError("state is neither permutation invariant nor a translation eigenstate")
    detail = classify(psi, rel_tol)
    holds = detail.verdict is not Verdict.PARTIALLY_SEPARABLE
    identical = None
    if detail.verdict is Verdict.FULLY_SEPARABLE:
        identical = factors_identical(detail.factors)
        if permutation:
            holds = holds and identical
    if is_antisymmetric(psi):
        holds = holds and detail.verdict is Verdict.GLOBALLY_ENTANGLED
    return Result1Check(
        holds=holds,
        detail=detail,
        symmetry="permutation" if permutation else "translation",
        theta=report.theta,
        factors_identical=identical,
    )


def verify_result2(phi, rel_tol=DEFAULT_REL_TOL):
    """Symmetrize a product state and check that it is nonzero and that it is
    globally entangled exactly when the factors are not all the same."""
    sym = symmetrize(phi)
    n = phi.n
    nonzero = sym.norm_squared >= 1.0 / factorial(n) - 1e-9
    identical = factors_identical(phi)
    detail = classify(sym.state.normalized(), rel_tol)
    if identical:
        holds = detail.verdict is Verdict.FULLY_SEPARABLE and all(
            abs(np.vdot(f, phi.factors[0])) >= 1.0 - IDENTICAL_TOL for f in detail.factors.factors
        )
    else:
        holds = detail.verdict is Verdict.GLOBALLY_ENTANGLED
    return Result2Check(
        holds=holds and nonzero,
        nonzero=nonzero,
        norm_squared=sym.norm_squared,
        verdict=detail,
        factors_identical=identical,
    )


def rdm_crosscheck(phi):
    """Party-0 marginal of the symmetrized state, computed two ways.

    Directly, by tracing parties ``1..n-1`` out of ``|Phi_S><Phi_S|``.  And
    through the factors: grouping the permutation sum by which factor sits in
    slot 0 writes ``n! |Phi_S> = sum_i |phi_i> (x) |psi_i>``, where
    ``|psi_i>`` sums every ordering of the remaining factors.  Diagonalizing
    ``H_ab = <psi_a|psi_b> = sum_k lam_k U_ak conj(U_bk)`` turns the marginal
    into ``sum_k lam_k |alpha_k><alpha_k| / (n!)^2`` with
    ``|alpha_k> = sum_i conj(U_ik) |phi_i>``.

    Both marginals are divided by ``<Phi_S|Phi_S>`` before comparison.
    """
    n = phi.n
    if n < 2:
        raise StateError("the marginal cross-check needs at least two parties")
    sym = symmetrize(phi)
    v = sym.state.amplitudes
    direct = _partial_trace_operator(np.outer(v, v.conj()), phi.dims, (0,))

    factors = phi.factors
    psis = []
    for k in range(n):
        others = [factors[(k + j) % n] for j in range(1, n)]
        psis.append(_permutation_sum(others, signed=False))
    psis = np.stack(psis)
    h = psis.conj() @ psis.T
    spectral = spectral_decompose((h + h.conj().T) / 2)
    u = spectral.unitary
    alphas = tuple(np.stack(factors).T @ u[:, k].conj() for k in range(n))
    nfact = factorial(n)
    gram = sum(lam * np.outer(a, a.conj()) for lam, a in zip(spectral.eigenvalues, alphas)) / nfact**2

    scale = sym.norm_squared
    direct_rdm = DensityMatrix(phi.dims[:1], direct / scale)
    gram_rdm = DensityMatrix(phi.dims[:1], gram / scale)
    deviation = float(np.max(np.abs(direct_rdm.matrix - gram_rdm.matrix)))
    return CrossCheckReport(direct_rdm, gram_rdm, spectral, alphas, deviation, h)
