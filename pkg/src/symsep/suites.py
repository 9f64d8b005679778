"""Randomized property suites behind ``symsep verify``.

Each property reports the number of trials and its worst-case margin, a
signed slack that is non-negative exactly when every trial passed.  Suites
draw from their own generator seeded with ``(seed, suite index)``, so a
suite's output does not depend on which other suites ran.
"""

from dataclasses import dataclass
from math import factorial

import numpy as np

from . import families
from .mixed import (
    Ensemble,
    symmetric_support_check,
    symmetrize_density,
    verify_mixed_nonorthogonality,
)
from .permanent import gram_from_factors, marcus_bounds_check, permanent_naive, permanent_ryser
from .separability import (
    DEFAULT_REL_TOL,
    Verdict,
    _cut_matrix,
    classify,
    enumerate_bipartitions,
    rdm_crosscheck,
    verify_result1,
    verify_result2,
)
from .state import DensityMatrix, PureState, apply_party_permutation, tensor_product
from .symmetry import project_symmetric, symmetrize

SUITES = ("result1", "result2", "permanent", "mixed")


@dataclass
class PropertyOutcome:
    name: str
    trials: int = 0
    worst_margin: float = float("inf")

    @property
    def passed(self):
        return self.trials > 0 and self.worst_margin >= 0.0

    def record(self, margin):
        self.trials += 1
        self.worst_margin = min(self.worst_margin, float(margin))

    def as_dict(self):
        return {
            "property": self.name,
            "trials": self.trials,
            "worst_margin": self.worst_margin,
            "passed": self.passed,
        }


def min_entanglement_gap(psi, rel_tol=DEFAULT_REL_TOL):
    """Smallest ``s_2 / s_1`` over all cuts, minus the rank threshold.

    Positive means every cut has Schmidt rank at least two.
    """
    worst = np.inf
    for cut in enumerate_bipartitions(psi.n):
        s = np.linalg.svd(_cut_matrix(psi, cut.side_a, cut.side_b), compute_uv=False)
        ratio = s[1] / s[0] if s.size > 1 else 0.0
        worst = min(worst, ratio)
    return worst - rel_tol


def _identity_margin(factors):
    vs = factors.factors
    worst = min(
        (abs(np.vdot(vs[i], vs[j])) for i in range(len(vs)) for j in range(i + 1, len(vs))),
        default=1.0,
    )
    return worst - (1.0 - 1e-9)


def _dichotomy_margin(check, psi):
    verdict = check.detail.verdict
    if not check.holds:
        return -1.0
    if verdict is Verdict.GLOBALLY_ENTANGLED:
        return min_entanglement_gap(psi)
    return _identity_margin(check.detail.factors)


def _random_sigma(rng, n):
    return tuple(int(x) for x in rng.permutation(n))


def run_result1(rng, trials):
    dichotomy = PropertyOutcome("result1.symmetric_dichotomy")
    antisym = PropertyOutcome("result1.antisymmetric_global")
    translation = PropertyOutcome("result1.translation_eigenstate_global")
    relabel = PropertyOutcome("result1.classify_relabel_invariant")
    for t in range(trials):
        n = int(rng.integers(3, 7))
        kind = t % 3
        if kind == 0:
            psi = families.random_symmetric(rng, n)
        else:
            psi = families.symmetrized_product(rng, n, identical=kind == 2)
        dichotomy.record(_dichotomy_margin(verify_result1(psi), psi))

        n = int(rng.integers(2, 4))
        d = int(rng.integers(n, n + 3))
        psi = families.slater(rng, n, d)
        check = verify_result1(psi)
        ok = check.detail.verdict is Verdict.GLOBALLY_ENTANGLED
        antisym.record(min_entanglement_gap(psi) if ok else -1.0)

        n = int(rng.integers(3, 6))
        k = int(rng.integers(1, n))
        psi = families.translation_eigenstate(rng, n, 2, k)
        ok = classify(psi).verdict is Verdict.GLOBALLY_ENTANGLED
        translation.record(min_entanglement_gap(psi) if ok else -1.0)

        n = int(rng.integers(2, 6))
        psi = PureState.normalized_from((2,) * n, rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n))
        if t % 2:
            psi = tensor_product(families.random_product(rng, n, 2))
        sigma = _random_sigma(rng, n)
        same = classify(apply_party_permutation(psi, sigma)).verdict is classify(psi).verdict
        relabel.record(0.0 if same else -1.0)
    return [dichotomy, antisym, translation, relabel]


def run_result2(rng, trials):
    nonzero = PropertyOutcome("result2.symmetrization_nonzero")
    entangled = PropertyOutcome("result2.global_unless_identical")
    overlap = PropertyOutcome("result2.symmetric_overlap_equals_norm")
    crosscheck = PropertyOutcome("result2.rdm_crosscheck")
    for t in range(trials):
        n = int(rng.integers(3, 6))
        identical = t % 4 == 3
        phi = families.identical_product(rng, n, 2) if identical else families.random_product(rng, n, 2)
        check = verify_result2(phi)
        nonzero.record(check.norm_squared - (1.0 / factorial(n) - 1e-9))
        if not check.holds:
            entangled.record(-1.0)
        elif identical:
            entangled.record(_identity_margin(check.verdict.factors))
        else:
            entangled.record(min_entanglement_gap(symmetrize(phi).state.normalized()))

        d = int(rng.integers(2, 4))
        n = int(rng.integers(2, 5))
        phi = families.random_product(rng, n, d)
        v = tensor_product(phi).amplitudes
        expect = np.vdot(v, project_symmetric(v, n, d)).real
        overlap.record(1e-9 - abs(expect - symmetrize(phi).norm_squared))

        n = int(rng.integers(2, 6))
        report = rdm_crosscheck(families.random_product(rng, n, int(rng.integers(2, 4))))
        crosscheck.record(1e-8 - report.max_deviation)
    return [nonzero, entangled, overlap, crosscheck]


def run_permanent(rng, trials):
    oracle = PropertyOutcome("permanent.ryser_matches_naive")
    marcus = PropertyOutcome("permanent.marcus_bounds")
    identity = PropertyOutcome("permanent.norm_identity")
    relabel = PropertyOutcome("permanent.relabel_invariant")
    for _ in range(trials):
        n = int(rng.integers(2, 9))
        m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        naive = permanent_naive(m)
        oracle.record(1e-10 * max(1.0, abs(naive)) - abs(permanent_ryser(m) - naive))

        n = int(rng.integers(2, 9))
        phi = families.random_product(rng, n, int(rng.integers(1, n + 2)) + 1)
        g = gram_from_factors(phi)
        r = marcus_bounds_check(g)
        nfact = factorial(n)
        marcus.record(min(r.perm - (1.0 - 1e-9), (nfact * (1 + 1e-6) - r.perm) / nfact, 1e-9 - r.imag_residue))

        p = rng.permutation(n)
        relabel.record(1e-10 * max(1.0, abs(r.perm)) - abs(permanent_ryser(g.entries[np.ix_(p, p)]) - r.perm))

        n = int(rng.integers(2, 7))
        phi = families.random_product(rng, n, int(rng.integers(2, 4)))
        ns = symmetrize(phi).norm_squared
        identity.record(1e-9 - abs(factorial(n) * ns - permanent_ryser(gram_from_factors(phi).entries)))
    return [oracle, marcus, identity, relabel]


def random_certificate(rng, n, d, members=None):
    m = int(rng.integers(1, 5)) if members is None else members
    weights = rng.random(m) + 0.05
    weights = tuple(weights / weights.sum())
    return Ensemble(weights, tuple(families.random_product(rng, n, d) for _ in range(m)))


def run_mixed(rng, trials):
    nonorth = PropertyOutcome("mixed.nonorthogonality_floor")
    certificate = PropertyOutcome("mixed.certificate_preserved")
    idempotent = PropertyOutcome("mixed.symmetrize_density_idempotent")
    support = PropertyOutcome("mixed.symmetric_mixture_support")
    for _ in range(trials):
        n = int(rng.integers(2, 5))
        d = int(rng.integers(2, 4)) if n < 4 else 2
        e = random_certificate(rng, n, d)
        r = verify_mixed_nonorthogonality(e)
        nonorth.record(r.overlap - (r.floor - 1e-9) if r.holds else -1.0)

        n = int(rng.integers(2, 4))
        e = random_certificate(rng, n, 2)
        out = symmetrize_density(e)
        certificate.record(1e-9 - out.certificate_deviation)
        twice = symmetrize_density(out.density).density
        drift = max(
            float(np.max(np.abs(twice.matrix - out.density.matrix))),
            abs(np.trace(out.density.matrix).real - 1.0),
        )
        idempotent.record(1e-9 - drift)

        n = int(rng.integers(2, 5))
        m = int(rng.integers(1, 4))
        weights = rng.random(m) + 0.05
        rho = sum(
            w * DensityMatrix.from_pure(families.random_symmetric(rng, n)).matrix for w in weights / weights.sum()
        )
        s = symmetric_support_check(DensityMatrix((2,) * n, rho))
        support.record(0.0 if s.in_subspace else -1.0)
    return [nonorth, certificate, idempotent, support]


RUNNERS = {
    "result1": run_result1,
    "result2": run_result2,
    "permanent": run_permanent,
    "mixed": run_mixed,
}


def run_suite(name, trials, seed):
    rng = np.random.default_rng([seed, SUITES.index(name)])
    return RUNNERS[name](rng, trials)


def run(suite, trials, seed):
    names = SUITES if suite == "all" else (suite,)
    return {name: run_suite(name, trials, seed) for name in names}
