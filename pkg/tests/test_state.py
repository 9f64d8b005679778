import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

import oracles
from helpers import KET0, KET1, PLUS, bell, ghz, product, pure, qubits, w3
from symsep.errors import StateError
from symsep.state import (
    DensityMatrix,
    ProductState,
    PureState,
    apply_party_permutation,
    inner_product,
    partial_trace,
    spectral_decompose,
    tensor_product,
)


def random_state(rng, dims):
    size = int(np.prod(dims))
    return PureState.normalized_from(dims, rng.standard_normal(size) + 1j * rng.standard_normal(size))


class TestOrdering:
    # Golden layout: party 0 is the slowest-varying index.
    def test_two_qubit_basis_order(self):
        for index, digits in enumerate([(0, 0), (0, 1), (1, 0), (1, 1)]):
            expected = np.zeros(4)
            expected[index] = 1
            assert_allclose(qubits(*digits).amplitudes, expected)

    def test_mixed_dims_index(self):
        psi = PureState.basis((2, 3), (1, 2))
        assert np.flatnonzero(psi.amplitudes).tolist() == [1 * 3 + 2]

    def test_tensor_view(self):
        psi = PureState.basis((2, 3, 2), (1, 0, 1))
        assert psi.tensor()[1, 0, 1] == 1


class TestConstruction:
    def test_length_mismatch(self):
        with pytest.raises(StateError):
            PureState((2, 2), np.ones(3))

    def test_zero_vector_rejected_when_normalizing(self):
        with pytest.raises(StateError):
            PureState.normalized_from((2, 2), np.zeros(4))

    def test_require_normalized(self):
        with pytest.raises(StateError):
            PureState((2,), [1, 1]).require_normalized()

    def test_local_dim_one_rejected_for_many_parties(self):
        with pytest.raises(StateError):
            PureState((1, 2), [1, 0])

    def test_product_factor_norm(self):
        with pytest.raises(StateError):
            ProductState((np.array([1.0, 1.0]),))

    def test_immutable(self):
        psi = qubits(0, 1)
        with pytest.raises(ValueError):
            psi.amplitudes[0] = 1

    def test_density_invariants(self):
        with pytest.raises(StateError):
            DensityMatrix((2,), np.array([[1, 1], [0, 0]]))
        with pytest.raises(StateError):
            DensityMatrix((2,), np.eye(2))
        with pytest.raises(StateError):
            DensityMatrix((2,), np.diag([1.5, -0.5]))


class TestTensorProduct:
    def test_basis(self):
        assert_allclose(tensor_product(product(KET0, KET0)).amplitudes, [1, 0, 0, 0])
        assert_allclose(tensor_product(product(KET0, KET1)).amplitudes, [0, 1, 0, 0])

    def test_plus_plus(self):
        assert_allclose(tensor_product(product(PLUS, PLUS)).amplitudes, [0.5] * 4)

    def test_declared_dims_mismatch(self):
        with pytest.raises(StateError):
            tensor_product(product(KET0, KET1), dims=(2, 3))

    @given(st.integers(0, 2**32 - 1), st.lists(st.integers(2, 4), min_size=1, max_size=4))
    @settings(max_examples=50, deadline=None)
    def test_norm_is_product_of_factor_norms(self, seed, dims):
        rng = np.random.default_rng(seed)
        phi = ProductState.from_vectors([rng.standard_normal(d) + 1j * rng.standard_normal(d) for d in dims])
        assert abs(tensor_product(phi).norm() - 1.0) <= 1e-9


class TestInnerProduct:
    def test_examples(self, rng):
        psi = random_state(rng, (2, 3))
        assert abs(inner_product(psi, psi) - 1) <= 1e-9
        assert inner_product(qubits(0, 0), qubits(1, 1)) == 0
        pp = tensor_product(product(PLUS, PLUS))
        assert abs(inner_product(pp, qubits(0, 0)) - 0.5) <= 1e-12

    def test_conjugate_symmetry(self, rng):
        a, b = random_state(rng, (2, 2, 2)), random_state(rng, (2, 2, 2))
        assert abs(inner_product(a, b) - np.conj(inner_product(b, a))) <= 1e-15

    def test_dims_mismatch(self):
        with pytest.raises(StateError):
            inner_product(qubits(0, 0), PureState.basis((2, 3), (0, 0)))


class TestPartialTrace:
    def test_bell_marginal(self):
        red = partial_trace(DensityMatrix.from_pure(bell()), [0])
        assert_allclose(red.matrix, np.eye(2) / 2, atol=1e-12)

    def test_product_marginal(self):
        red = partial_trace(DensityMatrix.from_pure(qubits(0, 0)), [0])
        assert_allclose(red.matrix, [[1, 0], [0, 0]], atol=1e-12)

    def test_ghz3_single_party(self):
        rho = DensityMatrix.from_pure(ghz(3))
        expected = oracles.partial_trace(rho.matrix, rho.dims, [0])
        assert_allclose(expected, np.diag([0.5, 0.5]), atol=1e-12)
        assert_allclose(partial_trace(rho, [0]).matrix, expected, atol=1e-12)

    def test_keep_all_is_identity(self):
        rho = DensityMatrix.from_pure(w3())
        assert partial_trace(rho, [0, 1, 2]) is rho

    def test_matches_loop_oracle(self, rng):
        psi = random_state(rng, (2, 3, 2))
        rho = DensityMatrix.from_pure(psi)
        for keep in ([0], [1], [2], [0, 2], [1, 2]):
            red = partial_trace(rho, keep)
            assert red.dims == tuple(rho.dims[i] for i in keep)
            assert_allclose(red.matrix, oracles.partial_trace(rho.matrix, rho.dims, keep), atol=1e-12)

    def test_errors(self):
        rho = DensityMatrix.from_pure(bell())
        with pytest.raises(StateError):
            partial_trace(rho, [])
        with pytest.raises(StateError):
            partial_trace(rho, [2])

    @given(st.integers(0, 2**32 - 1), st.integers(3, 4))
    @settings(max_examples=30, deadline=None)
    def test_nested_traces_compose(self, seed, n):
        rng = np.random.default_rng(seed)
        rho = DensityMatrix.from_pure(random_state(rng, (2,) * n))
        keep = sorted(rng.choice(n, size=n - 1, replace=False).tolist())
        final = sorted(rng.choice(keep, size=len(keep) - 1, replace=False).tolist())
        inner = [keep.index(p) for p in final]
        nested = partial_trace(partial_trace(rho, keep), inner)
        assert np.max(np.abs(nested.matrix - partial_trace(rho, final).matrix)) <= 1e-9

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_single_party_marginal_is_state(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 5))
        rho = DensityMatrix.from_pure(random_state(rng, (2,) * n))
        red = partial_trace(rho, [int(rng.integers(n))])
        assert abs(np.trace(red.matrix) - 1) <= 1e-9
        assert np.linalg.eigvalsh(red.matrix)[0] >= -1e-9


class TestPartyPermutation:
    def test_swap(self):
        assert_allclose(apply_party_permutation(qubits(0, 1), (1, 0)).amplitudes, qubits(1, 0).amplitudes)

    def test_w_fixed_point(self):
        from itertools import permutations

        for sigma in permutations(range(3)):
            assert_allclose(apply_party_permutation(w3(), sigma).amplitudes, w3().amplitudes)

    def test_cycle_matches_relabel_oracle(self):
        cycle = (1, 2, 0)  # 1 -> 2 -> 3 -> 1 in 1-based labels
        expected = oracles.relabel(qubits(0, 0, 1).amplitudes, (2, 2, 2), cycle)
        assert_allclose(expected, qubits(1, 0, 0).amplitudes)
        assert_allclose(apply_party_permutation(qubits(0, 0, 1), cycle).amplitudes, expected)

    def test_random_against_oracle(self, rng):
        psi = random_state(rng, (3, 3, 3))
        for _ in range(5):
            sigma = tuple(rng.permutation(3).tolist())
            assert_allclose(
                apply_party_permutation(psi, sigma).amplitudes,
                oracles.relabel(psi.amplitudes, psi.dims, sigma),
                atol=1e-14,
            )

    def test_heterogeneous_rejected(self):
        with pytest.raises(StateError):
            apply_party_permutation(PureState.basis((2, 3), (0, 0)), (1, 0))

    def test_invalid_permutation(self):
        with pytest.raises(StateError):
            apply_party_permutation(qubits(0, 1), (0, 0))

    @given(st.integers(0, 2**32 - 1), st.integers(1, 5))
    @settings(max_examples=50, deadline=None)
    def test_round_trip_exact(self, seed, n):
        rng = np.random.default_rng(seed)
        psi = random_state(rng, (2,) * n)
        sigma = rng.permutation(n)
        inv = np.argsort(sigma)
        back = apply_party_permutation(apply_party_permutation(psi, sigma), inv)
        assert np.array_equal(back.amplitudes, psi.amplitudes)
        # a relabelling only reorders amplitudes, so the norm is preserved exactly
        moved = apply_party_permutation(psi, sigma).amplitudes
        assert np.array_equal(np.sort_complex(moved), np.sort_complex(psi.amplitudes))


class TestSpectralDecompose:
    def test_identity(self):
        assert_allclose(spectral_decompose(np.eye(2)).eigenvalues, [1, 1])

    def test_rank_one(self):
        assert_allclose(spectral_decompose(np.ones((2, 2))).eigenvalues, [2, 0], atol=1e-15)

    def test_random_psd(self, rng):
        b = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        h = b.conj().T @ b
        sd = spectral_decompose(h)
        assert np.all(np.diff(sd.eigenvalues) <= 0)
        assert np.max(np.abs(sd.unitary.conj().T @ sd.unitary - np.eye(5))) <= 1e-9
        assert np.max(np.abs(sd.reconstruct() - h)) <= 1e-8

    def test_small_negative_clipped(self):
        sd = spectral_decompose(np.diag([1.0, -5e-10]))
        assert sd.eigenvalues[-1] == 0.0

    def test_non_hermitian(self):
        with pytest.raises(StateError):
            spectral_decompose(np.array([[1, 1], [0, 1]]))


def test_pure_helper_rejects_zero():
    with pytest.raises(StateError):
        pure((2,), [0, 0])
