import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entkit.bipartite import BipartiteSpace, PureState, schmidt_rank
from entkit.classify import (
    Entangling,
    LocalOnObject,
    Product,
    SwapForm,
    TransferToProbe,
    brute_force_non_entangling,
    classify_slice,
    classify_unitary,
    decompose_product,
    decompose_swap,
    operator_schmidt_rank,
    realign,
    reconstruction_error,
)
from entkit.errors import (
    NonUnitaryError,
    NotProductFormError,
    SliceHypothesisError,
)
from entkit.fixtures import PAULI_X, PAULI_Z, cnot, controlled_phase, dressed_swap, haar_product
from entkit.linalg import haar_unitary, random_state, swap_unitary, tensor_product

seeds = st.integers(min_value=0, max_value=2**32 - 1)
E2 = np.eye(2)


class TestRealign:
    def test_identity_is_rank_one(self):
        r = realign(np.eye(4), 2, 2)
        vec_i = np.eye(2).ravel()
        np.testing.assert_allclose(r, np.outer(vec_i, vec_i), atol=1e-15)

    def test_haar_product_seed_2(self):
        u, _, _ = haar_product(3, 3, 2)
        s = np.linalg.svd(realign(u, 3, 3), compute_uv=False)
        assert s[0] > 1.0
        assert s[1] < 1e-12 * s[0]

    def test_cnot_has_two_singular_values(self):
        s = np.linalg.svd(realign(cnot(), 2, 2), compute_uv=False)
        assert np.count_nonzero(s > 1e-12) == 2

    def test_invertible_reshuffle(self):
        rng = np.random.default_rng(0)
        u = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        r = realign(u, 2, 3)
        # undo by the inverse index shuffle
        back = r.reshape(2, 2, 3, 3).transpose(0, 2, 1, 3).reshape(6, 6)
        np.testing.assert_array_equal(back, u)


class TestOperatorSchmidtRank:
    def test_identity(self):
        assert operator_schmidt_rank(np.eye(4), 2, 2) == 1

    def test_swap_is_full_rank(self):
        assert operator_schmidt_rank(swap_unitary(2), 2, 2) == 4

    def test_cnot(self):
        assert operator_schmidt_rank(cnot(), 2, 2) == 2


class TestClassifyUnitary:
    def test_swap(self):
        form = classify_unitary(swap_unitary(2), 2, 2)
        assert isinstance(form, SwapForm)
        np.testing.assert_allclose(form.v21, np.eye(2), atol=1e-12)
        np.testing.assert_allclose(form.w12, np.eye(2), atol=1e-12)

    def test_haar_product_seed_8(self):
        u, v, w = haar_product(2, 3, 8)
        form = classify_unitary(u, 2, 3)
        assert isinstance(form, Product)
        assert reconstruction_error(form, u) < 1e-9
        np.testing.assert_allclose(tensor_product(form.v, form.w), tensor_product(v, w), atol=1e-9)

    def test_cnot_witness(self):
        form = classify_unitary(cnot(), 2, 2)
        assert isinstance(form, Entangling)
        plus = (E2[0] + E2[1]) / np.sqrt(2)
        np.testing.assert_allclose(form.input.vec, np.kron(plus, E2[0]), atol=1e-12)
        assert schmidt_rank(form.witness) == 2
        assert form.second_coeff > 1e-8

    def test_controlled_phase_entangling(self):
        for theta in (np.pi / 3, np.pi):
            form = classify_unitary(controlled_phase(theta), 2, 2)
            assert isinstance(form, Entangling)

    def test_probe_side_controlled_coupling(self):
        # Basis products stay product: only the superposition grid and random
        # inputs can expose the entanglement.
        form = classify_unitary(cnot(control_on_object=False), 2, 2)
        assert isinstance(form, Entangling)

    def test_non_unitary_raises(self):
        with pytest.raises(NonUnitaryError):
            classify_unitary(np.diag([1.0, 2.0, 1.0, 1.0]), 2, 2)

    @given(seeds, st.sampled_from([2, 3]))
    @settings(max_examples=20, deadline=None)
    def test_product_family(self, seed, d):
        u, _, _ = haar_product(d, d, seed)
        form = classify_unitary(u, d, d)
        assert isinstance(form, Product)
        assert reconstruction_error(form, u) < 1e-9

    @given(seeds, st.sampled_from([2, 3]))
    @settings(max_examples=20, deadline=None)
    def test_dressed_swap_family(self, seed, d):
        u, _, _ = dressed_swap(d, seed)
        form = classify_unitary(u, d, d)
        assert isinstance(form, SwapForm)
        assert reconstruction_error(form, u) < 1e-9


class TestDecomposeProduct:
    def test_identity(self):
        v, w = decompose_product(np.eye(4), 2, 2)
        np.testing.assert_allclose(v, np.eye(2), atol=1e-12)
        np.testing.assert_allclose(w, np.eye(2), atol=1e-12)

    def test_x_tensor_z(self):
        v, w = decompose_product(tensor_product(PAULI_X, PAULI_Z), 2, 2)
        np.testing.assert_allclose(v, PAULI_X, atol=1e-12)
        np.testing.assert_allclose(w, PAULI_Z, atol=1e-12)

    def test_haar_round_trip_seed_8(self):
        u, _, _ = haar_product(3, 4, 8)
        v, w = decompose_product(u, 3, 4)
        assert np.linalg.norm(u - tensor_product(v, w)) < 1e-9

    def test_factors_unitary(self):
        u, _, _ = haar_product(3, 2, 17)
        v, w = decompose_product(u, 3, 2)
        assert np.linalg.norm(v.conj().T @ v - np.eye(3)) < 1e-10
        assert np.linalg.norm(w.conj().T @ w - np.eye(2)) < 1e-10

    def test_rejects_entangling(self):
        with pytest.raises(NotProductFormError):
            decompose_product(cnot(), 2, 2)


class TestDecomposeSwap:
    def test_swap(self):
        v21, w12 = decompose_swap(swap_unitary(3), 3)
        np.testing.assert_allclose(v21, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(w12, np.eye(3), atol=1e-12)

    def test_dressed_round_trip_seed_13(self):
        u, a, b = dressed_swap(2, 13)
        v21, w12 = decompose_swap(u, 2)
        assert np.linalg.norm(u - tensor_product(v21, w12) @ swap_unitary(2)) < 1e-9
        # factors match the construction up to a reciprocal phase
        overlap = abs(np.trace(a.conj().T @ v21))
        assert abs(overlap - 2.0) < 1e-9

    def test_swap_times_local_phase(self):
        u = swap_unitary(2) @ tensor_product(np.diag([1.0, 1j]), np.eye(2))
        v21, w12 = decompose_swap(u, 2)
        assert np.linalg.norm(u - tensor_product(v21, w12) @ swap_unitary(2)) < 1e-9

    def test_rejects_product(self):
        with pytest.raises(NotProductFormError):
            decompose_swap(np.eye(4), 2)


class TestClassifySlice:
    def test_identity_any_phi0(self):
        phi0 = random_state(3, 11)
        form = classify_slice(np.eye(6), 2, 3, phi0)
        assert isinstance(form, LocalOnObject)
        np.testing.assert_allclose(form.v, np.eye(2), atol=1e-12)
        np.testing.assert_allclose(form.phi_prime, phi0, atol=1e-12)

    def test_swap_slice(self):
        form = classify_slice(swap_unitary(2), 2, 2, E2[0])
        assert isinstance(form, TransferToProbe)
        np.testing.assert_allclose(form.w12, np.eye(2), atol=1e-12)
        np.testing.assert_allclose(form.phi_prime, E2[0], atol=1e-12)

    def test_haar_product_seed_21(self):
        u, v, w = haar_product(3, 3, 21)
        phi0 = random_state(3, 210)
        form = classify_slice(u, 3, 3, phi0)
        assert isinstance(form, LocalOnObject)
        # recovered isometry equals V up to a global phase
        overlap = abs(np.trace(v.conj().T @ form.v))
        assert abs(overlap - 3.0) < 1e-9
        # phi_prime is W phi0 up to the same phase freedom
        assert abs(abs(np.vdot(w @ phi0, form.phi_prime)) - 1.0) < 1e-10

    def test_swap_slice_random_phi0(self):
        u, a, b = dressed_swap(3, 5)
        phi0 = random_state(3, 55)
        form = classify_slice(u, 3, 3, phi0)
        assert isinstance(form, TransferToProbe)
        assert np.linalg.norm(form.w12.conj().T @ form.w12 - np.eye(3)) < 1e-10

    def test_unequal_dims_tall_isometry(self):
        # Probe strictly larger than the object: split the probe as C2 ⊗ C2
        # and swap the object into its first half. The slice transfers the
        # object state through a 4 x 2 isometry.
        u = np.zeros((8, 8), dtype=complex)
        for a in range(2):
            for b in range(2):
                for c in range(2):
                    u[b * 4 + a * 2 + c, a * 4 + b * 2 + c] = 1.0
        phi0 = np.eye(4)[0]
        form = classify_slice(u, 2, 4, phi0)
        assert isinstance(form, TransferToProbe)
        assert form.w12.shape == (4, 2)
        assert np.linalg.norm(form.w12.conj().T @ form.w12 - np.eye(2)) < 1e-12
        np.testing.assert_allclose(form.w12[:, 0], np.eye(4)[0], atol=1e-12)
        np.testing.assert_allclose(form.w12[:, 1], np.eye(4)[2], atol=1e-12)

    def test_object_control_cnot_violates_hypothesis(self):
        with pytest.raises(SliceHypothesisError) as exc:
            classify_slice(cnot(control_on_object=True), 2, 2, E2[0])
        assert exc.value.indices == (0, 1)

    def test_probe_control_cnot_is_local_identity(self):
        form = classify_slice(cnot(control_on_object=False), 2, 2, E2[0])
        assert isinstance(form, LocalOnObject)
        np.testing.assert_allclose(form.v, np.eye(2), atol=1e-12)

    def test_probe_control_cnot_other_slice_applies_x(self):
        form = classify_slice(cnot(control_on_object=False), 2, 2, E2[1])
        assert isinstance(form, LocalOnObject)
        np.testing.assert_allclose(np.abs(form.v), PAULI_X, atol=1e-12)

    def test_hypothesis_violation_at_superposition_pair(self):
        # CZ with phi0 = |+>: both basis images stay product, but the pair
        # superposition does not, and the report names the pair.
        u = controlled_phase(np.pi)
        plus = np.array([1, 1]) / np.sqrt(2)
        with pytest.raises(SliceHypothesisError) as exc:
            classify_slice(u, 2, 2, plus)
        assert exc.value.indices == (0, 1)

    def test_hypothesis_violation_at_basis_vector(self):
        # sqrt(SWAP) entangles the basis input e1 ⊗ f0 directly.
        s = swap_unitary(2)
        root = (np.eye(4) + s) / 2 + 1j * (np.eye(4) - s) / 2
        with pytest.raises(SliceHypothesisError) as exc:
            classify_slice(root, 2, 2, E2[0])
        assert exc.value.indices == (1,)


class TestBruteForce:
    def test_identity(self):
        ok, witness = brute_force_non_entangling(np.eye(4), 2, 2)
        assert ok and witness is None

    def test_cnot_grid_counterexample(self):
        ok, witness = brute_force_non_entangling(cnot(), 2, 2)
        assert not ok
        image = PureState(BipartiteSpace(2, 2), cnot() @ witness.vec)
        assert schmidt_rank(image) >= 2

    def test_haar_product_500_samples(self):
        u, _, _ = haar_product(2, 2, 8)
        ok, _ = brute_force_non_entangling(u, 2, 2, n_samples=500)
        assert ok

    @given(seeds)
    @settings(max_examples=15, deadline=None)
    def test_oracle_agrees_with_classifier(self, seed):
        d1, d2 = (2, 2) if seed % 2 else (2, 3)
        if seed % 3 == 0:
            u, _, _ = haar_product(d1, d2, seed)
        elif seed % 3 == 1 and d1 == d2:
            u, _, _ = dressed_swap(d1, seed)
        else:
            u = haar_unitary(d1 * d2, seed)
        form = classify_unitary(u, d1, d2, seed=seed)
        ok, _ = brute_force_non_entangling(u, d1, d2, seed=seed, n_samples=60)
        assert isinstance(form, (Product, SwapForm)) == ok


class TestEqualDimensionConstraint:
    @given(seeds)
    @settings(max_examples=15, deadline=None)
    def test_never_swap_for_unequal_dims(self, seed):
        for d1, d2 in ((2, 3), (3, 2), (2, 4)):
            u, _, _ = haar_product(d1, d2, seed)
            assert not isinstance(classify_unitary(u, d1, d2, seed=seed), SwapForm)
            gen = haar_unitary(d1 * d2, seed)
            assert not isinstance(classify_unitary(gen, d1, d2, seed=seed), SwapForm)
