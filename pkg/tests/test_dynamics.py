import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entkit.bipartite import BipartiteSpace, PureState, entanglement_entropy
from entkit.dynamics import (
    entanglement_profile,
    geodesic_path,
    max_path_entanglement,
    path_from_generator,
    path_point,
    profile_inputs,
)
from entkit.errors import NonUnitaryError
from entkit.fixtures import cnot, haar_product
from entkit.linalg import (
    random_hermitian,
    random_state,
    swap_unitary,
    tensor_product,
)
from entkit.verify import sqrt_swap_oracle

seeds = st.integers(min_value=0, max_value=2**32 - 1)
E2 = np.eye(2)

# Binary entropies of the sqrt(SWAP) Schmidt weights, derived from the
# spectral-projector construction: the pair superposition input splits as
# (2 ± sqrt(3))/4 at the midpoint, the basis input as (2 ± sqrt(2))/4 at the
# quarter point.
MIDPOINT_SUPERPOSITION_ENTROPY = 0.35457890266527003
QUARTER_BASIS_ENTROPY = 0.6008760366928562


def binary_entropy(p: float) -> float:
    return float(-(p * np.log2(p) + (1 - p) * np.log2(1 - p)))


def test_frozen_constants_match_closed_forms():
    assert abs(binary_entropy((2 + np.sqrt(3)) / 4) - MIDPOINT_SUPERPOSITION_ENTROPY) < 1e-15
    assert abs(binary_entropy((2 + np.sqrt(2)) / 4) - QUARTER_BASIS_ENTROPY) < 1e-15


class TestGeodesicPath:
    def test_identity_endpoint(self):
        path = geodesic_path(np.eye(4), 2, 2)
        np.testing.assert_allclose(path.generator, np.zeros((4, 4)), atol=1e-14)
        np.testing.assert_allclose(path_point(path, 0.7), np.eye(4), atol=1e-14)

    def test_controlled_z_midpoint(self):
        cz = np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex)
        path = geodesic_path(cz, 2, 2)
        phases = np.linalg.eigvalsh(path.generator)
        np.testing.assert_allclose(sorted(phases), [0, 0, 0, np.pi], atol=1e-12)
        np.testing.assert_allclose(
            path_point(path, 0.5), np.diag([1, 1, 1, 1j]), atol=1e-12
        )

    def test_swap_round_trip(self):
        path = geodesic_path(swap_unitary(2), 2, 2)
        assert np.linalg.norm(path_point(path, 1.0) - swap_unitary(2)) < 1e-10

    def test_non_unitary_rejected(self):
        with pytest.raises(NonUnitaryError):
            geodesic_path(np.diag([1.0, 2.0, 1.0, 1.0]), 2, 2)


class TestPathPoint:
    def test_t0_exact_identity(self):
        path = geodesic_path(swap_unitary(2), 2, 2)
        np.testing.assert_array_equal(path_point(path, 0.0), np.eye(4))

    def test_t1_endpoint(self):
        u, _, _ = haar_product(2, 2, 3)
        path = geodesic_path(u, 2, 2)
        assert np.linalg.norm(path_point(path, 1.0) - u) < 1e-10

    def test_sqrt_swap_squares_to_swap(self):
        path = geodesic_path(swap_unitary(2), 2, 2)
        half = path_point(path, 0.5)
        assert np.linalg.norm(half @ half - swap_unitary(2)) < 1e-10

    def test_out_of_range(self):
        path = geodesic_path(np.eye(4), 2, 2)
        with pytest.raises(ValueError):
            path_point(path, 1.5)

    @given(seeds, st.floats(min_value=0.0, max_value=0.5))
    @settings(max_examples=25, deadline=None)
    def test_group_property(self, seed, s):
        u, _, _ = haar_product(2, 2, seed)
        path = geodesic_path(u, 2, 2)
        t = 0.4
        lhs = path_point(path, s) @ path_point(path, t)
        rhs = path_point(path, min(s + t, 1.0))
        assert np.linalg.norm(lhs - rhs) < 1e-8


class TestEntanglementProfile:
    def test_constant_path_all_zero(self):
        path = geodesic_path(np.eye(4), 2, 2)
        profile = entanglement_profile(path, E2[0], n_steps=8, seed=1, n_inputs=4)
        assert all(pt.max_entropy_bits < 1e-12 for pt in profile.points)
        assert all(pt.verdict == "product" for pt in profile.points)

    def test_start_is_product_with_zero_entropy(self):
        path = geodesic_path(swap_unitary(2), 2, 2)
        profile = entanglement_profile(path, E2[0], n_steps=8, seed=1, n_inputs=4)
        assert profile.points[0].t == 0.0
        assert profile.points[0].max_entropy_bits < 1e-12
        assert profile.points[0].verdict == "product"

    def test_swap_midpoint_superposition_entropy_matches_oracle(self):
        # independent oracle: spectral-projector sqrt(SWAP) applied to the
        # same input, entropy via the reduced density operator spectrum
        oracle_u = sqrt_swap_oracle(2)
        inp = np.kron((E2[0] + E2[1]) / np.sqrt(2), E2[0])
        image = oracle_u @ inp
        m = image.reshape(2, 2)
        marginal = m @ m.conj().T
        evals = np.linalg.eigvalsh(marginal)
        evals = evals[evals > 1e-300]
        oracle_entropy = float(-(evals * np.log2(evals)).sum())
        assert abs(oracle_entropy - MIDPOINT_SUPERPOSITION_ENTROPY) < 1e-12

        path = geodesic_path(swap_unitary(2), 2, 2)
        half = path_point(path, 0.5)
        sampled = entanglement_entropy(PureState(BipartiteSpace(2, 2), half @ inp))
        assert abs(sampled - oracle_entropy) < 1e-6

    def test_swap_quarter_point_basis_entropy(self):
        path = geodesic_path(swap_unitary(2), 2, 2)
        quarter = path_point(path, 0.25)
        image = PureState(BipartiteSpace(2, 2), quarter @ np.kron(E2[1], E2[0]))
        assert abs(entanglement_entropy(image) - QUARTER_BASIS_ENTROPY) < 1e-12

    def test_swap_profile_midpoint_max_matches_oracle_family(self):
        path = geodesic_path(swap_unitary(2), 2, 2)
        profile = entanglement_profile(path, E2[0], n_steps=64, seed=5, n_inputs=8)
        midpoint = next(pt for pt in profile.points if pt.t == 0.5)
        inputs = profile_inputs(2, 2, E2[0], 5, 8)
        oracle_u = sqrt_swap_oracle(2)
        oracle_max = max(
            entanglement_entropy(PureState(BipartiteSpace(2, 2), oracle_u @ vec))
            for _, vec in inputs
        )
        assert abs(midpoint.max_entropy_bits - oracle_max) < 1e-6

    def test_local_generator_never_entangles(self):
        a = random_hermitian(2, 101, scale=1.0)
        b = random_hermitian(3, 102, scale=1.0)
        h = tensor_product(a, np.eye(3)) + tensor_product(np.eye(2), b)
        path = path_from_generator(h, 2, 3)
        profile = entanglement_profile(path, random_state(3, 103), n_steps=12, seed=7, n_inputs=4)
        assert all(pt.max_entropy_bits < 1e-9 for pt in profile.points)
        assert all(pt.verdict == "product" for pt in profile.points)

    def test_local_generator_endpoint_factorizes(self):
        a = random_hermitian(2, 104, scale=1.0)
        b = random_hermitian(2, 105, scale=1.0)
        h = tensor_product(a, np.eye(2)) + tensor_product(np.eye(2), b)
        path = path_from_generator(h, 2, 2)
        # exp(i(A⊗I + I⊗B)) == exp(iA) ⊗ exp(iB) since the terms commute
        from entkit.linalg import exp_i_hermitian

        expected = tensor_product(exp_i_hermitian(a), exp_i_hermitian(b))
        assert np.linalg.norm(path.endpoint - expected) < 1e-12

    def test_profile_continuity_under_refinement(self):
        path = geodesic_path(swap_unitary(2), 2, 2)

        def max_step(n):
            profile = entanglement_profile(path, E2[0], n_steps=n, seed=3, n_inputs=4)
            ent = [pt.max_entropy_bits for pt in profile.points]
            return max(abs(ent[i + 1] - ent[i]) for i in range(len(ent) - 1))

        assert max_step(32) < max_step(16)


class TestMaxPathEntanglement:
    def test_identity(self):
        path = geodesic_path(np.eye(4), 2, 2)
        _, _, entropy = max_path_entanglement(path, E2[0], n_steps=8, seed=1, n_inputs=2)
        assert entropy < 1e-12

    def test_swap_peak_at_midpoint(self):
        path = geodesic_path(swap_unitary(2), 2, 2)
        t_star, state, entropy = max_path_entanglement(path, E2[0], n_steps=64, seed=2, n_inputs=8)
        assert entropy > 0.5
        assert abs(t_star - 0.5) < 1e-12
        assert abs(entropy - 1.0) < 1e-9

    def test_cnot_reaches_witness_entropy(self):
        path = geodesic_path(cnot(), 2, 2)
        _, _, entropy = max_path_entanglement(path, E2[0], n_steps=64, seed=2, n_inputs=8)
        assert entropy >= 1.0 - 1e-9
